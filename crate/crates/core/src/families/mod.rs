//! Validated presemifield constructors.

mod classical;
mod projection;
mod reparam;
mod twisted;
mod xbc;

use serde::Serialize;
use thiserror::Error;

use crate::bilinear::{Bilinear, MulTable};
use crate::field::{Element, FieldCtx, FieldError, FieldSpec};
use crate::semifield::{verify_presemifield, Certificate};
use crate::tower::{Tower, TowerError, TowerRecord};

pub use classical::{
    dickson_knuth_product, dickson_projection, hughes_kleinfeld_projection, knuth_condition,
    make_dickson, make_hughes_kleinfeld, make_knuth,
};
pub use projection::{
    compatibility_check, compatibility_witness, coordinate_lines, decompose, projection_product,
    CompatibilityWitness, CompatiblePair, Decomposition,
};
pub use reparam::{reparametrize, Transform};
pub use twisted::{
    a_mu_valid, a_product, make_a, make_twisted, twisted_product, twisted_valid, AValidity,
};
pub use xbc::{
    b_poly_has_root, c_as_x, c_r_valid, h_value, make_b, make_c, make_x, x_poly_has_root,
    x_product, x_valid, XParams,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error("-l lies in L^(sigma-1)")]
    InvalidL,
    #[error("mu lies in L* F*^(sigma+1)")]
    InvalidMu,
    #[error("the validity polynomial has a root in L")]
    PolynomialHasRoot,
    #[error("R lies in L^(sigma+1)")]
    RInPowerSubgroup,
    #[error("this family is only defined in odd characteristic")]
    CharTwoUnsupported,
    #[error("Frobenius index {s} is outside the allowed range for m = {m}")]
    SigmaOutOfRange { s: usize, m: usize },
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("condition violated: {0}")]
    ConditionViolated(String),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("the kernel of a projection map differs from its subgroup")]
    KernelMismatch,
    #[error("the subspaces do not form a direct sum of the whole space")]
    NotDirectSum,
    #[error("the ingredient products are not compatible")]
    NotCompatible,
    #[error("transform does not apply to family {0}")]
    WrongFamily(&'static str),
    #[error("invalid transform parameters")]
    InvalidTransformParams,
    #[error("zero divisor found: x = {x}, y = {y}")]
    ZeroDivisor { x: u64, y: u64 },
}

/// The additive group a product lives on, and how vectors map to elements.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Carrier {
    /// Polynomial-basis coordinates of a field.
    Field {
        field: FieldSpec,
    },
    /// `(a, b) ↦ a + bω` coordinates of a tower, `a` first.
    Coords {
        tower: TowerRecord,
    },
    /// Pairs `(a, b)` over a field with no ambient extension fixed.
    Pairs {
        field: FieldSpec,
    },
    Vector {
        p: u32,
        dim: usize,
    },
}

/// Family tag plus parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum Params {
    Field,
    Twisted {
        s: usize,
        l: Element,
    },
    A {
        s: usize,
        l: Element,
        mu: Element,
    },
    X {
        s: usize,
        v: Element,
        l: Element,
        n: Element,
        #[serde(rename = "N")]
        big_n: Element,
    },
    B {
        s: usize,
        l: Element,
        n: Element,
        #[serde(rename = "N")]
        big_n: Element,
    },
    C {
        s: usize,
        l: Element,
        #[serde(rename = "R")]
        r: Element,
    },
    Dickson {
        s: usize,
        n: Element,
    },
    HughesKleinfeld {
        l: Element,
    },
    Knuth {
        s: usize,
        f: Element,
        g: Element,
    },
    Projection {
        pieces: usize,
    },
    Custom {
        label: String,
    },
}

impl Params {
    pub fn family(&self) -> &'static str {
        match self {
            Params::Field => "field",
            Params::Twisted { .. } => "twisted",
            Params::A { .. } => "A",
            Params::X { .. } => "X",
            Params::B { .. } => "B",
            Params::C { .. } => "C",
            Params::Dickson { .. } => "dickson",
            Params::HughesKleinfeld { .. } => "hughes_kleinfeld",
            Params::Knuth { .. } => "knuth",
            Params::Projection { .. } => "projection",
            Params::Custom { .. } => "custom",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub params: Params,
    pub carrier: Carrier,
    pub flags: Vec<String>,
}

/// A certified presemifield on GF(p)^dim.
#[derive(Clone, Debug)]
pub struct Presemifield {
    product: Bilinear,
    table: Option<MulTable>,
    provenance: Provenance,
}

impl Presemifield {
    /// Certifies `product` and materializes its table when small.
    pub fn new(product: Bilinear, provenance: Provenance) -> Result<Self, FamilyError> {
        if let Certificate::Witness { x, y } = verify_presemifield(&product) {
            return Err(FamilyError::ZeroDivisor { x, y });
        }
        Ok(Self::new_unchecked(product, provenance))
    }

    /// Skips certification; the caller vouches for the absence of zero divisors.
    pub fn new_unchecked(product: Bilinear, provenance: Provenance) -> Self {
        let table = product.table();
        Presemifield {
            product,
            table,
            provenance,
        }
    }

    /// The multiplication of a field as a presemifield on its polynomial basis.
    pub fn field(ctx: &FieldCtx) -> Self {
        let product = field_bilinear(ctx, |x, y| ctx.mul(x, y));
        Self::new_unchecked(
            product,
            Provenance {
                params: Params::Field,
                carrier: Carrier::Field {
                    field: ctx.spec().clone(),
                },
                flags: Vec::new(),
            },
        )
    }

    pub fn product(&self) -> &Bilinear {
        &self.product
    }

    pub fn table(&self) -> Option<&MulTable> {
        self.table.as_ref()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn params(&self) -> &Params {
        &self.provenance.params
    }

    pub fn p(&self) -> u32 {
        self.product.p()
    }

    pub fn dim(&self) -> usize {
        self.product.dim()
    }

    pub fn order(&self) -> u64 {
        self.product.order()
    }

    /// Product of two indices.
    pub fn mul_index(&self, x: u64, y: u64) -> u64 {
        match &self.table {
            Some(t) => t.get(x as usize, y as usize) as u64,
            None => {
                let b = &self.product;
                b.index(&b.mul(&b.vector(x), &b.vector(y)))
            }
        }
    }
}

/// Bilinear product on the polynomial basis of `ctx` from an element-level closure.
pub fn field_bilinear(ctx: &FieldCtx, f: impl Fn(&Element, &Element) -> Element) -> Bilinear {
    Bilinear::from_fn(ctx.p(), ctx.m(), |x, y| {
        let a = ctx.element(x).expect("basis vector");
        let b = ctx.element(y).expect("basis vector");
        f(&a, &b).into_coeffs()
    })
}

/// Bilinear product on pairs `(a, b) ∈ L²` from a coordinate closure.
pub fn pair_bilinear(
    l: &FieldCtx,
    f: impl Fn(&Element, &Element, &Element, &Element) -> (Element, Element),
) -> Bilinear {
    let m = l.m();
    Bilinear::from_fn(l.p(), 2 * m, |x, y| {
        let (a, b) = split_pair(l, x);
        let (c, d) = split_pair(l, y);
        let (u, w) = f(&a, &b, &c, &d);
        join_pair(&u, &w)
    })
}

pub fn split_pair(l: &FieldCtx, v: &[u32]) -> (Element, Element) {
    let m = l.m();
    (
        l.element(&v[..m]).expect("coordinate"),
        l.element(&v[m..]).expect("coordinate"),
    )
}

pub fn join_pair(a: &Element, b: &Element) -> Vec<u32> {
    let mut v = a.coeffs().to_vec();
    v.extend_from_slice(b.coeffs());
    v
}

/// Index of the pair `(a, b)`.
pub fn pair_index(l: &FieldCtx, a: &Element, b: &Element) -> u64 {
    l.index(a) as u64 + l.order() * l.index(b) as u64
}

fn nonzero(x: &Element, name: &'static str) -> Result<(), FamilyError> {
    if x.is_zero() {
        Err(FamilyError::ZeroParameter(name))
    } else {
        Ok(())
    }
}

fn coords_carrier(tw: &Tower) -> Carrier {
    Carrier::Coords { tower: tw.record() }
}
