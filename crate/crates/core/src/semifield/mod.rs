//! Certification, the semifield isotope with a chosen identity, nuclei and the Ganley tests.

mod ganley;
mod nuclei;

use serde::Serialize;
use thiserror::Error;

use crate::bilinear::{Bilinear, MulTable};
use crate::exec::Exec;
use crate::families::Presemifield;
use crate::linalg::{Matrix, Subspace};

pub use ganley::{ganley_presemifield, ganley_semifield};
pub use nuclei::{
    middle_nucleus_membership, nuclei_bruteforce, nuclei_linear, pair_vector_index, NucleiReport,
    Nucleus, BRUTE_FORCE_MAX_ORDER,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemifieldError {
    #[error("left multiplication by the identity candidate is singular")]
    SingularLeftMultiplication,
    #[error("order {order} is too large for exhaustive search")]
    OrderTooLarge { order: u64 },
    #[error("operation needs a member of family {0}")]
    WrongFamily(&'static str),
    #[error("element index {0} is out of range")]
    IndexOutOfRange(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Certificate {
    Pass,
    Witness { x: u64, y: u64 },
}

/// Matrices of `y ↦ e_i * y`.
pub(crate) fn left_basis(b: &Bilinear) -> Vec<Matrix> {
    (0..b.dim())
        .map(|i| b.left_matrix(&crate::bilinear::unit(b.dim(), i)))
        .collect()
}

/// Matrices of `x ↦ x * e_j`.
pub(crate) fn right_basis(b: &Bilinear) -> Vec<Matrix> {
    (0..b.dim())
        .map(|j| b.right_matrix(&crate::bilinear::unit(b.dim(), j)))
        .collect()
}

/// `Σ x_i M_i`.
pub(crate) fn combination(p: u32, mats: &[Matrix], x: &[u32]) -> Matrix {
    let n = mats[0].rows();
    let mut out = Matrix::zeros(p, n, mats[0].cols());
    for (m, &c) in mats.iter().zip(x) {
        if c == 0 {
            continue;
        }
        for i in 0..n {
            for j in 0..m.cols() {
                let v = (out.get(i, j) + c * m.get(i, j)) % p;
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Smallest nonzero index in a subspace, if any.
pub(crate) fn min_nonzero_index(s: &Subspace) -> Option<u64> {
    s.elements()
        .iter()
        .map(|v| crate::bilinear::index_of(s.p(), v))
        .filter(|&i| i != 0)
        .min()
}

/// Full-rank test of `y ↦ x * y` for every `x ≠ 0`; the witness has the smallest `x`.
pub fn verify_presemifield(b: &Bilinear) -> Certificate {
    let p = b.p();
    let dim = b.dim();
    let lefts = left_basis(b);
    let found = Exec::current().find_first(1..b.order(), |x| {
        let lx = combination(p, &lefts, &b.vector(x));
        if lx.rank() == dim {
            return None;
        }
        let ker = Subspace::span(p, dim, &lx.kernel());
        Some(Certificate::Witness {
            x,
            y: min_nonzero_index(&ker).expect("nontrivial kernel"),
        })
    });
    found.unwrap_or(Certificate::Pass)
}

/// Exhaustive scan of a multiplication table for a zero product of nonzero factors.
pub fn verify_table(t: &MulTable) -> Certificate {
    let q = t.order() as u64;
    let found = Exec::current().find_first(1..q, |x| {
        t.row(x as usize)[1..]
            .iter()
            .position(|&z| z == 0)
            .map(|y| Certificate::Witness { x, y: y as u64 + 1 })
    });
    found.unwrap_or(Certificate::Pass)
}

/// The isotope `x ∘ y = β(γ(x) * y)` with identity `e`, where `e * β(x) = x`
/// and `γ(x) * e = e * x`.
#[derive(Clone, Debug)]
pub struct Semifield {
    base: Presemifield,
    e: u64,
    beta: Matrix,
    gamma: Matrix,
    circ: Bilinear,
    table: Option<MulTable>,
}

pub fn to_semifield(pre: &Presemifield, e: u64) -> Result<Semifield, SemifieldError> {
    let b = pre.product();
    if e == 0 || e >= b.order() {
        return Err(SemifieldError::IndexOutOfRange(e));
    }
    let ev = b.vector(e);
    let le = b.left_matrix(&ev);
    let re = b.right_matrix(&ev);
    let beta = le
        .inverse()
        .ok_or(SemifieldError::SingularLeftMultiplication)?;
    let re_inv = re
        .inverse()
        .ok_or(SemifieldError::SingularLeftMultiplication)?;
    let gamma = re_inv.mul(&le);
    let circ = b.transform(&beta, &gamma, &Matrix::identity(b.p(), b.dim()));
    let table = circ.table();
    Ok(Semifield {
        base: pre.clone(),
        e,
        beta,
        gamma,
        circ,
        table,
    })
}

impl Semifield {
    pub fn base(&self) -> &Presemifield {
        &self.base
    }

    /// Index of the identity.
    pub fn identity(&self) -> u64 {
        self.e
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }

    pub fn circ(&self) -> &Bilinear {
        &self.circ
    }

    pub fn table(&self) -> Option<&MulTable> {
        self.table.as_ref()
    }

    pub fn p(&self) -> u32 {
        self.circ.p()
    }

    pub fn dim(&self) -> usize {
        self.circ.dim()
    }

    pub fn order(&self) -> u64 {
        self.circ.order()
    }

    pub fn mul_index(&self, x: u64, y: u64) -> u64 {
        match &self.table {
            Some(t) => t.get(x as usize, y as usize) as u64,
            None => {
                let c = &self.circ;
                c.index(&c.mul(&c.vector(x), &c.vector(y)))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraFlags {
    pub commutative: bool,
    pub associative: bool,
}

/// Commutativity on basis pairs, associativity on basis triples.
pub fn classify_algebra(s: &Semifield) -> AlgebraFlags {
    let c = &s.circ;
    let d = c.dim();
    let commutative =
        (0..d).all(|i| (0..d).all(|j| c.basis_product(i, j) == c.basis_product(j, i)));
    let unit = |i| crate::bilinear::unit(d, i);
    let associative = (0..d).all(|i| {
        (0..d).all(|j| {
            let ij = c.basis_product(i, j).to_vec();
            let jk_rows: Vec<Vec<u32>> = (0..d).map(|k| c.basis_product(j, k).to_vec()).collect();
            (0..d).all(|k| c.mul(&ij, &unit(k)) == c.mul(&unit(i), &jk_rows[k]))
        })
    });
    AlgebraFlags {
        commutative,
        associative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{field_bilinear, make_c, Carrier, Params, Provenance};
    use crate::field::FieldCtx;
    use crate::tower::Tower;

    #[test]
    fn field_passes_and_planted_defect_fails() {
        let ctx = FieldCtx::new(3, 3, None).unwrap();
        let f = Presemifield::field(&ctx);
        assert_eq!(verify_presemifield(f.product()), Certificate::Pass);
        assert_eq!(verify_table(f.table().unwrap()), Certificate::Pass);
        let mut t = f.table().unwrap().clone();
        t.set(5, 7, 0);
        assert_eq!(verify_table(&t), Certificate::Witness { x: 5, y: 7 });
    }

    #[test]
    fn degenerate_product_has_witness() {
        // x * y = x y^3 + x^3 y on GF(9): -1 is a square, so zero divisors exist
        let ctx = FieldCtx::new(3, 2, None).unwrap();
        let b = field_bilinear(&ctx, |x, y| {
            ctx.add(&ctx.mul(x, &ctx.pow(y, 3)), &ctx.mul(&ctx.pow(x, 3), y))
        });
        let Certificate::Witness { x, y } = verify_presemifield(&b) else {
            panic!("no witness")
        };
        assert!(x != 0 && y != 0);
        assert_eq!(b.index(&b.mul(&b.vector(x), &b.vector(y))), 0);
    }

    #[test]
    fn field_isotope_is_the_field() {
        let ctx = FieldCtx::new(5, 2, None).unwrap();
        let f = Presemifield::field(&ctx);
        let s = to_semifield(&f, 1).unwrap();
        assert_eq!(s.table(), f.table());
        assert_eq!(
            classify_algebra(&s),
            AlgebraFlags {
                commutative: true,
                associative: true
            }
        );
    }

    #[test]
    fn identity_is_two_sided() {
        let tw = Tower::new(3, 3, 2).unwrap();
        let l = tw.l();
        let c = make_c(&tw, &l.one(), &l.from_int(-1)).unwrap();
        for e in [1, 2, 100, 728] {
            let s = to_semifield(&c, e).unwrap();
            for x in 0..729 {
                assert_eq!(s.mul_index(e, x), x);
                assert_eq!(s.mul_index(x, e), x);
            }
            assert_eq!(verify_presemifield(s.circ()), Certificate::Pass);
        }
    }

    #[test]
    fn zero_identity_rejected() {
        let ctx = FieldCtx::new(3, 2, None).unwrap();
        let f = Presemifield::field(&ctx);
        assert_eq!(
            to_semifield(&f, 0).unwrap_err(),
            SemifieldError::IndexOutOfRange(0)
        );
    }

    #[test]
    fn scaled_field_isotope_is_associative() {
        let ctx = FieldCtx::new(3, 2, None).unwrap();
        let g = ctx.generator().clone();
        let b = field_bilinear(&ctx, |x, y| ctx.mul(&g, &ctx.mul(x, y)));
        let pre = Presemifield::new(
            b,
            Provenance {
                params: Params::Custom {
                    label: "scaled".into(),
                },
                carrier: Carrier::Vector { p: 3, dim: 2 },
                flags: vec![],
            },
        )
        .unwrap();
        let s = to_semifield(&pre, 1).unwrap();
        assert!(classify_algebra(&s).associative);
    }
}
