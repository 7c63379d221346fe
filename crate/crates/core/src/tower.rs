//! The quadratic extension `L = GF(p^m) ⊂ F = GF(p^{2m})`.
//!
//! Both fields are built independently; `L` is embedded by sending its defining
//! variable to the lexicographically smallest root of `L`'s modulus in `F`.

use serde::Serialize;
use thiserror::Error;

use crate::field::{Element, FieldCtx, FieldError};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("no root of the subfield modulus was found in the extension")]
    EmbeddingFailure,
    #[error("coordinates are undefined in characteristic 2")]
    CharTwoUnsupported,
    #[error("the chosen n is a square in L")]
    SquareN,
    #[error("Frobenius index {s} must be below {bound}")]
    SigmaOutOfRange { s: usize, bound: usize },
}

/// `x = a + bω` with `a, b ∈ L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coords {
    pub a: Element,
    pub b: Element,
}

#[derive(Clone, Debug)]
pub struct Tower {
    l: FieldCtx,
    f: FieldCtx,
    s: usize,
    /// `embed_cols[j]` is the image of `t^j`.
    embed_cols: Vec<Element>,
    /// Inverse of the basis `{t^j} ∪ {t^j ω}` (odd p) or `{t^j} ∪ complement` (p = 2).
    basis_inv: Matrix,
    omega: Element,
    n: Option<Element>,
    big_n: Option<Element>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerRecord {
    pub p: u32,
    pub m: usize,
    pub s: usize,
    pub modulus_l: Vec<u32>,
    pub modulus_f: Vec<u32>,
    pub omega: Vec<u32>,
    pub n: Option<Vec<u32>>,
}

impl Tower {
    /// Tower with default moduli and the smallest non-square as `n`.
    pub fn new(p: u32, m: usize, s: usize) -> Result<Self, TowerError> {
        Self::build(p, m, s, None, None, None)
    }

    /// Full constructor. `s` may be anything below `2m`; families impose their own range.
    pub fn build(
        p: u32,
        m: usize,
        s: usize,
        modulus_l: Option<&[u32]>,
        modulus_f: Option<&[u32]>,
        n: Option<&[u32]>,
    ) -> Result<Self, TowerError> {
        let l = FieldCtx::new(p, m, modulus_l)?;
        let f = FieldCtx::new(p, 2 * m, modulus_f)?;
        Self::from_fields(l, f, s, n)
    }

    pub fn from_fields(
        l: FieldCtx,
        f: FieldCtx,
        s: usize,
        n: Option<&[u32]>,
    ) -> Result<Self, TowerError> {
        let m = l.m();
        if f.m() != 2 * m || f.p() != l.p() {
            return Err(FieldError::DegreeMismatch { expected: 2 * m }.into());
        }
        if s >= 2 * m {
            return Err(TowerError::SigmaOutOfRange { s, bound: 2 * m });
        }
        let root = smallest_root(&l, &f).ok_or(TowerError::EmbeddingFailure)?;
        let mut embed_cols = Vec::with_capacity(m);
        let mut cur = f.one();
        for _ in 0..m {
            embed_cols.push(cur.clone());
            cur = f.mul(&cur, &root);
        }
        let p = l.p();
        let (omega, n) = if p == 2 {
            (f.one(), None)
        } else {
            let n = match n {
                Some(c) => {
                    let n = l.element(c)?;
                    if n.is_zero() || l.is_square(&n) {
                        return Err(TowerError::SquareN);
                    }
                    n
                }
                None => (0..l.order())
                    .map(|r| l.element(&crate::field::poly::lex_coeffs(r, p, m)).unwrap())
                    .find(|x| !l.is_square(x))
                    .expect("odd-order fields have non-squares"),
            };
            let w = f
                .sqrt(&embed_with(&f, &embed_cols, &n))
                .ok_or(TowerError::EmbeddingFailure)?;
            (w, Some(n))
        };
        // basis matrix: columns t^j, then a complement
        let mut cols: Vec<Vec<u32>> = embed_cols.iter().map(|e| e.coeffs().to_vec()).collect();
        if p == 2 {
            for j in 0..2 * m {
                let mut v = vec![0u32; 2 * m];
                v[j] = 1;
                cols.push(v);
                if Matrix::from_cols(p, &cols).rank() < cols.len() {
                    cols.pop();
                }
            }
        } else {
            for e in &embed_cols {
                cols.push(f.mul(e, &omega).coeffs().to_vec());
            }
        }
        let basis_inv = Matrix::from_cols(p, &cols)
            .inverse()
            .ok_or(TowerError::EmbeddingFailure)?;
        let mut tw = Tower {
            l,
            f,
            s,
            embed_cols,
            basis_inv,
            omega,
            n,
            big_n: None,
        };
        if p != 2 {
            let by_ratio = tw
                .restrict(&tw.f.div(&tw.f.frobenius_any(&tw.omega, s), &tw.omega)?)
                .ok_or(TowerError::EmbeddingFailure)?;
            let sigma = tw.sigma_exponent();
            let by_power = tw.l.pow_big(tw.n.as_ref().unwrap(), (sigma - 1) / 2);
            if by_ratio != by_power {
                return Err(TowerError::EmbeddingFailure);
            }
            tw.big_n = Some(by_ratio);
        }
        Ok(tw)
    }

    /// The same fields and `n`, with a different Frobenius index.
    pub fn with_s(&self, s: usize) -> Result<Self, TowerError> {
        let n = self.n.as_ref().map(|n| n.coeffs().to_vec());
        Self::from_fields(self.l.clone(), self.f.clone(), s, n.as_deref())
    }

    pub fn l(&self) -> &FieldCtx {
        &self.l
    }

    pub fn f(&self) -> &FieldCtx {
        &self.f
    }

    pub fn p(&self) -> u32 {
        self.l.p()
    }

    pub fn m(&self) -> usize {
        self.l.m()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `σ = p^s` as an integer.
    pub fn sigma_exponent(&self) -> u128 {
        (self.p() as u128).pow(self.s as u32)
    }

    pub fn omega(&self) -> &Element {
        &self.omega
    }

    /// `n = ω²`, odd characteristic only.
    pub fn n(&self) -> Option<&Element> {
        self.n.as_ref()
    }

    /// `N = ω^{σ-1}`, odd characteristic only.
    pub fn big_n(&self) -> Option<&Element> {
        self.big_n.as_ref()
    }

    pub fn embed(&self, a: &Element) -> Element {
        embed_with(&self.f, &self.embed_cols, a)
    }

    /// The preimage of `x` under `embed`, if `x` lies in `L`.
    pub fn restrict(&self, x: &Element) -> Option<Element> {
        let m = self.m();
        let c = self.basis_inv.mul_vec(x.coeffs());
        if c[m..].iter().any(|&v| v != 0) {
            return None;
        }
        let a = Element::from_coeffs_unchecked(c[..m].to_vec());
        (self.embed(&a) == *x).then_some(a)
    }

    /// `x ↦ x^{p^m}`.
    pub fn conj(&self, x: &Element) -> Element {
        self.f.frobenius_any(x, self.m())
    }

    /// `T(x) = x + x̄`, as an element of `L`.
    pub fn rel_trace(&self, x: &Element) -> Element {
        self.restrict(&self.f.add(x, &self.conj(x)))
            .expect("the relative trace lies in L")
    }

    /// `N(x) = x x̄`, as an element of `L`.
    pub fn rel_norm(&self, x: &Element) -> Element {
        self.restrict(&self.f.mul(x, &self.conj(x)))
            .expect("the relative norm lies in L")
    }

    pub fn to_coords(&self, x: &Element) -> Result<Coords, TowerError> {
        if self.p() == 2 {
            return Err(TowerError::CharTwoUnsupported);
        }
        let m = self.m();
        let c = self.basis_inv.mul_vec(x.coeffs());
        Ok(Coords {
            a: Element::from_coeffs_unchecked(c[..m].to_vec()),
            b: Element::from_coeffs_unchecked(c[m..].to_vec()),
        })
    }

    pub fn from_coords(&self, c: &Coords) -> Result<Element, TowerError> {
        if self.p() == 2 {
            return Err(TowerError::CharTwoUnsupported);
        }
        let a = self.embed(&c.a);
        let b = self.f.mul(&self.embed(&c.b), &self.omega);
        Ok(self.f.add(&a, &b))
    }

    /// `σ` on `L`.
    pub fn sigma_l(&self, x: &Element) -> Element {
        self.l.frobenius_any(x, self.s)
    }

    /// `σ^{-1}` on `L`.
    pub fn sigma_l_inv(&self, x: &Element) -> Element {
        self.l.frobenius_inv(x, self.s)
    }

    /// `σ` on `F`.
    pub fn sigma_f(&self, x: &Element) -> Element {
        self.f.frobenius_any(x, self.s)
    }

    pub fn record(&self) -> TowerRecord {
        TowerRecord {
            p: self.p(),
            m: self.m(),
            s: self.s,
            modulus_l: self.l.modulus().to_vec(),
            modulus_f: self.f.modulus().to_vec(),
            omega: self.omega.coeffs().to_vec(),
            n: self.n.as_ref().map(|n| n.coeffs().to_vec()),
        }
    }
}

fn embed_with(f: &FieldCtx, cols: &[Element], a: &Element) -> Element {
    let mut acc = f.zero();
    for (&c, e) in a.coeffs().iter().zip(cols) {
        if c != 0 {
            acc = f.add(&acc, &f.scale(c, e));
        }
    }
    acc
}

/// Lexicographically smallest root in `f` of the modulus of `l`.
fn smallest_root(l: &FieldCtx, f: &FieldCtx) -> Option<Element> {
    let m = l.m();
    let modulus = l.modulus();
    let eval = |x: &Element| {
        let mut acc = f.zero();
        for &c in modulus.iter().rev() {
            acc = f.add(&f.mul(&acc, x), &f.from_int(c as i64));
        }
        acc
    };
    // L* sits in F* as the powers of h = g^{p^m + 1}
    if eval(&f.zero()).is_zero() {
        return Some(f.zero());
    }
    let h = f.pow(f.generator(), l.order() + 1);
    let mut x = f.one();
    for _ in 0..l.order() - 1 {
        if eval(&x).is_zero() {
            let roots = (0..m).map(|i| f.frobenius_any(&x, i));
            return roots.min_by(|a, b| a.lex_key().cmp(b.lex_key()));
        }
        x = f.mul(&x, &h);
    }
    None
}
