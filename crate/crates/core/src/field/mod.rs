//! Exact arithmetic in GF(p^m) with a fixed modulus.
//!
//! Elements are dense coefficient vectors of length `m` (low degree first). Every
//! element also has an integer *index* `Σ c_i p^i`, which is how tables, CSV
//! exports and deterministic searches refer to it.

pub mod poly;
mod tables;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use tables::FieldTables;

/// Fields at or below this order get a discrete-log table.
pub const LOG_TABLE_THRESHOLD: u64 = 1 << 16;

const MAX_ORDER: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} is outside the supported range")]
    PrimeTooLarge(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("modulus must be monic of degree {expected}")]
    DegreeMismatch { expected: usize },
    #[error("field order {0} is larger than supported")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("Frobenius index {s} out of range for degree {m}")]
    IndexOutOfRange { s: usize, m: usize },
    #[error("{d} does not divide the degree {m}")]
    NotADivisor { d: usize, m: usize },
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("subgroup order {order} does not divide {group}")]
    OrderNotDividing { order: u64, group: u64 },
    #[error("element {0:?} is not a valid element of this field")]
    InvalidElement(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: usize,
    /// Monic modulus, low-to-high, length `m + 1`.
    pub modulus: Vec<u32>,
}

/// A field element as its coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<u32>);

impl Element {
    pub(crate) fn from_coeffs_unchecked(c: Vec<u32>) -> Self {
        Element(c)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Lexicographic key comparing the constant coefficient first.
    pub fn lex_key(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Clone, Debug)]
struct LogTable {
    /// `exp[i]` is the index of `g^i`, for `0 ≤ i < q-1`.
    exp: Vec<u32>,
    /// `log[idx]` for nonzero indices; `log[0]` is unused.
    log: Vec<u32>,
}

/// A concrete GF(p^m). Immutable once built.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    spec: FieldSpec,
    order: u64,
    pows: Vec<u64>,
    /// Column `j` holds the coefficients of `(t^j)^p`.
    frob: Vec<Vec<u32>>,
    generator: Element,
    logs: Option<LogTable>,
}

impl FieldCtx {
    /// GF(p^m) with the given modulus, or the lexicographically smallest monic
    /// irreducible when none is given.
    pub fn new(p: u32, m: usize, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        Self::with_log_threshold(p, m, modulus, LOG_TABLE_THRESHOLD)
    }

    pub fn with_log_threshold(
        p: u32,
        m: usize,
        modulus: Option<&[u32]>,
        log_threshold: u64,
    ) -> Result<Self, FieldError> {
        if !poly::is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if p >= 1 << 16 {
            return Err(FieldError::PrimeTooLarge(p as u64));
        }
        if m == 0 {
            return Err(FieldError::DegreeMismatch { expected: 1 });
        }
        let order = (p as u64)
            .checked_pow(m as u32)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::FieldTooLarge(u64::MAX))?;
        let modulus = match modulus {
            Some(f) => {
                if f.len() != m + 1 || f[m] != 1 {
                    return Err(FieldError::DegreeMismatch { expected: m });
                }
                if f.iter().any(|&c| c >= p) {
                    return Err(FieldError::InvalidElement(f.to_vec()));
                }
                if !poly::is_irreducible(f, p) {
                    return Err(FieldError::ReducibleModulus { p });
                }
                f.to_vec()
            }
            None => poly::smallest_irreducible(p, m),
        };
        let pows = (0..=m).map(|i| (p as u64).pow(i as u32)).collect();
        let mut ctx = FieldCtx {
            spec: FieldSpec { p, m, modulus },
            order,
            pows,
            frob: Vec::new(),
            generator: Element(vec![0; m]),
            logs: None,
        };
        ctx.frob = (0..m)
            .map(|j| {
                let mut t = vec![0u32; m];
                t[j] = 1;
                ctx.pow(&Element(t), p as u64).0
            })
            .collect();
        ctx.generator = ctx.find_generator();
        if order <= log_threshold {
            ctx.logs = Some(ctx.build_logs());
        }
        Ok(ctx)
    }

    fn find_generator(&self) -> Element {
        let q1 = self.order - 1;
        let factors = poly::prime_factors(q1);
        (0..self.order)
            .map(|rank| Element(poly::lex_coeffs(rank, self.p(), self.m())))
            .find(|x| !x.is_zero() && factors.iter().all(|&r| !self.is_one(&self.pow(x, q1 / r))))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_logs(&self) -> LogTable {
        let q1 = (self.order - 1) as usize;
        let mut exp = Vec::with_capacity(q1);
        let mut log = vec![0u32; self.order as usize];
        let mut x = self.one();
        for i in 0..q1 {
            let idx = self.index(&x);
            exp.push(idx);
            log[idx as usize] = i as u32;
            x = self.mul(&x, &self.generator);
        }
        LogTable { exp, log }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn m(&self) -> usize {
        self.spec.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.spec.modulus
    }

    /// Number of elements, `p^m`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> &Element {
        &self.generator
    }

    pub fn has_log_table(&self) -> bool {
        self.logs.is_some()
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.m()])
    }

    pub fn one(&self) -> Element {
        self.from_int(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> Element {
        let mut c = vec![0; self.m()];
        c[0] = k.rem_euclid(self.p() as i64) as u32;
        Element(c)
    }

    /// Validates a coefficient vector. Shorter vectors are zero-padded.
    pub fn element(&self, coeffs: &[u32]) -> Result<Element, FieldError> {
        if coeffs.len() > self.m() || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(FieldError::InvalidElement(coeffs.to_vec()));
        }
        let mut c = coeffs.to_vec();
        c.resize(self.m(), 0);
        Ok(Element(c))
    }

    pub fn from_index(&self, idx: u64) -> Element {
        debug_assert!(idx < self.order);
        let p = self.p() as u64;
        let mut r = idx;
        Element(
            (0..self.m())
                .map(|_| {
                    let c = (r % p) as u32;
                    r /= p;
                    c
                })
                .collect(),
        )
    }

    pub fn index(&self, x: &Element) -> u32 {
        x.0.iter()
            .zip(&self.pows)
            .map(|(&c, &w)| c as u64 * w)
            .sum::<u64>() as u32
    }

    /// All elements in increasing index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| self.from_index(i))
    }

    pub fn is_one(&self, x: &Element) -> bool {
        x.0[0] == 1 && x.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        let p = self.p();
        Element(x.0.iter().zip(&y.0).map(|(&a, &b)| (a + b) % p).collect())
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        let p = self.p();
        Element(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| (a + p - b) % p)
                .collect(),
        )
    }

    pub fn neg(&self, x: &Element) -> Element {
        let p = self.p();
        Element(x.0.iter().map(|&a| (p - a) % p).collect())
    }

    /// Multiplication by an element of the prime field.
    pub fn scale(&self, k: u32, x: &Element) -> Element {
        let p = self.p() as u64;
        Element(
            x.0.iter()
                .map(|&a| (a as u64 * k as u64 % p) as u32)
                .collect(),
        )
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let m = self.m();
        let p = self.p() as u64;
        let mut acc = vec![0u64; 2 * m - 1];
        for (i, &a) in x.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.0.iter().enumerate() {
                acc[i + j] += a as u64 * b as u64;
            }
            if i % 8 == 7 {
                acc.iter_mut().for_each(|c| *c %= p);
            }
        }
        let f = &self.spec.modulus;
        for k in (m..2 * m - 1).rev() {
            let top = acc[k] % p;
            if top == 0 {
                continue;
            }
            acc[k] = 0;
            // t^m = -(f_0 + ... + f_{m-1} t^{m-1})
            for (j, &fj) in f.iter().enumerate().take(m) {
                acc[k - m + j] = (acc[k - m + j] + top * (p - fj as u64)) % p;
            }
        }
        Element(acc[..m].iter().map(|&c| (c % p) as u32).collect())
    }

    pub fn square(&self, x: &Element) -> Element {
        self.mul(x, x)
    }

    pub fn pow(&self, x: &Element, mut e: u64) -> Element {
        let mut acc = self.one();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// `x^e` for a possibly huge exponent, reduced modulo `q - 1` for nonzero `x`.
    pub fn pow_big(&self, x: &Element, e: u128) -> Element {
        if e == 0 {
            return self.one();
        }
        if x.is_zero() {
            return self.zero();
        }
        let q1 = (self.order - 1) as u128;
        let r = (e % q1) as u64;
        self.pow(x, if r == 0 { q1 as u64 } else { r })
    }

    pub fn inv(&self, x: &Element) -> Result<Element, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(t) = &self.logs {
            let q1 = self.order as usize - 1;
            let l = t.log[self.index(x) as usize] as usize;
            return Ok(self.from_index(t.exp[(q1 - l) % q1] as u64));
        }
        Ok(self.pow(x, self.order - 2))
    }

    pub fn div(&self, x: &Element, y: &Element) -> Result<Element, FieldError> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// `x^{p^s}` for `0 ≤ s < m`.
    pub fn frobenius(&self, x: &Element, s: usize) -> Result<Element, FieldError> {
        if s >= self.m() {
            return Err(FieldError::IndexOutOfRange { s, m: self.m() });
        }
        Ok(self.frobenius_any(x, s))
    }

    /// `x^{p^s}` for any `s`; the exponent is reduced modulo `m`.
    pub fn frobenius_any(&self, x: &Element, s: usize) -> Element {
        let m = self.m();
        let p = self.p() as u64;
        let mut cur = x.clone();
        for _ in 0..s % m {
            let mut next = vec![0u64; m];
            for (j, &c) in cur.0.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (i, &f) in self.frob[j].iter().enumerate() {
                    next[i] += c as u64 * f as u64;
                }
            }
            cur = Element(next.into_iter().map(|v| (v % p) as u32).collect());
        }
        cur
    }

    /// `x^{p^{-s}}`, the inverse of `frobenius_any(·, s)`.
    pub fn frobenius_inv(&self, x: &Element, s: usize) -> Element {
        let m = self.m();
        self.frobenius_any(x, (m - s % m) % m)
    }

    fn check_divisor(&self, d: usize) -> Result<(), FieldError> {
        if d == 0 || self.m() % d != 0 {
            return Err(FieldError::NotADivisor { d, m: self.m() });
        }
        Ok(())
    }

    /// Trace down to the subfield of degree `d`.
    pub fn trace_to(&self, x: &Element, d: usize) -> Result<Element, FieldError> {
        self.check_divisor(d)?;
        let mut acc = self.zero();
        let mut cur = x.clone();
        for _ in 0..self.m() / d {
            acc = self.add(&acc, &cur);
            cur = self.frobenius_any(&cur, d);
        }
        Ok(acc)
    }

    /// Norm down to the subfield of degree `d`.
    pub fn norm_to(&self, x: &Element, d: usize) -> Result<Element, FieldError> {
        self.check_divisor(d)?;
        let mut acc = self.one();
        let mut cur = x.clone();
        for _ in 0..self.m() / d {
            acc = self.mul(&acc, &cur);
            cur = self.frobenius_any(&cur, d);
        }
        Ok(acc)
    }

    /// Membership in the subfield of order `p^d` (any `d`; the subfield is
    /// GF(p^{gcd(d,m)})).
    pub fn in_subfield(&self, x: &Element, d: usize) -> bool {
        &self.frobenius_any(x, d) == x
    }

    /// Discrete logarithm to the base of the fixed generator, if a table exists.
    pub fn log(&self, x: &Element) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        self.logs.as_ref().map(|t| t.log[self.index(x) as usize])
    }

    /// `g^k` for the fixed generator `g`.
    pub fn gen_pow(&self, k: u64) -> Element {
        let q1 = self.order - 1;
        match &self.logs {
            Some(t) => self.from_index(t.exp[(k % q1) as usize] as u64),
            None => self.pow(&self.generator, k % q1),
        }
    }

    /// Whether `x ∈ {t^k : t ∈ GF(q)*}`.
    ///
    /// Decided by `x^{(q-1)/g} = 1` with `g = gcd(k, q-1)`; when a log table is
    /// present the answer is cross-checked against `log(x) ≡ 0 (mod g)`.
    pub fn in_power_subgroup(&self, x: &Element, k: u64) -> Result<bool, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let q1 = self.order - 1;
        let g = poly::gcd(k % q1, q1);
        let by_exponent = self.is_one(&self.pow(x, q1 / g));
        if let Some(l) = self.log(x) {
            assert_eq!(
                by_exponent,
                l as u64 % g == 0,
                "exponent test and log table disagree"
            );
        }
        Ok(by_exponent)
    }

    /// Whether `x` lies in the product of the cyclic subgroups of the given
    /// orders, i.e. in the subgroup of order `lcm(orders)`.
    pub fn in_product_subgroup(&self, x: &Element, orders: &[u64]) -> Result<bool, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let q1 = self.order - 1;
        let mut l = 1u64;
        for &o in orders {
            if o == 0 || q1 % o != 0 {
                return Err(FieldError::OrderNotDividing {
                    order: o,
                    group: q1,
                });
            }
            l = poly::lcm(l, o);
        }
        Ok(self.is_one(&self.pow(x, l)))
    }

    /// Order of the subgroup `{t^k}` of `GF(q)*`.
    pub fn power_subgroup_order(&self, k: u64) -> u64 {
        let q1 = self.order - 1;
        q1 / poly::gcd(k % q1, q1)
    }

    pub fn multiplicative_order(&self, x: &Element) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let mut ord = self.order - 1;
        for r in poly::prime_factors(ord) {
            while ord % r == 0 && self.is_one(&self.pow(x, ord / r)) {
                ord /= r;
            }
        }
        Ok(ord)
    }

    pub fn is_square(&self, x: &Element) -> bool {
        x.is_zero() || self.in_power_subgroup(x, 2).expect("nonzero")
    }

    /// A square root of `x`, if one exists. Of the two roots, the one with the
    /// smaller lexicographic coefficient vector is returned.
    pub fn sqrt(&self, x: &Element) -> Option<Element> {
        if x.is_zero() {
            return Some(self.zero());
        }
        if self.p() == 2 {
            // squaring is bijective; its inverse is x^{q/2}
            return Some(self.pow(x, self.order / 2));
        }
        if !self.is_square(x) {
            return None;
        }
        // Tonelli–Shanks with the generator as non-residue.
        let q1 = self.order - 1;
        let e = q1.trailing_zeros();
        let r = q1 >> e;
        let mut c = self.pow(&self.generator, r);
        let mut t = self.pow(x, r);
        let mut root = self.pow(x, r.div_ceil(2));
        let mut m = e;
        while !self.is_one(&t) {
            let mut i = 0;
            let mut t2 = t.clone();
            while !self.is_one(&t2) {
                t2 = self.square(&t2);
                i += 1;
            }
            let b = self.pow(&c, 1u64 << (m - i - 1));
            root = self.mul(&root, &b);
            c = self.square(&b);
            t = self.mul(&t, &c);
            m = i;
        }
        let other = self.neg(&root);
        Some(if other.lex_key() < root.lex_key() {
            other
        } else {
            root
        })
    }

    /// Dense index-based tables for small fields.
    pub fn tables(&self) -> Option<FieldTables> {
        FieldTables::build(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: usize, f: Option<&[u32]>) -> FieldCtx {
        FieldCtx::new(p, m, f).unwrap()
    }

    fn e(ctx: &FieldCtx, c: &[u32]) -> Element {
        ctx.element(c).unwrap()
    }

    #[test]
    fn build_field_examples() {
        let f3 = gf(3, 1, None);
        assert_eq!(f3.modulus(), &[0, 1]);
        assert_eq!(f3.order(), 3);
        let f9 = gf(3, 2, Some(&[1, 0, 1]));
        assert_eq!(f9.order(), 9);
        let f16 = gf(2, 4, Some(&[1, 1, 0, 0, 1]));
        let alpha = e(&f16, &[0, 1]);
        // α^4 = α + 1
        assert_eq!(f16.pow(&alpha, 4), e(&f16, &[1, 1]));
    }

    #[test]
    fn build_field_errors() {
        assert_eq!(
            FieldCtx::new(4, 2, None).unwrap_err(),
            FieldError::NotPrime(4)
        );
        assert_eq!(
            FieldCtx::new(5, 2, Some(&[1, 0, 1])).unwrap_err(),
            FieldError::ReducibleModulus { p: 5 }
        );
        assert_eq!(
            FieldCtx::new(3, 2, Some(&[1, 0, 0, 1])).unwrap_err(),
            FieldError::DegreeMismatch { expected: 2 }
        );
        assert_eq!(
            FieldCtx::new(3, 2, Some(&[1, 0, 2])).unwrap_err(),
            FieldError::DegreeMismatch { expected: 2 }
        );
    }

    #[test]
    fn generator_is_lex_smallest_primitive() {
        let f9 = gf(3, 2, Some(&[1, 0, 1]));
        // t has order 4, 1+t has order 8
        assert_eq!(f9.generator(), &e(&f9, &[1, 1]));
        let f7 = gf(7, 1, None);
        assert_eq!(f7.generator(), &e(&f7, &[3]));
    }

    #[test]
    fn mul_examples() {
        let f3 = gf(3, 1, None);
        assert_eq!(f3.mul(&e(&f3, &[2]), &e(&f3, &[2])), e(&f3, &[1]));
        let f9 = gf(3, 2, Some(&[1, 0, 1]));
        let t = e(&f9, &[0, 1]);
        assert_eq!(f9.mul(&t, &t), e(&f9, &[2]));
        let f16 = gf(2, 4, Some(&[1, 1, 0, 0, 1]));
        let a3 = e(&f16, &[0, 0, 0, 1]);
        // α^6 = α^3 + α^2
        assert_eq!(f16.mul(&a3, &a3), e(&f16, &[0, 0, 1, 1]));
    }

    #[test]
    fn inv_examples() {
        let f3 = gf(3, 1, None);
        assert_eq!(f3.inv(&e(&f3, &[2])).unwrap(), e(&f3, &[2]));
        let f9 = gf(3, 2, Some(&[1, 0, 1]));
        assert_eq!(f9.inv(&e(&f9, &[0, 1])).unwrap(), e(&f9, &[0, 2]));
        assert_eq!(f9.inv(&f9.one()).unwrap(), f9.one());
        assert_eq!(f9.inv(&f9.zero()).unwrap_err(), FieldError::DivisionByZero);
        let big = FieldCtx::with_log_threshold(3, 3, None, 0).unwrap();
        assert!(!big.has_log_table());
        for x in big.elements().skip(1) {
            assert!(big.is_one(&big.mul(&x, &big.inv(&x).unwrap())));
        }
    }

    #[test]
    fn frobenius_examples() {
        let f9 = gf(3, 2, Some(&[1, 0, 1]));
        let t = e(&f9, &[0, 1]);
        assert_eq!(f9.frobenius(&t, 0).unwrap(), t);
        assert_eq!(f9.frobenius(&t, 1).unwrap(), e(&f9, &[0, 2]));
        assert_eq!(f9.frobenius(&e(&f9, &[2]), 1).unwrap(), e(&f9, &[2]));
        assert_eq!(
            f9.frobenius(&t, 2).unwrap_err(),
            FieldError::IndexOutOfRange { s: 2, m: 2 }
        );
    }

    #[test]
    fn trace_and_norm_examples() {
        let f9 = gf(3, 2, Some(&[1, 0, 1]));
        let t = e(&f9, &[0, 1]);
        assert_eq!(f9.trace_to(&t, 2).unwrap(), t);
        assert_eq!(f9.trace_to(&t, 1).unwrap(), f9.zero());
        assert_eq!(f9.trace_to(&f9.one(), 1).unwrap(), e(&f9, &[2]));
        assert_eq!(f9.norm_to(&f9.one(), 1).unwrap(), f9.one());
        assert_eq!(f9.norm_to(&t, 1).unwrap(), f9.one());
        assert_eq!(f9.norm_to(&f9.zero(), 1).unwrap(), f9.zero());
        assert_eq!(
            f9.trace_to(&t, 3).unwrap_err(),
            FieldError::NotADivisor { d: 3, m: 2 }
        );
    }

    #[test]
    fn power_subgroup_examples() {
        let f7 = gf(7, 1, None);
        assert!(f7.in_power_subgroup(&e(&f7, &[3]), 1).unwrap());
        assert!(!f7.in_power_subgroup(&e(&f7, &[3]), 2).unwrap());
        assert!(f7.in_power_subgroup(&e(&f7, &[2]), 2).unwrap());
        let f27 = gf(3, 3, None);
        assert!(!f27.in_power_subgroup(&f27.from_int(-1), 8).unwrap());
        assert_eq!(
            f27.in_power_subgroup(&f27.zero(), 2).unwrap_err(),
            FieldError::ZeroArgument
        );
    }

    #[test]
    fn product_subgroup_examples() {
        let f16 = gf(2, 4, Some(&[1, 1, 0, 0, 1]));
        let a = e(&f16, &[0, 1]);
        let a3 = f16.pow(&a, 3);
        assert!(f16.in_product_subgroup(&a3, &[3, 5]).unwrap());
        assert!(f16.in_product_subgroup(&a, &[3, 5]).unwrap());
        assert!(f16.in_product_subgroup(&a, &[15]).unwrap());
        assert!(!f16.in_product_subgroup(&a, &[1]).unwrap());
        assert!(f16.in_product_subgroup(&f16.one(), &[1]).unwrap());
        assert!(!f16.in_product_subgroup(&a, &[3]).unwrap());
        assert!(f16.in_product_subgroup(&f16.pow(&a, 5), &[3]).unwrap());
        assert_eq!(
            f16.in_product_subgroup(&a, &[7]).unwrap_err(),
            FieldError::OrderNotDividing {
                order: 7,
                group: 15
            }
        );
    }

    #[test]
    fn product_subgroup_matches_enumerated_products() {
        let f16 = gf(2, 4, Some(&[1, 1, 0, 0, 1]));
        let g = f16.generator().clone();
        for (o1, o2) in [(3u64, 5u64), (3, 3), (1, 5), (5, 15), (1, 1)] {
            let h1: Vec<Element> = (0..o1).map(|i| f16.pow(&g, i * (15 / o1))).collect();
            let h2: Vec<Element> = (0..o2).map(|i| f16.pow(&g, i * (15 / o2))).collect();
            let mut prod: Vec<u32> = h1
                .iter()
                .flat_map(|a| h2.iter().map(|b| f16.index(&f16.mul(a, b))))
                .collect();
            prod.sort();
            prod.dedup();
            for x in f16.elements().skip(1) {
                let want = prod.contains(&f16.index(&x));
                assert_eq!(f16.in_product_subgroup(&x, &[o1, o2]).unwrap(), want);
            }
        }
    }

    #[test]
    fn sqrt_roots_square_back() {
        for (p, m) in [(3, 1), (3, 2), (5, 2), (7, 1), (3, 3), (2, 3)] {
            let ctx = gf(p, m, None);
            for x in ctx.elements() {
                match ctx.sqrt(&x) {
                    Some(r) => assert_eq!(ctx.square(&r), x),
                    None => assert!(!ctx.is_square(&x)),
                }
            }
        }
    }
}
