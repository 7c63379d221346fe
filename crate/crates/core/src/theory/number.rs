//! Closed-form gcd and power-subgroup facts, each checked against a direct computation.

use serde::Serialize;

use super::TheoryError;
use crate::field::{poly, FieldCtx};

/// 2-adic valuation; `None` for 0.
pub fn v2(n: u64) -> Option<u32> {
    (n != 0).then(|| n.trailing_zeros())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumberFacts {
    pub p: u32,
    pub m: usize,
    pub s: usize,
    pub d: usize,
    pub v2_s: Option<u32>,
    pub v2_m: u32,
    /// `gcd(p^m + 1, p^s + 1)`.
    pub gcd_plus_plus: u64,
    /// `gcd(2s, m)`.
    pub gcd_2s_m: usize,
    /// `gcd(p^m - 1, p^s + 1)`.
    pub gcd_minus_plus: u64,
    /// `[L^{σ-1} ∩ L^{σ+1} : L^{σ²-1}]`.
    pub index: u64,
    /// `-n^{(σ-1)/2} ∈ L^{σ-1}` for a non-square `n`.
    pub minus_half_power_in: bool,
    /// `n^{(σ-1)/2} ∈ L^{σ-1}` for a non-square `n`.
    pub half_power_in: bool,
}

fn check<T: PartialEq + std::fmt::Debug>(
    name: &str,
    closed: T,
    direct: T,
) -> Result<T, TheoryError> {
    if closed == direct {
        Ok(closed)
    } else {
        Err(TheoryError::LemmaMismatch(format!(
            "{name}: closed form {closed:?}, direct {direct:?}"
        )))
    }
}

/// Every fact by its closed form and by direct computation in `L = GF(p^m)`.
pub fn number_facts(p: u32, m: usize, s: usize) -> Result<NumberFacts, TheoryError> {
    if p == 2 || !poly::is_prime(p as u64) {
        return Err(TheoryError::InvalidParams("p must be an odd prime".into()));
    }
    if m == 0 || s >= m {
        return Err(TheoryError::InvalidParams("need 0 <= s < m".into()));
    }
    let pp = p as u64;
    let d = poly::gcd(s as u64, m as u64) as usize;
    let (v2_s, v2_m) = (v2(s as u64), v2(m as u64).unwrap());
    let v2_d = v2(d as u64).unwrap();
    let pm = pp.pow(m as u32);
    let sigma = pp.pow(s as u32);
    let pd = pp.pow(d as u32);

    let closed = if v2_s != Some(v2_m) { 2 } else { pd + 1 };
    let gcd_plus_plus = check("gcd(p^m+1, p^s+1)", closed, poly::gcd(pm + 1, sigma + 1))?;

    let split = v2_d < v2_m;
    let gcd_2s_m = check(
        "gcd(2s, m)",
        if split { 2 * d } else { d },
        poly::gcd(2 * s as u64, m as u64) as usize,
    )?;
    let gcd_minus_plus = check(
        "gcd(p^m-1, p^s+1)",
        if split { pd + 1 } else { 2 },
        poly::gcd(pm - 1, sigma + 1),
    )?;

    let l = FieldCtx::new(p, m, None)?;
    let (mut both, mut sq) = (0u64, 0u64);
    for x in l.elements().skip(1) {
        if l.in_power_subgroup(&x, sigma - 1)? && l.in_power_subgroup(&x, sigma + 1)? {
            both += 1;
        }
        if l.in_power_subgroup(&x, sigma * sigma - 1)? {
            sq += 1;
        }
    }
    let index = check("subgroup index", if split { 2 } else { 1 }, both / sq)?;

    let n = l
        .elements()
        .skip(1)
        .find(|x| !l.is_square(x))
        .expect("odd p has non-squares");
    let half = l.pow(&n, (sigma - 1) / 2);
    let (sd, md) = (s / d, m / d);
    let minus_half_power_in = check(
        "-n^((sigma-1)/2) in L^(sigma-1)",
        sd % 2 == 1 && md % 2 == 1,
        l.in_power_subgroup(&l.neg(&half), sigma - 1)?,
    )?;
    let half_power_in = check(
        "n^((sigma-1)/2) in L^(sigma-1)",
        sd % 2 == 0,
        l.in_power_subgroup(&half, sigma - 1)?,
    )?;

    Ok(NumberFacts {
        p,
        m,
        s,
        d,
        v2_s,
        v2_m,
        gcd_plus_plus,
        gcd_2s_m,
        gcd_minus_plus,
        index,
        minus_half_power_in,
        half_power_in,
    })
}
