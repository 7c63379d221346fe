//! Criteria for isotopy to a commutative semifield in the families C and B.

use serde::Serialize;

use super::{exp_mod, in_sig_minus, is_subfield_nonsquare, sig_minus, sig_plus, TheoryError};
use crate::families::{twisted_valid, x_valid, FamilyError, XParams};
use crate::field::{poly, Element};
use crate::tower::Tower;

/// The `(v₀, v₁)` search is refused above this order of `L`.
pub const B_SEARCH_MAX_ORDER: u64 = 729;

fn c_valid(tw: &Tower, l: &Element, r: &Element) -> Result<(), TheoryError> {
    let k = tw.l();
    if tw.p() == 2 {
        return Err(TheoryError::UnsupportedBranch("characteristic 2".into()));
    }
    if l.is_zero() || r.is_zero() {
        return Err(TheoryError::InvalidParams("l and R must be nonzero".into()));
    }
    if !twisted_valid(k, l, tw.s())? {
        return Err(FamilyError::InvalidL.into());
    }
    let q1 = k.order() - 1;
    if k.in_power_subgroup(r, (exp_mod(k, tw.s()) + 1) % q1)? {
        return Err(FamilyError::RInPowerSubgroup.into());
    }
    Ok(())
}

/// `l^{σ+1} R^{σ-1} ∈ L^{σ²-1}` for a valid `C(p, m, s, l, R)`.
pub fn c_comm_criterion(tw: &Tower, l: &Element, r: &Element) -> Result<bool, TheoryError> {
    c_valid(tw, l, r)?;
    let k = tw.l();
    let s = tw.s();
    let x = k.mul(&sig_plus(k, l, s), &sig_minus(k, r, s));
    let q1 = k.order() - 1;
    let sg = exp_mod(k, s) as u128;
    let e = ((sg * sg) % q1 as u128) as u64;
    Ok(k.in_power_subgroup(&x, (e + q1 - 1) % q1)?)
}

/// A canonical commutative member of C for one `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutativeC {
    pub s: usize,
    /// 1 when `m/d` is odd, 2 otherwise.
    pub subfamily: u8,
    pub l: Element,
    #[serde(rename = "R")]
    pub r: Element,
}

/// The canonical commutative `C(p, m, s, l, R)` over `tw` (at `tw.s()`).
pub fn commutative_c_representative(tw: &Tower) -> Result<CommutativeC, TheoryError> {
    let k = tw.l();
    let (m, s) = (tw.m(), tw.s());
    if tw.p() == 2 || s == 0 || s >= m {
        return Err(TheoryError::InvalidParams(
            "need odd p and 0 < s < m".into(),
        ));
    }
    let d = poly::gcd(s as u64, m as u64) as usize;
    if (m / d) % 2 == 1 {
        let r = k
            .elements()
            .find(|x| is_subfield_nonsquare(k, x, d))
            .expect("a subfield of odd order has non-squares");
        Ok(CommutativeC {
            s,
            subfamily: 1,
            l: k.one(),
            r,
        })
    } else {
        let n = tw.n().expect("odd characteristic");
        let big_n = tw.big_n().expect("odd characteristic");
        Ok(CommutativeC {
            s,
            subfamily: 2,
            l: k.inv(big_n)?,
            r: k.mul(n, big_n),
        })
    }
}

/// One representative for each `1 ≤ s ≤ m/2`; `s` and `m - s` give isotopic members.
pub fn classify_commutative_c(p: u32, m: usize) -> Result<Vec<CommutativeC>, TheoryError> {
    let base = Tower::new(p, m, 0)?;
    (1..=m / 2)
        .map(|s| commutative_c_representative(&base.with_s(s)?))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BCase {
    /// `N² = n^{σ-1}` and `lN ∈ L^{σ-1}`.
    SquareRoot,
    /// `N = n^{σ-1}` and `l ∈ L^{σ-1}`.
    Power,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BCommOutcome {
    pub commutative: bool,
    /// The first solution `(v₀, v₁)` in index order.
    pub witness: Option<(Element, Element)>,
    pub case: Option<BCase>,
}

fn special_case(
    tw: &Tower,
    l: &Element,
    n: &Element,
    big_n: &Element,
) -> Result<Option<BCase>, TheoryError> {
    let k = tw.l();
    let s = tw.s();
    let ns = sig_minus(k, n, s);
    if &k.square(big_n) == &ns && in_sig_minus(k, &k.mul(l, big_n), s)? {
        return Ok(Some(BCase::SquareRoot));
    }
    if big_n == &ns && in_sig_minus(k, l, s)? {
        return Ok(Some(BCase::Power));
    }
    Ok(None)
}

/// Whether the two equations in `(v₀, v₁)` have a nonzero solution, for a valid
/// `B(p, m, s, l, n, N)`. The special cases are reported and checked against the search.
pub fn b_comm_criterion(
    tw: &Tower,
    l: &Element,
    n: &Element,
    big_n: &Element,
) -> Result<BCommOutcome, TheoryError> {
    x_valid(
        tw,
        &XParams {
            v: tw.l().one(),
            l: l.clone(),
            n: n.clone(),
            big_n: big_n.clone(),
        },
    )?;
    let k = tw.l();
    if k.order() > B_SEARCH_MAX_ORDER {
        return Err(TheoryError::InvalidParams(format!(
            "|L| = {} is too large to search",
            k.order()
        )));
    }
    let case = special_case(tw, l, n, big_n)?;
    let t = k.tables().expect("small field");
    let s = tw.s();
    let (li, ni, nn) = (k.index(l), k.index(n), k.index(&k.mul(n, big_n)));
    let ln = t.mul(li, ni);
    let lnn = t.mul(li, nn);
    let q = k.order() as u32;
    let solves = |v0: u32, v1: u32| {
        let (s0, s1) = (t.frob(v0, s), t.frob(v1, s));
        let f = t.sub(t.add(t.mul(ni, v0), t.mul(ln, s0)), t.mul(lnn, s1));
        let lhs1 = t.mul(li, t.frob(f, s));
        let rhs1 = t.sub(
            t.add(t.mul(nn, v0), t.mul(t.mul(li, nn), s0)),
            t.mul(nn, v1),
        );
        let rhs2 = t.sub(t.add(t.mul(li, s0), t.mul(ni, v1)), t.mul(lnn, s1));
        lhs1 == rhs1 && v0 == rhs2
    };
    let witness = (1..q * q)
        .map(|i| (i % q, i / q))
        .find(|&(a, b)| solves(a, b))
        .map(|(a, b)| (k.from_index(a as u64), k.from_index(b as u64)));
    if case.is_some() && witness.is_none() {
        return Err(TheoryError::LemmaMismatch(format!(
            "{case:?} holds but the search found no solution"
        )));
    }
    Ok(BCommOutcome {
        commutative: witness.is_some(),
        witness,
        case,
    })
}

/// A parameter tuple of one of the four commutative subfamilies of B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub subfamily: u8,
    pub l: Element,
    pub n: Element,
    #[serde(rename = "N")]
    pub big_n: Element,
    /// `B(p, m, s, l, n, N)` is a presemifield.
    pub valid: bool,
    /// The subfield condition that guarantees validity holds.
    pub shortcut: bool,
}

fn entry(
    tw: &Tower,
    subfamily: u8,
    l: Element,
    n: Element,
    big_n: Element,
    shortcut: bool,
) -> CatalogEntry {
    let x = XParams {
        v: tw.l().one(),
        l: l.clone(),
        n: n.clone(),
        big_n: big_n.clone(),
    };
    let valid = x_valid(tw, &x).is_ok();
    CatalogEntry {
        subfamily,
        l,
        n,
        big_n,
        valid,
        shortcut,
    }
}

/// Every parameter choice of the four subfamilies whose side conditions on `m/d`
/// and `s/d` hold, each flagged with its validity.
pub fn commutative_catalog(tw: &Tower) -> Result<Vec<CatalogEntry>, TheoryError> {
    let k = tw.l();
    let (m, s) = (tw.m(), tw.s());
    if tw.p() == 2 || s == 0 || s >= m {
        return Err(TheoryError::InvalidParams(
            "need odd p and 0 < s < m".into(),
        ));
    }
    let d = poly::gcd(s as u64, m as u64) as usize;
    let (md_odd, sd_odd) = ((m / d) % 2 == 1, (s / d) % 2 == 1);
    let half = (tw.sigma_exponent() - 1) / 2;
    let one = k.one();
    let mut out = Vec::new();
    let nonsquares: Vec<Element> = k.elements().skip(1).filter(|x| !k.is_square(x)).collect();
    if !md_odd || !sd_odd {
        for n in &nonsquares {
            let big_n = k.pow_big(n, half);
            out.push(entry(tw, 1, k.inv(&big_n)?, n.clone(), big_n, false));
        }
    }
    if sd_odd {
        for n in &nonsquares {
            let big_n = k.neg(&k.pow_big(n, half));
            out.push(entry(tw, 2, k.inv(&big_n)?, n.clone(), big_n, false));
        }
    }
    if md_odd {
        for v in k.elements().skip(1) {
            let shortcut =
                k.in_subfield(&v, d) && is_subfield_nonsquare(k, &k.sub(&k.square(&v), &one), d);
            out.push(entry(
                tw,
                3,
                one.clone(),
                k.square(&v),
                sig_minus(k, &v, s),
                shortcut,
            ));
        }
        for n in k.elements().skip(1) {
            let c = k.sub(&one, &k.inv(&n)?);
            let shortcut = k.in_subfield(&n, d) && is_subfield_nonsquare(k, &c, d);
            out.push(entry(
                tw,
                4,
                one.clone(),
                n.clone(),
                sig_minus(k, &n, s),
                shortcut,
            ));
        }
    }
    Ok(out)
}
