//! Closed-form predictions: number-theoretic facts, commutativity criteria and nuclei.

mod commutative;
mod number;
mod predict;

use thiserror::Error;

use crate::families::FamilyError;
use crate::field::{poly, Element, FieldCtx, FieldError};
use crate::tower::TowerError;

pub use commutative::{
    b_comm_criterion, c_comm_criterion, classify_commutative_c, commutative_c_representative,
    commutative_catalog, BCase, BCommOutcome, CatalogEntry, CommutativeC, B_SEARCH_MAX_ORDER,
};
pub use number::{number_facts, v2, NumberFacts};
pub use predict::{predict_nuclei, w_kernel_dim, DimPrediction, Prediction, WKernelSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("closed form disagrees with direct computation: {0}")]
    LemmaMismatch(String),
    #[error("no prediction for this case: {0}")]
    UnsupportedBranch(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// `p^k mod (q - 1)`, so exponents stay small.
pub(crate) fn exp_mod(l: &FieldCtx, k: usize) -> u64 {
    let q1 = (l.order() - 1) as u128;
    let mut out = 1u128 % q1.max(1);
    for _ in 0..k {
        out = out * l.p() as u128 % q1.max(1);
    }
    out as u64
}

/// `x^{σ-1}` for `σ = p^s`.
pub(crate) fn sig_minus(l: &FieldCtx, x: &Element, s: usize) -> Element {
    l.div(&l.frobenius_any(x, s), x).expect("nonzero")
}

/// `x^{σ+1}` for `σ = p^s`.
pub(crate) fn sig_plus(l: &FieldCtx, x: &Element, s: usize) -> Element {
    l.mul(&l.frobenius_any(x, s), x)
}

/// `x ∈ L^{σ-1}`.
pub(crate) fn in_sig_minus(l: &FieldCtx, x: &Element, s: usize) -> Result<bool, FieldError> {
    let q1 = l.order() - 1;
    l.in_power_subgroup(x, (exp_mod(l, s) + q1 - 1) % q1)
}

/// `x ∈ K_1^* L^{*σ+1}`, with `K_1` the fixed field of `σ`.
pub(crate) fn in_k1_times_sig_plus(
    l: &FieldCtx,
    x: &Element,
    s: usize,
) -> Result<bool, FieldError> {
    let q1 = l.order() - 1;
    let d = poly::gcd(s as u64, l.m() as u64) as u32;
    let k1 = (l.p() as u64).pow(d) - 1;
    let plus = l.power_subgroup_order((exp_mod(l, s) + 1) % q1);
    l.in_product_subgroup(x, &[k1, plus])
}

/// Non-square in the subfield of degree `d`.
pub(crate) fn is_subfield_nonsquare(l: &FieldCtx, x: &Element, d: usize) -> bool {
    if x.is_zero() || !l.in_subfield(x, d) {
        return false;
    }
    let k = (l.p() as u64).pow(d as u32);
    !l.is_one(&l.pow(x, (k - 1) / 2))
}
