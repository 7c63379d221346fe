//! Twisted fields on `L` and the family `A(p, m, s, l, μ)` on `F`.

use serde::Serialize;

use super::{field_bilinear, nonzero, Carrier, FamilyError, Params, Presemifield, Provenance};
use crate::bilinear::Bilinear;
use crate::field::{poly, Element, FieldCtx};
use crate::tower::Tower;

fn sigma_exp(p: u32, s: usize) -> u64 {
    (p as u64).pow(s as u32)
}

/// `-l ∉ L^{σ-1}` for `σ = p^s`.
pub fn twisted_valid(l_ctx: &FieldCtx, l: &Element, s: usize) -> Result<bool, FamilyError> {
    nonzero(l, "l")?;
    let k = sigma_exp(l_ctx.p(), s) - 1;
    Ok(!l_ctx.in_power_subgroup(&l_ctx.neg(l), k)?)
}

/// `x ∘ y = x y^σ + l x^σ y`, without validation.
pub fn twisted_product(l_ctx: &FieldCtx, l: &Element, s: usize) -> Bilinear {
    field_bilinear(l_ctx, |x, y| {
        let xs = l_ctx.frobenius_any(x, s);
        let ys = l_ctx.frobenius_any(y, s);
        l_ctx.add(&l_ctx.mul(x, &ys), &l_ctx.mul(l, &l_ctx.mul(&xs, y)))
    })
}

pub fn make_twisted(l_ctx: &FieldCtx, l: &Element, s: usize) -> Result<Presemifield, FamilyError> {
    if !twisted_valid(l_ctx, l, s)? {
        return Err(FamilyError::InvalidL);
    }
    Presemifield::new(
        twisted_product(l_ctx, l, s),
        Provenance {
            params: Params::Twisted { s, l: l.clone() },
            carrier: Carrier::Field {
                field: l_ctx.spec().clone(),
            },
            flags: Vec::new(),
        },
    )
}

/// Both forms of the condition on `μ`, evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AValidity {
    /// `μ ∉ L*·F*^{σ+1}`.
    pub product_subgroup: bool,
    /// `(μ^{p^m-1})^{(p^m+1)/gcd(p^m+1, σ+1)} ≠ 1`.
    pub norm_one_form: bool,
}

/// Decides the condition on `μ` for `A(p, m, s, l, μ)` both ways.
pub fn a_mu_valid(tw: &Tower, mu: &Element) -> Result<AValidity, FamilyError> {
    nonzero(mu, "mu")?;
    let f = tw.f();
    let pm = tw.l().order();
    let q2 = f.order() - 1;
    let sigma = sigma_exp(tw.p(), tw.s());
    let f_pow_order = q2 / poly::gcd((sigma + 1) % q2, q2);
    let product_subgroup = !f.in_product_subgroup(mu, &[pm - 1, f_pow_order])?;
    let u = f.pow(mu, pm - 1);
    let g = poly::gcd(pm + 1, sigma + 1);
    let norm_one_form = !f.is_one(&f.pow(&u, (pm + 1) / g));
    Ok(AValidity {
        product_subgroup,
        norm_one_form,
    })
}

/// The product of `A(p, m, s, l, μ)` on the polynomial basis of `F`, without validation.
///
/// Odd `p`: `x*y = T(ωxy) + T(ωμ(x̄ ∘ y))ω`; characteristic 2: `x*y = T(μ(x̄ ∘ y)) + T(xy)μ`,
/// where `x ∘ y = x y^σ + l x^σ y` on `F`.
pub fn a_product(tw: &Tower, l: &Element, mu: &Element) -> Bilinear {
    let f = tw.f();
    let s = tw.s();
    let le = tw.embed(l);
    let w = tw.omega().clone();
    let trace = |z: &Element| f.add(z, &tw.conj(z));
    let albert = |x: &Element, y: &Element| {
        let xs = f.frobenius_any(x, s);
        let ys = f.frobenius_any(y, s);
        f.add(&f.mul(x, &ys), &f.mul(&le, &f.mul(&xs, y)))
    };
    field_bilinear(f, |x, y| {
        let xy = f.mul(x, y);
        let twisted = f.mul(mu, &albert(&tw.conj(x), y));
        if tw.p() == 2 {
            f.add(&trace(&twisted), &f.mul(&trace(&xy), mu))
        } else {
            let first = trace(&f.mul(&w, &xy));
            let second = trace(&f.mul(&w, &twisted));
            f.add(&first, &f.mul(&second, &w))
        }
    })
}

/// `A(p, m, s, l, μ)` with `1 ≤ s < 2m`; `l ∈ L*`, `μ ∈ F*`.
pub fn make_a(tw: &Tower, l: &Element, mu: &Element) -> Result<Presemifield, FamilyError> {
    let m = tw.m();
    let s = tw.s();
    if s == 0 || s >= 2 * m {
        return Err(FamilyError::SigmaOutOfRange { s, m });
    }
    if !twisted_valid(tw.l(), l, s)? {
        return Err(FamilyError::InvalidL);
    }
    let v = a_mu_valid(tw, mu)?;
    assert_eq!(
        v.product_subgroup, v.norm_one_form,
        "the two forms of the condition on mu disagree"
    );
    if !v.product_subgroup {
        return Err(FamilyError::InvalidMu);
    }
    let mut flags = Vec::new();
    if (2 * s) % m == 0 {
        flags.push("isotopic_to_field".to_string());
    }
    if s >= m {
        flags.push("s_at_least_m".to_string());
    }
    Presemifield::new(
        a_product(tw, l, mu),
        Provenance {
            params: Params::A {
                s,
                l: l.clone(),
                mu: mu.clone(),
            },
            carrier: Carrier::Field {
                field: tw.f().spec().clone(),
            },
            flags,
        },
    )
}
