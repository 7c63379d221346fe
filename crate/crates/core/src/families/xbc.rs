//! The families `X(p, m, s, v, l, n, N)`, `B = X|_{v=1}` and `C = X|_{v=0}` on `L²`.

use serde::Serialize;

use super::{
    coords_carrier, nonzero, pair_bilinear, FamilyError, Params, Presemifield, Provenance,
};
use crate::bilinear::Bilinear;
use crate::field::{Element, FieldCtx};
use crate::tower::Tower;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XParams {
    pub v: Element,
    pub l: Element,
    pub n: Element,
    #[serde(rename = "N")]
    pub big_n: Element,
}

/// `h(a, b, c, d)` of the X-product.
#[allow(clippy::too_many_arguments)]
pub fn h_value(
    l_ctx: &FieldCtx,
    s: usize,
    x: &XParams,
    a: &Element,
    b: &Element,
    c: &Element,
    d: &Element,
) -> Element {
    let k = l_ctx;
    let sg = |z: &Element| k.frobenius_any(z, s);
    let (as_, bs, cs, ds) = (sg(a), sg(b), sg(c), sg(d));
    let nn = k.mul(&x.n, &x.big_n);
    let first = k.sub(&k.mul(a, &cs), &k.mul(&nn, &k.mul(b, &ds)));
    let second = k.sub(&k.mul(&as_, c), &k.mul(&nn, &k.mul(&bs, d)));
    let third = k.sub(&k.mul(&x.big_n, &k.mul(a, &ds)), &k.mul(b, &cs));
    let fourth = k.sub(&k.mul(&as_, d), &k.mul(&x.big_n, &k.mul(&bs, c)));
    let nv = k.mul(&x.n, &x.v);
    let real = k.add(&first, &k.mul(&x.l, &second));
    let imag = k.add(&third, &k.mul(&x.l, &fourth));
    k.add(&real, &k.mul(&nv, &imag))
}

/// `(a, b) * (c, d) = (h(a, b, c, d), ad + bc)`, without validation.
pub fn x_product(l_ctx: &FieldCtx, s: usize, x: &XParams) -> Bilinear {
    pair_bilinear(l_ctx, |a, b, c, d| {
        let h = h_value(l_ctx, s, x, a, b, c, d);
        let second = l_ctx.add(&l_ctx.mul(a, d), &l_ctx.mul(b, c));
        (h, second)
    })
}

fn any_root(l_ctx: &FieldCtx, f: impl Fn(&Element) -> Element) -> bool {
    l_ctx.elements().any(|t| f(&t).is_zero())
}

/// Whether `t^{σ+1} - v t^σ - (v/N) t + 1/(nN)` has a root in `L` (exhaustive).
pub fn x_poly_has_root(
    l_ctx: &FieldCtx,
    s: usize,
    v: &Element,
    n: &Element,
    big_n: &Element,
) -> bool {
    let k = l_ctx;
    let v_over_n = k.div(v, big_n).expect("N is nonzero");
    let konst = k.inv(&k.mul(n, big_n)).expect("nN is nonzero");
    any_root(k, |t| {
        let ts = k.frobenius_any(t, s);
        let lead = k.mul(&ts, t);
        let rest = k.add(&k.mul(v, &ts), &k.mul(&v_over_n, t));
        k.add(&k.sub(&lead, &rest), &konst)
    })
}

/// Whether `x^{σ+1} + (1 - 1/N) x + (1/n - 1)/N` has a root in `L` (exhaustive).
pub fn b_poly_has_root(l_ctx: &FieldCtx, s: usize, n: &Element, big_n: &Element) -> bool {
    let k = l_ctx;
    let one = k.one();
    let lin = k.sub(&one, &k.inv(big_n).expect("N is nonzero"));
    let konst = k
        .div(&k.sub(&k.inv(n).expect("n is nonzero"), &one), big_n)
        .unwrap();
    any_root(k, |x| {
        let lead = k.mul(&k.frobenius_any(x, s), x);
        k.add(&k.add(&lead, &k.mul(&lin, x)), &konst)
    })
}

/// `R ∉ L^{σ+1}`.
pub fn c_r_valid(l_ctx: &FieldCtx, s: usize, r: &Element) -> Result<bool, FamilyError> {
    nonzero(r, "R")?;
    let k = (l_ctx.p() as u64).pow(s as u32) + 1;
    Ok(!l_ctx.in_power_subgroup(r, k)?)
}

fn check_range(tw: &Tower) -> Result<(), FamilyError> {
    if tw.p() == 2 {
        return Err(FamilyError::CharTwoUnsupported);
    }
    if tw.s() == 0 || tw.s() >= tw.m() {
        return Err(FamilyError::SigmaOutOfRange {
            s: tw.s(),
            m: tw.m(),
        });
    }
    Ok(())
}

/// The conditions for `X(p, m, s, v, l, n, N)` to be a presemifield.
pub fn x_valid(tw: &Tower, x: &XParams) -> Result<(), FamilyError> {
    check_range(tw)?;
    nonzero(&x.l, "l")?;
    nonzero(&x.n, "n")?;
    nonzero(&x.big_n, "N")?;
    if !super::twisted_valid(tw.l(), &x.l, tw.s())? {
        return Err(FamilyError::InvalidL);
    }
    if x_poly_has_root(tw.l(), tw.s(), &x.v, &x.n, &x.big_n) {
        return Err(FamilyError::PolynomialHasRoot);
    }
    Ok(())
}

pub fn make_x(tw: &Tower, x: &XParams) -> Result<Presemifield, FamilyError> {
    x_valid(tw, x)?;
    Presemifield::new(
        x_product(tw.l(), tw.s(), x),
        Provenance {
            params: Params::X {
                s: tw.s(),
                v: x.v.clone(),
                l: x.l.clone(),
                n: x.n.clone(),
                big_n: x.big_n.clone(),
            },
            carrier: coords_carrier(tw),
            flags: Vec::new(),
        },
    )
}

/// `B(p, m, s, l, n, N) = X(p, m, s, 1, l, n, N)`.
pub fn make_b(
    tw: &Tower,
    l: &Element,
    n: &Element,
    big_n: &Element,
) -> Result<Presemifield, FamilyError> {
    check_range(tw)?;
    nonzero(l, "l")?;
    nonzero(n, "n")?;
    nonzero(big_n, "N")?;
    let x = XParams {
        v: tw.l().one(),
        l: l.clone(),
        n: n.clone(),
        big_n: big_n.clone(),
    };
    if !super::twisted_valid(tw.l(), l, tw.s())? {
        return Err(FamilyError::InvalidL);
    }
    let b_root = b_poly_has_root(tw.l(), tw.s(), n, big_n);
    let x_root = x_poly_has_root(tw.l(), tw.s(), &x.v, n, big_n);
    assert_eq!(
        b_root, x_root,
        "the substituted polynomial disagrees with the X polynomial"
    );
    if b_root {
        return Err(FamilyError::PolynomialHasRoot);
    }
    Presemifield::new(
        x_product(tw.l(), tw.s(), &x),
        Provenance {
            params: Params::B {
                s: tw.s(),
                l: l.clone(),
                n: n.clone(),
                big_n: big_n.clone(),
            },
            carrier: coords_carrier(tw),
            flags: Vec::new(),
        },
    )
}

/// The X-parameters realizing `C(p, m, s, l, R)`: `v = 0`, `n = 1`, `N = -R`.
pub fn c_as_x(l_ctx: &FieldCtx, l: &Element, r: &Element) -> XParams {
    XParams {
        v: l_ctx.zero(),
        l: l.clone(),
        n: l_ctx.one(),
        big_n: l_ctx.neg(r),
    }
}

/// `C(p, m, s, l, R) = X(p, m, s, 0, l, n, N)` with `R = -nN`.
pub fn make_c(tw: &Tower, l: &Element, r: &Element) -> Result<Presemifield, FamilyError> {
    check_range(tw)?;
    nonzero(l, "l")?;
    nonzero(r, "R")?;
    if !super::twisted_valid(tw.l(), l, tw.s())? {
        return Err(FamilyError::InvalidL);
    }
    let x = c_as_x(tw.l(), l, r);
    let by_subgroup = c_r_valid(tw.l(), tw.s(), r)?;
    let by_roots = !x_poly_has_root(tw.l(), tw.s(), &x.v, &x.n, &x.big_n);
    assert_eq!(
        by_subgroup, by_roots,
        "two forms of the condition on R disagree"
    );
    if !by_subgroup {
        return Err(FamilyError::RInPowerSubgroup);
    }
    Presemifield::new(
        x_product(tw.l(), tw.s(), &x),
        Provenance {
            params: Params::C {
                s: tw.s(),
                l: l.clone(),
                r: r.clone(),
            },
            carrier: coords_carrier(tw),
            flags: Vec::new(),
        },
    )
}
