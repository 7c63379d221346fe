//! Dickson, Hughes–Kleinfeld and Knuth presemifields, and their projection ingredients.

use super::projection::{CompatiblePair, Decomposition};
use super::{
    coords_carrier, nonzero, pair_bilinear, Carrier, FamilyError, Params, Presemifield, Provenance,
};
use crate::bilinear::Bilinear;
use crate::field::{Element, FieldCtx};
use crate::linalg::{Matrix, Subspace};
use crate::tower::{Coords, Tower};

fn odd_coords(tw: &Tower) -> Result<(), FamilyError> {
    if tw.p() == 2 {
        Err(FamilyError::CharTwoUnsupported)
    } else {
        Ok(())
    }
}

/// `(a, b) * (c, d) = (ac + n(bd)^σ, ad + bc)` with `n = ω²`.
pub fn make_dickson(tw: &Tower, s: usize) -> Result<Presemifield, FamilyError> {
    odd_coords(tw)?;
    let m = tw.m();
    if s == 0 || s >= m {
        return Err(FamilyError::SigmaOutOfRange { s, m });
    }
    let l = tw.l();
    let n = tw.n().expect("odd characteristic").clone();
    let product = pair_bilinear(l, |a, b, c, d| {
        let first = l.add(&l.mul(a, c), &l.mul(&n, &l.frobenius_any(&l.mul(b, d), s)));
        (first, l.add(&l.mul(a, d), &l.mul(b, c)))
    });
    Presemifield::new(
        product,
        Provenance {
            params: Params::Dickson { s, n },
            carrier: coords_carrier(tw),
            flags: Vec::new(),
        },
    )
}

/// `(a, b) * (c, d) = (ac + l b^q d, a^q d + bc)` with `q² = |L|`.
pub fn make_hughes_kleinfeld(tw: &Tower, l: &Element) -> Result<Presemifield, FamilyError> {
    odd_coords(tw)?;
    let m = tw.m();
    if m % 2 != 0 {
        return Err(FamilyError::ConditionViolated("m must be even".into()));
    }
    nonzero(l, "l")?;
    let lc = tw.l();
    if lc.in_subfield(l, m / 2) {
        return Err(FamilyError::ConditionViolated("l lies in GF(q)".into()));
    }
    let h = m / 2;
    let product = pair_bilinear(lc, |a, b, c, d| {
        let first = lc.add(
            &lc.mul(a, c),
            &lc.mul(l, &lc.mul(&lc.frobenius_any(b, h), d)),
        );
        let second = lc.add(&lc.mul(&lc.frobenius_any(a, h), d), &lc.mul(b, c));
        (first, second)
    });
    Presemifield::new(
        product,
        Provenance {
            params: Params::HughesKleinfeld { l: l.clone() },
            carrier: coords_carrier(tw),
            flags: Vec::new(),
        },
    )
}

/// `t^{σ+1} + tg - f ≠ 0` for every `t ∈ L`.
pub fn knuth_condition(l: &FieldCtx, f: &Element, g: &Element, s: usize) -> bool {
    l.elements().all(|t| {
        let lead = l.mul(&l.frobenius_any(&t, s), &t);
        !l.sub(&l.add(&lead, &l.mul(&t, g)), f).is_zero()
    })
}

/// `(a + bλ) * (c + dλ) = (ac + b^{1/σ} d f) + (bc + a^σ d + bdg)λ` on pairs over `L`.
pub fn make_knuth(
    l: &FieldCtx,
    f: &Element,
    g: &Element,
    s: usize,
) -> Result<Presemifield, FamilyError> {
    let m = l.m();
    if s >= m {
        return Err(FamilyError::SigmaOutOfRange { s, m });
    }
    if !knuth_condition(l, f, g, s) {
        return Err(FamilyError::ConditionViolated(
            "t^(sigma+1) + tg - f has a root".into(),
        ));
    }
    let product = pair_bilinear(l, |a, b, c, d| {
        let first = l.add(&l.mul(a, c), &l.mul(&l.frobenius_inv(b, s), &l.mul(d, f)));
        let second = [
            l.mul(b, c),
            l.mul(&l.frobenius_any(a, s), d),
            l.mul(&l.mul(b, d), g),
        ]
        .iter()
        .fold(l.zero(), |acc, t| l.add(&acc, t));
        (first, second)
    });
    Presemifield::new(
        product,
        Provenance {
            params: Params::Knuth {
                s,
                f: f.clone(),
                g: g.clone(),
            },
            carrier: Carrier::Pairs {
                field: l.spec().clone(),
            },
            flags: Vec::new(),
        },
    )
}

fn to_f(tw: &Tower, v: &[u32]) -> Element {
    let l = tw.l();
    let m = tw.m();
    let c = Coords {
        a: l.element(&v[..m]).unwrap(),
        b: l.element(&v[m..]).unwrap(),
    };
    tw.from_coords(&c).expect("odd characteristic")
}

fn from_f(tw: &Tower, z: &Element) -> Vec<u32> {
    let c = tw.to_coords(z).expect("odd characteristic");
    super::join_pair(&c.a, &c.b)
}

/// A product on `L²` coordinates evaluated through arithmetic in `F`.
fn via_f(tw: &Tower, op: impl Fn(&Element, &Element) -> Element) -> Bilinear {
    Bilinear::from_fn(tw.p(), 2 * tw.m(), |x, y| {
        from_f(tw, &op(&to_f(tw, x), &to_f(tw, y)))
    })
}

/// A linear map on `L²` coordinates evaluated through arithmetic in `F`.
fn linear_via_f(tw: &Tower, f: impl Fn(&Element) -> Element) -> Matrix {
    let dim = 2 * tw.m();
    let cols: Vec<Vec<u32>> = (0..dim)
        .map(|i| from_f(tw, &f(&to_f(tw, &crate::bilinear::unit(dim, i)))))
        .collect();
    Matrix::from_cols(tw.p(), &cols)
}

fn l_subspace(tw: &Tower) -> Subspace {
    let dim = 2 * tw.m();
    let basis: Vec<Vec<u32>> = (0..tw.m()).map(|i| crate::bilinear::unit(dim, i)).collect();
    Subspace::span(tw.p(), dim, &basis)
}

fn l_omega_subspace(tw: &Tower) -> Subspace {
    let dim = 2 * tw.m();
    let basis: Vec<Vec<u32>> = (tw.m()..dim)
        .map(|i| crate::bilinear::unit(dim, i))
        .collect();
    Subspace::span(tw.p(), dim, &basis)
}

fn half(f: &FieldCtx) -> Element {
    f.inv(&f.from_int(2)).expect("odd characteristic")
}

/// `α(a + bω) = a + b^σ ω` in `F`.
fn dickson_alpha(tw: &Tower, s: usize, x: &Element) -> Element {
    let c = tw.to_coords(x).unwrap();
    let b = tw.l().frobenius_any(&c.b, s);
    tw.from_coords(&Coords { a: c.a, b }).unwrap()
}

/// Ingredients `(ω α(x) α(y), L)` and `(xy, L)` with `f_1 = T(z/ω)/2`, `f_2 = T(z/ω)ω/2`,
/// both realized by `F`-arithmetic on `L²` coordinates.
pub fn dickson_projection(tw: &Tower, s: usize) -> Result<Decomposition, FamilyError> {
    odd_coords(tw)?;
    let f = tw.f();
    let w = tw.omega().clone();
    let w_inv = f.inv(&w).unwrap();
    let h = tw.embed(&half(tw.l()));
    let op1 = via_f(tw, |x, y| {
        f.mul(
            &w,
            &f.mul(&dickson_alpha(tw, s, x), &dickson_alpha(tw, s, y)),
        )
    });
    let op2 = via_f(tw, |x, y| f.mul(x, y));
    let t_over_w = |z: &Element| {
        let zw = f.mul(z, &w_inv);
        f.mul(&h, &f.add(&zw, &tw.conj(&zw)))
    };
    let f1 = linear_via_f(tw, t_over_w);
    let f2 = linear_via_f(tw, |z| f.mul(&t_over_w(z), &w));
    Ok(Decomposition {
        pair: CompatiblePair {
            ops: vec![op1, op2],
            subgroups: vec![l_subspace(tw), l_subspace(tw)],
        },
        maps: vec![f1, f2],
    })
}

/// Ingredients `(α_1(x) y, Lω)` and `(α_2(x) y, L)` with `α_1(a + bω) = a + (l/n) b^q ω`,
/// `α_2(a + bω) = a^q + bω`, `f_1 = T/2` and `f_2 = T(ω z) ω / (2n)`.
pub fn hughes_kleinfeld_projection(tw: &Tower, l: &Element) -> Result<Decomposition, FamilyError> {
    odd_coords(tw)?;
    let lc = tw.l();
    let f = tw.f();
    let h = tw.m() / 2;
    let n = tw.n().unwrap();
    let l_over_n = lc.div(l, n).unwrap();
    let alpha1 = |x: &Element| {
        let c = tw.to_coords(x).unwrap();
        let b = lc.mul(&l_over_n, &lc.frobenius_any(&c.b, h));
        tw.from_coords(&Coords { a: c.a, b }).unwrap()
    };
    let alpha2 = |x: &Element| {
        let c = tw.to_coords(x).unwrap();
        tw.from_coords(&Coords {
            a: lc.frobenius_any(&c.a, h),
            b: c.b,
        })
        .unwrap()
    };
    let op1 = via_f(tw, |x, y| f.mul(&alpha1(x), y));
    let op2 = via_f(tw, |x, y| f.mul(&alpha2(x), y));
    let half_f = tw.embed(&half(lc));
    let w = tw.omega().clone();
    let inv_2n = tw.embed(&lc.inv(&lc.scale(2, n)).unwrap());
    let f1 = linear_via_f(tw, |z| f.mul(&half_f, &f.add(z, &tw.conj(z))));
    let f2 = linear_via_f(tw, |z| {
        let wz = f.mul(&w, z);
        f.mul(&f.mul(&f.add(&wz, &tw.conj(&wz)), &inv_2n), &w)
    });
    Ok(Decomposition {
        pair: CompatiblePair {
            ops: vec![op1, op2],
            subgroups: vec![l_omega_subspace(tw), l_subspace(tw)],
        },
        maps: vec![f1, f2],
    })
}

/// `x ∘_DK y = ac + μ b^σ d^τ + (ad + bc)ω`, differing from `xy` by an element of `L`.
pub fn dickson_knuth_product(tw: &Tower, s: usize, t: usize, mu: &Element) -> Bilinear {
    let l = tw.l();
    pair_bilinear(l, |a, b, c, d| {
        let tail = l.mul(mu, &l.mul(&l.frobenius_any(b, s), &l.frobenius_any(d, t)));
        (
            l.add(&l.mul(a, c), &tail),
            l.add(&l.mul(a, d), &l.mul(b, c)),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::projection_product;

    fn same_table(a: &Bilinear, b: &Bilinear) -> bool {
        a.table_unchecked() == b.table_unchecked()
    }

    #[test]
    fn dickson_over_gf9_is_commutative() {
        let tw = Tower::new(3, 2, 1).unwrap();
        let d = make_dickson(&tw, 1).unwrap();
        let t = d.table().unwrap();
        for x in 0..81 {
            for y in 0..81 {
                assert_eq!(t.get(x, y), t.get(y, x));
            }
        }
    }

    #[test]
    fn dickson_needs_nontrivial_sigma() {
        let tw = Tower::new(3, 2, 1).unwrap();
        assert!(matches!(
            make_dickson(&tw, 0),
            Err(FamilyError::SigmaOutOfRange { .. })
        ));
    }

    #[test]
    fn dickson_projection_rebuilds() {
        for (m, s) in [(2, 1), (3, 1), (3, 2)] {
            let tw = Tower::new(3, m, s).unwrap();
            let d = make_dickson(&tw, s).unwrap();
            let dec = dickson_projection(&tw, s).unwrap();
            let rebuilt = projection_product(&dec.pair, &dec.maps, coords_carrier(&tw)).unwrap();
            assert!(same_table(rebuilt.product(), d.product()));
        }
    }

    #[test]
    fn hughes_kleinfeld_and_its_projection() {
        let tw = Tower::new(3, 2, 1).unwrap();
        let lc = tw.l();
        let mut accepted = 0;
        for l in lc.elements().skip(1) {
            let res = make_hughes_kleinfeld(&tw, &l);
            if lc.in_subfield(&l, 1) {
                assert!(matches!(res, Err(FamilyError::ConditionViolated(_))));
                continue;
            }
            let hk = res.unwrap();
            let dec = hughes_kleinfeld_projection(&tw, &l).unwrap();
            let rebuilt = projection_product(&dec.pair, &dec.maps, coords_carrier(&tw)).unwrap();
            assert!(same_table(rebuilt.product(), hk.product()));
            accepted += 1;
        }
        assert_eq!(accepted, 6);
    }

    #[test]
    fn knuth_with_root_is_rejected() {
        let l = FieldCtx::new(3, 2, None).unwrap();
        // t = 1 is a root of t^2 + t g - f when f = 1 + g
        let g = l.generator().clone();
        let f = l.add(&l.one(), &g);
        assert!(!knuth_condition(&l, &f, &g, 0));
        assert!(matches!(
            make_knuth(&l, &f, &g, 0),
            Err(FamilyError::ConditionViolated(_))
        ));
    }

    #[test]
    fn knuth_condition_matches_certification() {
        let l = FieldCtx::new(3, 2, None).unwrap();
        for s in 0..2 {
            for f in l.elements() {
                for g in l.elements().step_by(2) {
                    let ok = knuth_condition(&l, &f, &g, s);
                    assert_eq!(make_knuth(&l, &f, &g, s).is_ok(), ok);
                }
            }
        }
    }

    #[test]
    fn dickson_knuth_neighbor_leaves_table() {
        let tw = Tower::new(3, 3, 1).unwrap();
        let lc = tw.l();
        let dec = dickson_projection(&tw, 1).unwrap();
        let base = projection_product(&dec.pair, &dec.maps, coords_carrier(&tw)).unwrap();
        for (s, t, mu) in [(1, 2, lc.generator().clone()), (2, 0, lc.from_int(2))] {
            let mut pair = dec.pair.clone();
            pair.ops[1] = dickson_knuth_product(&tw, s, t, &mu);
            let swapped = projection_product(&pair, &dec.maps, coords_carrier(&tw)).unwrap();
            assert!(same_table(swapped.product(), base.product()));
        }
    }
}
