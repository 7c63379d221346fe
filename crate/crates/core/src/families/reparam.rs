//! Parameter changes that map a family member to an isotopic member.

use serde::Serialize;

use super::{make_a, make_b, make_c, make_x, FamilyError, Params, Presemifield, XParams};
use crate::field::Element;
use crate::tower::Tower;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Transform {
    /// `(a, b) ↦ (a, k_b b)` and `x ↦ k_c x`: `(v/k_b, l/k_c^{σ-1}, n k_b², N k_b^{σ-1})`.
    XScale { k_b: Element, k_c: Element },
    /// `s ↦ m - s`: `(v/N, 1/l, nN², 1/N)`.
    XFlip,
    /// `l ↦ l x^{σ-1}`, `R ↦ R y^{σ+1}`.
    CCoset { x: Element, y: Element },
    /// `s ↦ m - s`, `l ↦ 1/l`.
    CFlip,
    /// `l ↦ l x^{σ-1}`.
    BCoset { x: Element },
    /// `s ↦ m - s`: `(1/l, n, 1/N^{1/σ})`.
    BFlip,
    /// `l ↦ l / N(α)^{σ-1}`, `μ ↦ μ α^σ / ᾱ` for `α ∈ F*`.
    ACoset { alpha: Element },
    /// `μ ↦ kμ` for `k ∈ L*`.
    AScale { k: Element },
}

fn nz(x: &Element) -> Result<(), FamilyError> {
    if x.is_zero() {
        Err(FamilyError::InvalidTransformParams)
    } else {
        Ok(())
    }
}

/// Applies `t` to `pre`, a member of a family over `tw` (whose `σ` must match `pre`).
pub fn reparametrize(
    tw: &Tower,
    pre: &Presemifield,
    t: &Transform,
) -> Result<Presemifield, FamilyError> {
    let l = tw.l();
    let m = tw.m();
    let pw = |x: &Element, s: usize, plus: bool| {
        let sig = l.frobenius_any(x, s);
        if plus {
            l.mul(&sig, x)
        } else {
            l.div(&sig, x).expect("nonzero")
        }
    };
    match (pre.params(), t) {
        (
            Params::X {
                s,
                v,
                l: lv,
                n,
                big_n,
            },
            Transform::XScale { k_b, k_c },
        ) => {
            nz(k_b)?;
            nz(k_c)?;
            let x = XParams {
                v: l.div(v, k_b).unwrap(),
                l: l.div(lv, &pw(k_c, *s, false)).unwrap(),
                n: l.mul(n, &l.square(k_b)),
                big_n: l.mul(big_n, &pw(k_b, *s, false)),
            };
            make_x(&tw.with_s(*s)?, &x)
        }
        (
            Params::X {
                s,
                v,
                l: lv,
                n,
                big_n,
            },
            Transform::XFlip,
        ) => {
            let x = XParams {
                v: l.div(v, big_n).unwrap(),
                l: l.inv(lv).unwrap(),
                n: l.mul(n, &l.square(big_n)),
                big_n: l.inv(big_n).unwrap(),
            };
            make_x(&tw.with_s(m - s)?, &x)
        }
        (Params::C { s, l: lv, r }, Transform::CCoset { x, y }) => {
            nz(x)?;
            nz(y)?;
            let l2 = l.mul(lv, &pw(x, *s, false));
            let r2 = l.mul(r, &pw(y, *s, true));
            make_c(&tw.with_s(*s)?, &l2, &r2)
        }
        (Params::C { s, l: lv, r }, Transform::CFlip) => {
            make_c(&tw.with_s(m - s)?, &l.inv(lv).unwrap(), r)
        }
        (Params::B { s, l: lv, n, big_n }, Transform::BCoset { x }) => {
            nz(x)?;
            make_b(&tw.with_s(*s)?, &l.mul(lv, &pw(x, *s, false)), n, big_n)
        }
        (Params::B { s, l: lv, n, big_n }, Transform::BFlip) => {
            let n2 = l.inv(&l.frobenius_inv(big_n, *s)).unwrap();
            make_b(&tw.with_s(m - s)?, &l.inv(lv).unwrap(), n, &n2)
        }
        (Params::A { s, l: lv, mu }, Transform::ACoset { alpha }) => {
            nz(alpha)?;
            let tw = tw.with_s(*s)?;
            let f = tw.f();
            let norm = tw.rel_norm(alpha);
            let l2 = l.div(lv, &pw(&norm, *s, false)).unwrap();
            let mu2 = f
                .div(&f.mul(mu, &f.frobenius_any(alpha, *s)), &tw.conj(alpha))
                .unwrap();
            make_a(&tw, &l2, &mu2)
        }
        (Params::A { s, l: lv, mu }, Transform::AScale { k }) => {
            nz(k)?;
            let tw = tw.with_s(*s)?;
            let mu2 = tw.f().mul(mu, &tw.embed(k));
            make_a(&tw, lv, &mu2)
        }
        (p, _) => Err(FamilyError::WrongFamily(p.family())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{nuclei_linear, to_semifield};

    fn dims(p: &Presemifield) -> [usize; 4] {
        let s = to_semifield(p, 1).unwrap();
        nuclei_linear(&s).dims()
    }

    #[test]
    fn unit_scaling_is_identity() {
        let tw = Tower::new(3, 3, 1).unwrap();
        let l = tw.l();
        let x = XParams {
            v: l.from_int(1),
            l: l.one(),
            n: l.from_index(5),
            big_n: l.from_index(7),
        };
        if let Ok(p) = make_x(&tw, &x) {
            let q = reparametrize(
                &tw,
                &p,
                &Transform::XScale {
                    k_b: l.one(),
                    k_c: l.one(),
                },
            )
            .unwrap();
            assert_eq!(p.table(), q.table());
        }
    }

    #[test]
    fn c_flip_preserves_nuclei() {
        let tw = Tower::new(3, 3, 2).unwrap();
        let l = tw.l();
        let c = make_c(&tw, &l.one(), &l.from_int(-1)).unwrap();
        let d = reparametrize(&tw, &c, &Transform::CFlip).unwrap();
        assert!(matches!(d.params(), Params::C { s: 1, .. }));
        assert_eq!(dims(&c), dims(&d));
    }

    #[test]
    fn wrong_family() {
        let tw = Tower::new(3, 3, 2).unwrap();
        let l = tw.l();
        let c = make_c(&tw, &l.one(), &l.from_int(-1)).unwrap();
        assert_eq!(
            reparametrize(&tw, &c, &Transform::XFlip).unwrap_err(),
            FamilyError::WrongFamily("C")
        );
    }

    #[test]
    fn a_coset_preserves_validity() {
        let tw = Tower::new(3, 2, 1).unwrap();
        let f = tw.f();
        let l = tw.l().generator().clone();
        let mut checked = 0;
        for mu in f.elements().skip(1) {
            let Ok(a) = make_a(&tw, &l, &mu) else {
                continue;
            };
            for alpha in f.elements().skip(1).step_by(11) {
                let b = reparametrize(&tw, &a, &Transform::ACoset { alpha }).unwrap();
                assert_eq!(dims(&a), dims(&b));
                checked += 1;
            }
            if checked > 40 {
                break;
            }
        }
        assert!(checked > 0);
    }
}
