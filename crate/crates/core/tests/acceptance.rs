//! Acceptance suite: one PASS/FAIL line per criterion, with its time budget.
//!
//! Run a subset with `cargo test --test acceptance -- 3 5`.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use semifield_core::families::{
    coordinate_lines, decompose, dickson_knuth_product, dickson_projection, h_value, make_a,
    make_b, make_c, make_twisted, make_x, projection_product, reparametrize, x_product, x_valid,
    Carrier, Presemifield, Transform, XParams,
};
use semifield_core::field::{Element, FieldCtx, FieldTables};
use semifield_core::linalg::Subspace;
use semifield_core::semifield::{
    classify_algebra, ganley_presemifield, ganley_semifield, nuclei_bruteforce, nuclei_linear,
    to_semifield, verify_presemifield, Certificate, Semifield,
};
use semifield_core::theory::{
    b_comm_criterion, c_comm_criterion, number_facts, predict_nuclei, DimPrediction,
};
use semifield_core::tower::Tower;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| format!("{err:?}"))
}

fn semifield(pre: &Presemifield) -> Result<Semifield, String> {
    e(to_semifield(pre, 1))
}

/// Both Ganley tests, which must agree.
fn ganley(pre: &Presemifield) -> Result<bool, String> {
    let s = semifield(pre)?;
    let a = ganley_semifield(&s).is_some();
    let b = ganley_presemifield(pre).is_some();
    ensure(a == b, || {
        format!("Ganley tests disagree on {:?}", pre.params())
    })?;
    Ok(a)
}

// 1

fn a_2_2_2() -> Check {
    let tw = e(Tower::build(2, 2, 2, None, Some(&[1, 1, 0, 0, 1]), None))?;
    let f = tw.f();
    let alpha = e(f.element(&[0, 1]))?;
    let mu = f.pow(&alpha, 3);
    let omega = f.pow(&alpha, 5);
    let l = tw.restrict(&omega).ok_or("α^5 is not in L")?;
    let a = e(make_a(&tw, &l, &mu))?;
    ensure(
        verify_presemifield(a.product()) == Certificate::Pass,
        || "certification failed".into(),
    )?;
    let s = semifield(&a)?;
    let flags = classify_algebra(&s);
    ensure(flags.commutative && flags.associative, || {
        format!("isotope is not a field: {flags:?}")
    })?;
    Ok("order 16, isotope at e = 1 is commutative and associative".into())
}

// 2

fn a_2_6_2() -> Check {
    let tw = e(Tower::new(2, 6, 2))?;
    let (f, l) = (tw.f(), tw.l());
    let quartic = |x: &Element| f.add(&f.add(&f.pow(x, 4), x), &f.one());
    let alpha = f
        .elements()
        .find(|x| quartic(x).is_zero())
        .ok_or("no root of x^4 + x + 1")?;
    let mu = f.pow(&alpha, 3);
    let omega = f.pow(&alpha, 5);
    let lv = l
        .elements()
        .skip(1)
        .find(|x| l.multiplicative_order(x) == Ok(9) && f.pow(&tw.embed(x), 3) == omega)
        .ok_or("no l of order 9 with l^3 = ω")?;
    let a = e(make_a(&tw, &lv, &mu))?;
    ensure(a.order() == 1 << 12, || "wrong order".into())?;
    let s = semifield(&a)?;
    let n = nuclei_linear(&s);
    ensure(n.consistent(), || "nuclei are not subfields".into())?;
    let [nl, nm, nr, _] = n.dims();
    ensure((nl, nm, nr) == (2, 4, 2), || {
        format!("nuclei dims {:?}", n.dims())
    })?;
    Ok(format!(
        "order 4096, (N_l, N_m, N_r) = ({}, {}, {})",
        n.left.field, n.middle.field, n.right.field
    ))
}

// 3

fn c_3_3_2() -> Check {
    let tw = e(Tower::new(3, 3, 2))?;
    let l = tw.l();
    let c = e(make_c(&tw, &l.one(), &l.from_int(-1)))?;
    ensure(
        verify_presemifield(c.product()) == Certificate::Pass,
        || "certification failed".into(),
    )?;
    ensure(ganley(&c)?, || "no Ganley witness".into())?;
    // the substitution (a, b) ↦ (kb, a) on the left factor, k = lR = -1, turns the
    // product into (-D_1, D_2) where D is the display
    let q = l.order();
    let k = l.from_int(-1);
    let nine = |x: &Element| l.pow(x, 9);
    let pair = |a: &Element, b: &Element| l.index(a) as u64 + q * l.index(b) as u64;
    let els: Vec<Element> = l.elements().collect();
    let mut cells = 0u64;
    for a in &els {
        for b in &els {
            let lhs = pair(&l.mul(&k, b), a);
            for cc in &els {
                for d in &els {
                    let first = [
                        l.mul(a, &nine(d)),
                        l.mul(&nine(a), d),
                        l.mul(b, &nine(cc)),
                        l.mul(&nine(b), cc),
                    ]
                    .iter()
                    .fold(l.zero(), |acc, t| l.add(&acc, t));
                    let second = l.sub(&l.mul(a, cc), &l.mul(b, d));
                    let got = c.mul_index(lhs, pair(cc, d));
                    ensure(got == pair(&l.neg(&first), &second), || {
                        format!("cell {a:?} {b:?} {cc:?} {d:?} differs")
                    })?;
                    cells += 1;
                }
            }
        }
    }
    Ok(format!(
        "certified, Ganley witness found, {cells} display cells equal"
    ))
}

// 4

fn c_3_4_order_16() -> Check {
    let mut parts = Vec::new();
    for s in [1, 3] {
        let tw = e(Tower::new(3, 4, s))?;
        let l = tw.l();
        let r = l.gen_pow(5);
        ensure(l.multiplicative_order(&r) == Ok(16), || {
            "R does not have order 16".into()
        })?;
        let c = e(make_c(&tw, &r, &r))?;
        ensure(!ganley(&c)?, || format!("s = {s}: Ganley witness found"))?;
        ensure(!e(c_comm_criterion(&tw, &r, &r))?, || {
            format!("s = {s}: criterion holds")
        })?;
        parts.push(format!("s = {s}"));
    }
    Ok(format!(
        "order 6561, not commutative-isotopic for {}",
        parts.join(" and ")
    ))
}

// 5

fn prop_c_3_2_1() -> Check {
    let tw = e(Tower::new(3, 2, 1))?;
    let l = tw.l();
    let mut done = 0;
    for lv in l.elements().skip(1) {
        for r in l.elements().skip(1) {
            let Ok(c) = make_c(&tw, &lv, &r) else {
                continue;
            };
            let s = semifield(&c)?;
            let lin = nuclei_linear(&s);
            let brute = e(nuclei_bruteforce(&s))?;
            ensure(lin == brute, || "engines disagree".into())?;
            let [nl, nm, nr, _] = lin.dims();
            ensure((nl, nm, nr) == (1, 2, 1), || {
                format!("dims {:?}", lin.dims())
            })?;
            done += 1;
        }
    }
    ensure(done >= 3, || format!("only {done} valid choices"))?;
    Ok(format!(
        "{done} valid (l, R): N_l = N_r = GF(3), N_m = GF(9) by both engines"
    ))
}

// 6

/// `x^{σ-1}` for all `x ≠ 0`.
fn sigma_minus_one_image(t: &FieldTables, s: usize) -> HashSet<u32> {
    (1..t.order() as u32)
        .map(|x| t.div(t.frob(x, s), x))
        .collect()
}

/// Zero divisors of X exist iff `t^σ + lt` vanishes for some `t ≠ 0`, or the form
/// `a^{σ+1} + nN b^{σ+1} - nv(a^σ b + N a b^σ)` has a nonzero root.
fn form_has_root(t: &FieldTables, s: usize, v: u32, n: u32, big_n: u32) -> bool {
    let q = t.order() as u32;
    let nn = t.mul(n, big_n);
    let nv = t.mul(n, v);
    (1..q * q).any(|i| {
        let (a, b) = (i % q, i / q);
        let (sa, sb) = (t.frob(a, s), t.frob(b, s));
        let norm = t.add(t.mul(sa, a), t.mul(nn, t.mul(sb, b)));
        let mixed = t.add(t.mul(sa, b), t.mul(big_n, t.mul(a, sb)));
        t.sub(norm, t.mul(nv, mixed)) == 0
    })
}

#[derive(Default)]
struct Sweep {
    x_tuples: u64,
    x_certified: u64,
    c_valid: u64,
    b_valid: u64,
    other: u64,
    engines: u64,
    predictions: u64,
    exact: u64,
}

fn instance(tw: &Tower, pre: &Presemifield, sw: &mut Sweep) -> Result<(), String> {
    let s = semifield(pre)?;
    let lin = nuclei_linear(&s);
    ensure(lin.consistent(), || {
        format!("{:?}: inconsistent nuclei", pre.params())
    })?;
    let brute = e(nuclei_bruteforce(&s))?;
    ensure(lin == brute, || {
        format!("{:?}: engines disagree", pre.params())
    })?;
    sw.engines += 1;
    let pred = e(predict_nuclei(tw, pre.params()))?;
    ensure(pred.admits(lin.dims()), || {
        format!(
            "{:?}: measured {:?}, predicted {} {:?}",
            pre.params(),
            lin.dims(),
            pred.theorem,
            pred
        )
    })?;
    sw.predictions += 1;
    if matches!(pred.middle, DimPrediction::Exact { .. }) {
        sw.exact += 1;
    }
    Ok(())
}

fn sweep_x(tw: &Tower, sw: &mut Sweep) -> Result<(), String> {
    let l = tw.l();
    let t = l.tables().ok_or("no tables")?;
    let s = tw.s();
    let q = l.order() as u32;
    let image = sigma_minus_one_image(&t, s);
    let full = q <= 9;
    let mut k = 0u64;
    for v in 0..q {
        for n in 1..q {
            for big_n in 1..q {
                let form_root = form_has_root(&t, s, v, n, big_n);
                for lv in 1..q {
                    let oracle = !(form_root || image.contains(&t.neg(lv)));
                    let x = XParams {
                        v: l.from_index(v as u64),
                        l: l.from_index(lv as u64),
                        n: l.from_index(n as u64),
                        big_n: l.from_index(big_n as u64),
                    };
                    let valid = x_valid(tw, &x).is_ok();
                    ensure(valid == oracle, || {
                        format!("X validity {valid} but oracle {oracle} at {x:?}")
                    })?;
                    if full || k % 409 == 0 {
                        let cert = verify_presemifield(&x_product(l, s, &x)) == Certificate::Pass;
                        ensure(cert == valid, || format!("X certification {cert} at {x:?}"))?;
                        sw.x_certified += 1;
                    }
                    if valid && (full || k % 97 == 0) {
                        instance(tw, &e(make_x(tw, &x))?, sw)?;
                    }
                    k += 1;
                }
            }
        }
    }
    sw.x_tuples += k;
    Ok(())
}

fn sweep_c(tw: &Tower, sw: &mut Sweep) -> Result<(), String> {
    let l = tw.l();
    for lv in l.elements().skip(1) {
        for r in l.elements().skip(1) {
            let Ok(c) = make_c(tw, &lv, &r) else { continue };
            let crit = e(c_comm_criterion(tw, &lv, &r))?;
            ensure(crit == ganley(&c)?, || {
                format!(
                    "C criterion {crit} disagrees with Ganley at {:?}",
                    c.params()
                )
            })?;
            instance(tw, &c, sw)?;
            sw.c_valid += 1;
        }
    }
    Ok(())
}

fn sweep_b(tw: &Tower, sw: &mut Sweep) -> Result<(), String> {
    let l = tw.l();
    for lv in l.elements().skip(1) {
        for n in l.elements().skip(1) {
            for big_n in l.elements().skip(1) {
                let Ok(b) = make_b(tw, &lv, &n, &big_n) else {
                    continue;
                };
                let crit = e(b_comm_criterion(tw, &lv, &n, &big_n))?.commutative;
                ensure(crit == ganley(&b)?, || {
                    format!(
                        "B criterion {crit} disagrees with Ganley at {:?}",
                        b.params()
                    )
                })?;
                instance(tw, &b, sw)?;
                sw.b_valid += 1;
            }
        }
    }
    Ok(())
}

fn sweep_twisted_and_a(tw: &Tower, sw: &mut Sweep) -> Result<(), String> {
    let l = tw.l();
    for lv in l.elements().skip(1) {
        if let Ok(t) = make_twisted(l, &lv, tw.s()) {
            instance(tw, &t, sw)?;
            sw.other += 1;
        }
    }
    let f = tw.f();
    let step = if tw.m() == 2 { 1 } else { 23 };
    for lv in l
        .elements()
        .skip(1)
        .step_by(if tw.m() == 2 { 1 } else { 5 })
    {
        for mu in f.elements().skip(1).step_by(step) {
            if let Ok(a) = make_a(tw, &lv, &mu) {
                instance(tw, &a, sw)?;
                sw.other += 1;
            }
        }
    }
    Ok(())
}

fn sweeps() -> Check {
    let mut sw = Sweep::default();
    for (m, s) in [(2, 1), (3, 1), (3, 2)] {
        let tw = e(Tower::new(3, m, s))?;
        sweep_x(&tw, &mut sw)?;
        sweep_c(&tw, &mut sw)?;
        sweep_b(&tw, &mut sw)?;
        sweep_twisted_and_a(&tw, &mut sw)?;
    }
    Ok(format!(
        "X: {} tuples ({} certified); C: {} valid; B: {} valid; twisted/A: {}; engines agree on {}; \
         predictions hold on {} ({} exact middle)",
        sw.x_tuples, sw.x_certified, sw.c_valid, sw.b_valid, sw.other, sw.engines, sw.predictions, sw.exact
    ))
}

// 7

/// `h(ea, eb, c, d) - e h(a, b, c, d)` and `h(a, b, ec, ed) - e h(a, b, c, d)` in closed form.
fn h_identities_hold(
    l: &FieldCtx,
    s: usize,
    x: &XParams,
    a: &Element,
    b: &Element,
    c: &Element,
    d: &Element,
    ee: &Element,
) -> bool {
    let sg = |z: &Element| l.frobenius_any(z, s);
    let h = |a: &Element, b: &Element, c: &Element, d: &Element| h_value(l, s, x, a, b, c, d);
    let nn = l.mul(&x.n, &x.big_n);
    let nv = l.mul(&x.n, &x.v);
    let es_e = l.sub(&sg(ee), ee);
    let base = h(a, b, c, d);
    let lhs1 = l.sub(&h(&l.mul(ee, a), &l.mul(ee, b), c, d), &l.mul(ee, &base));
    let in1 = l.add(
        &l.sub(&l.mul(&sg(a), c), &l.mul(&nn, &l.mul(&sg(b), d))),
        &l.mul(
            &nv,
            &l.sub(&l.mul(&sg(a), d), &l.mul(&x.big_n, &l.mul(&sg(b), c))),
        ),
    );
    let lhs2 = l.sub(&h(a, b, &l.mul(ee, c), &l.mul(ee, d)), &l.mul(ee, &base));
    let in2 = l.add(
        &l.sub(&l.mul(a, &sg(c)), &l.mul(&nn, &l.mul(b, &sg(d)))),
        &l.mul(
            &nv,
            &l.sub(&l.mul(&x.big_n, &l.mul(a, &sg(d))), &l.mul(b, &sg(c))),
        ),
    );
    lhs1 == l.mul(&x.l, &l.mul(&es_e, &in1)) && lhs2 == l.mul(&es_e, &in2)
}

fn identities() -> Check {
    // every (a, b, c, d, e) for one parameter tuple per v; every parameter tuple on
    // basis vectors for (a, b), (c, d) with every e, which covers the rest by biadditivity
    let l = e(FieldCtx::new(3, 2, None))?;
    let s = 1;
    let els: Vec<Element> = l.elements().collect();
    let mut checks = 0u64;
    for (i, v) in els.iter().enumerate() {
        let x = XParams {
            v: v.clone(),
            l: els[1 + i % 8].clone(),
            n: els[1 + (i + 3) % 8].clone(),
            big_n: els[1 + (i + 5) % 8].clone(),
        };
        for a in &els {
            for b in &els {
                for c in &els {
                    for d in &els {
                        for ee in &els {
                            ensure(h_identities_hold(&l, s, &x, a, b, c, d, ee), || {
                                format!("identity fails at {x:?}")
                            })?;
                            checks += 1;
                        }
                    }
                }
            }
        }
    }
    let basis = [
        (l.one(), l.zero()),
        (els[3].clone(), l.zero()),
        (l.zero(), l.one()),
        (l.zero(), els[3].clone()),
    ];
    for v in &els {
        for lv in &els[1..] {
            for n in &els[1..] {
                for big_n in &els[1..] {
                    let x = XParams {
                        v: v.clone(),
                        l: lv.clone(),
                        n: n.clone(),
                        big_n: big_n.clone(),
                    };
                    for (a, b) in &basis {
                        for (c, d) in &basis {
                            for ee in &els {
                                ensure(h_identities_hold(&l, s, &x, a, b, c, d, ee), || {
                                    format!("identity fails at {x:?}")
                                })?;
                                checks += 1;
                            }
                        }
                    }
                }
            }
        }
    }

    // decompose and rebuild
    let tw = e(Tower::new(3, 3, 2))?;
    let lc = tw.l();
    let c = e(make_c(&tw, &lc.one(), &lc.from_int(-1)))?;
    let unit = |i: usize| (0..6).map(|j| u32::from(i == j)).collect::<Vec<u32>>();
    let halves = vec![
        Subspace::span(3, 6, &(0..3).map(unit).collect::<Vec<_>>()),
        Subspace::span(3, 6, &(3..6).map(unit).collect::<Vec<_>>()),
    ];
    let mut rebuilt = 0;
    for parts in [halves, coordinate_lines(3, 6), vec![Subspace::whole(3, 6)]] {
        let d = e(decompose(&c, &parts))?;
        let r = e(projection_product(
            &d.pair,
            &d.maps,
            Carrier::Vector { p: 3, dim: 6 },
        ))?;
        ensure(
            r.product().table_unchecked() == c.product().table_unchecked(),
            || "rebuild differs".into(),
        )?;
        rebuilt += 1;
    }

    // neighbour substitution
    let tw1 = e(Tower::new(3, 3, 1))?;
    let dec = e(dickson_projection(&tw1, 1))?;
    let carrier = Carrier::Vector { p: 3, dim: 6 };
    let base = e(projection_product(&dec.pair, &dec.maps, carrier.clone()))?;
    let mu = tw1.l().generator().clone();
    let mut pair = dec.pair.clone();
    pair.ops[1] = dickson_knuth_product(&tw1, 1, 2, &mu);
    let swapped = e(projection_product(&pair, &dec.maps, carrier))?;
    ensure(
        swapped.product().table_unchecked() == base.product().table_unchecked(),
        || "neighbour changed the table".into(),
    )?;

    // number facts
    let mut facts = 0;
    for p in [3, 5] {
        for m in 1..=6 {
            for s in 0..m {
                e(number_facts(p, m, s))?;
                facts += 1;
            }
        }
    }
    Ok(format!("{checks} h-identity checks, {rebuilt} rebuilds, neighbour table equal, {facts} number-fact records"))
}

// 8

fn invariants() -> Check {
    let tw1 = e(Tower::new(3, 3, 1))?;
    let tw2 = e(Tower::new(3, 3, 2))?;
    let l = tw1.l();
    let g = l.generator().clone();
    let g2 = l.square(&g);
    let c = e(make_c(&tw2, &l.one(), &l.from_int(-1)))?;
    let c_nc = l
        .elements()
        .skip(1)
        .find_map(|r| make_c(&tw1, &g2, &r).ok())
        .ok_or("no C with l = g^2")?;
    let b = l
        .elements()
        .skip(1)
        .find_map(|n| make_b(&tw1, &g2, &n, &g).ok())
        .ok_or("no B with l = g^2, N = g")?;
    let x = l
        .elements()
        .skip(2)
        .find_map(|n| {
            make_x(
                &tw1,
                &XParams {
                    v: g.clone(),
                    l: g2.clone(),
                    n,
                    big_n: g.clone(),
                },
            )
            .ok()
        })
        .ok_or("no X")?;
    let a = tw1
        .f()
        .elements()
        .skip(1)
        .find_map(|mu| make_a(&tw1, &g2, &mu).ok())
        .ok_or("no A")?;
    let f = tw1.f();
    let cases: Vec<(&Presemifield, Transform)> = vec![
        (&c, Transform::CFlip),
        (
            &c,
            Transform::CCoset {
                x: g.clone(),
                y: g2.clone(),
            },
        ),
        (
            &c_nc,
            Transform::CCoset {
                x: g2.clone(),
                y: g.clone(),
            },
        ),
        (&c_nc, Transform::CFlip),
        (&b, Transform::BCoset { x: g.clone() }),
        (&b, Transform::BFlip),
        (
            &x,
            Transform::XScale {
                k_b: g.clone(),
                k_c: g2.clone(),
            },
        ),
        (&x, Transform::XFlip),
        (
            &a,
            Transform::ACoset {
                alpha: f.generator().clone(),
            },
        ),
        (&a, Transform::AScale { k: g.clone() }),
    ];
    for (pre, t) in &cases {
        let q = e(reparametrize(&tw1, pre, t)).map_err(|err| format!("{t:?}: {err}"))?;
        ensure(
            verify_presemifield(q.product()) == Certificate::Pass,
            || format!("{t:?}: not a presemifield"),
        )?;
        let d1 = nuclei_linear(&semifield(pre)?).dims();
        let d2 = nuclei_linear(&semifield(&q)?).dims();
        ensure(d1 == d2, || format!("{t:?}: nuclei {d1:?} vs {d2:?}"))?;
        ensure(ganley(pre)? == ganley(&q)?, || {
            format!("{t:?}: Ganley status changed")
        })?;
    }
    let kinds: HashSet<String> = cases
        .iter()
        .map(|(p, _)| p.params().family().to_string())
        .collect();
    Ok(format!(
        "{} reparametrizations over families {:?} preserve validity, nuclei and Ganley status",
        cases.len(),
        {
            let mut k: Vec<_> = kinds.into_iter().collect();
            k.sort();
            k
        }
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let wanted: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let all = [
        Criterion {
            id: 1,
            name: "A(2,2,2) is a field",
            budget: Duration::from_secs(1),
            run: a_2_2_2,
        },
        Criterion {
            id: 2,
            name: "A(2,6,2) nuclei",
            budget: Duration::from_secs(60),
            run: a_2_6_2,
        },
        Criterion {
            id: 3,
            name: "C(3,3,2,1,-1) display and Ganley",
            budget: Duration::from_secs(10),
            run: c_3_3_2,
        },
        Criterion {
            id: 4,
            name: "C(3,4) with l = R of order 16",
            budget: Duration::from_secs(120),
            run: c_3_4_order_16,
        },
        Criterion {
            id: 5,
            name: "C(3,2,1) nuclei",
            budget: Duration::from_secs(5),
            run: prop_c_3_2_1,
        },
        Criterion {
            id: 6,
            name: "theorem-equivalence sweeps",
            budget: Duration::from_secs(1800),
            run: sweeps,
        },
        Criterion {
            id: 7,
            name: "identity suite",
            budget: Duration::from_secs(600),
            run: identities,
        },
        Criterion {
            id: 8,
            name: "isotopy invariants",
            budget: Duration::from_secs(600),
            run: invariants,
        },
    ];
    let mut failed = 0;
    for c in all
        .iter()
        .filter(|c| wanted.is_empty() || wanted.contains(&c.id))
    {
        let start = Instant::now();
        let out = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match out {
            Ok(d) if took <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget of {:?}", c.budget)),
            Err(err) => (false, err),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {} ({}) [{:.2} s]: {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
