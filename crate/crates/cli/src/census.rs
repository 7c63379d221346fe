//! Exhaustive sweeps over a family's parameter tuples.

use std::collections::{BTreeMap, VecDeque};
use std::time::Instant;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::json;

use semifield_core::exec::Exec;
use semifield_core::families::{
    a_product, make_a, make_b, make_c, make_twisted, make_x, twisted_product, x_product,
    FamilyError, Params, Presemifield, XParams,
};
use semifield_core::field::{Element, FieldCtx};
use semifield_core::semifield::{
    ganley_presemifield, nuclei_linear, to_semifield, verify_presemifield, Certificate,
};
use semifield_core::theory::{predict_nuclei, DimPrediction};
use semifield_core::tower::Tower;

use crate::commands::is_parameter_rejection;
use crate::instance::Family;
use crate::report::Agreement;
use crate::{CensusArgs, Format, Output};

/// A parameter tuple as field-element indices; `radix[i]` is the order of the i-th field.
struct Space {
    family: Family,
    names: &'static [&'static str],
    radix: Vec<u64>,
    /// Coordinates that range over nonzero elements only.
    nonzero: Vec<bool>,
}

impl Space {
    fn new(family: Family, tw: &Tower) -> Result<Space> {
        let q = tw.l().order();
        let q2 = tw.f().order();
        let (names, radix, nonzero): (&'static [&'static str], Vec<u64>, Vec<bool>) = match family {
            Family::Twisted => (&["l"], vec![q], vec![true]),
            Family::A => (&["l", "mu"], vec![q, q2], vec![true, true]),
            Family::C => (&["l", "R"], vec![q, q], vec![true, true]),
            Family::B => (&["l", "n", "N"], vec![q; 3], vec![true; 3]),
            Family::X => (
                &["v", "l", "n", "N"],
                vec![q; 4],
                vec![false, true, true, true],
            ),
            other => bail!("census does not cover family {other:?}"),
        };
        Ok(Space {
            family,
            names,
            radix,
            nonzero,
        })
    }

    fn size(&self) -> u64 {
        self.radix.iter().product()
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        self.radix
            .iter()
            .map(|r| {
                let c = code % r;
                code /= r;
                c
            })
            .collect()
    }

    fn encode(&self, t: &[u64]) -> u64 {
        t.iter()
            .zip(&self.radix)
            .rev()
            .fold(0, |acc, (c, r)| acc * r + c)
    }

    fn admissible(&self, t: &[u64]) -> bool {
        t.iter().zip(&self.nonzero).all(|(c, nz)| !nz || *c != 0)
    }
}

/// Generators of the parameter changes known to preserve the isotopism class.
fn generators(space: &Space, tw: &Tower) -> Vec<Box<dyn Fn(&[Element]) -> Vec<Element> + Sync>> {
    let l = tw.l().clone();
    let s = tw.s();
    let g = l.generator().clone();
    let gs = l.frobenius_any(&g, s);
    let minus = l.div(&gs, &g).expect("nonzero");
    let plus = l.mul(&gs, &g);
    match space.family {
        Family::C => {
            let (l1, l2) = (l.clone(), l);
            vec![
                Box::new(move |t: &[Element]| vec![l1.mul(&t[0], &minus), t[1].clone()]),
                Box::new(move |t: &[Element]| vec![t[0].clone(), l2.mul(&t[1], &plus)]),
            ]
        }
        Family::B => vec![Box::new(move |t: &[Element]| {
            vec![l.mul(&t[0], &minus), t[1].clone(), t[2].clone()]
        })],
        Family::X => {
            let (l1, l2) = (l.clone(), l);
            let g2 = l1.square(&g);
            let minus2 = minus.clone();
            vec![
                Box::new(move |t: &[Element]| {
                    vec![
                        l1.div(&t[0], &g).expect("nonzero"),
                        t[1].clone(),
                        l1.mul(&t[2], &g2),
                        l1.mul(&t[3], &minus),
                    ]
                }),
                Box::new(move |t: &[Element]| {
                    vec![
                        t[0].clone(),
                        l2.mul(&t[1], &minus2),
                        t[2].clone(),
                        t[3].clone(),
                    ]
                }),
            ]
        }
        Family::A => {
            let f = tw.f().clone();
            let alpha = f.generator().clone();
            let norm_l = tw.rel_norm(&alpha);
            let nsig = l.frobenius_any(&norm_l, s);
            let l_factor = l.div(&norm_l, &nsig).expect("nonzero");
            let mu_factor = f
                .div(&f.frobenius_any(&alpha, s), &tw.conj(&alpha))
                .expect("nonzero");
            let k = tw.embed(&g);
            let (l1, f1, f2) = (l, f.clone(), f);
            vec![
                Box::new(move |t: &[Element]| {
                    vec![l1.mul(&t[0], &l_factor), f1.mul(&t[1], &mu_factor)]
                }),
                Box::new(move |t: &[Element]| vec![t[0].clone(), f2.mul(&t[1], &k)]),
            ]
        }
        _ => Vec::new(),
    }
}

fn ctx_of<'a>(space: &Space, tw: &'a Tower, i: usize) -> &'a FieldCtx {
    if space.family == Family::A && i == 1 {
        tw.f()
    } else {
        tw.l()
    }
}

fn elements(space: &Space, tw: &Tower, t: &[u64]) -> Vec<Element> {
    t.iter()
        .enumerate()
        .map(|(i, &c)| ctx_of(space, tw, i).from_index(c))
        .collect()
}

fn indices(space: &Space, tw: &Tower, t: &[Element]) -> Vec<u64> {
    t.iter()
        .enumerate()
        .map(|(i, x)| ctx_of(space, tw, i).index(x) as u64)
        .collect()
}

/// Orbit representatives (smallest code) with orbit sizes.
fn representatives(space: &Space, tw: &Tower, reduce: bool) -> Vec<(u64, u64)> {
    let size = space.size();
    let admissible = |c: u64| space.admissible(&space.decode(c));
    if !reduce {
        return (0..size)
            .filter(|&c| admissible(c))
            .map(|c| (c, 1))
            .collect();
    }
    let gens = generators(space, tw);
    let mut seen = vec![false; size as usize];
    let mut reps = Vec::new();
    for c in 0..size {
        if seen[c as usize] || !admissible(c) {
            continue;
        }
        seen[c as usize] = true;
        let mut count = 0;
        let mut queue = VecDeque::from([c]);
        while let Some(x) = queue.pop_front() {
            count += 1;
            let t = elements(space, tw, &space.decode(x));
            for g in &gens {
                let y = space.encode(&indices(space, tw, &g(&t)));
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        reps.push((c, count));
    }
    reps
}

fn params_of(space: &Space, s: usize, t: &[Element]) -> Params {
    let c = |i: usize| t[i].clone();
    match space.family {
        Family::Twisted => Params::Twisted { s, l: c(0) },
        Family::A => Params::A {
            s,
            l: c(0),
            mu: c(1),
        },
        Family::C => Params::C {
            s,
            l: c(0),
            r: c(1),
        },
        Family::B => Params::B {
            s,
            l: c(0),
            n: c(1),
            big_n: c(2),
        },
        Family::X => Params::X {
            s,
            v: c(0),
            l: c(1),
            n: c(2),
            big_n: c(3),
        },
        _ => unreachable!("checked in Space::new"),
    }
}

fn x_params(space: &Space, l: &FieldCtx, t: &[Element]) -> XParams {
    match space.family {
        Family::X => XParams {
            v: t[0].clone(),
            l: t[1].clone(),
            n: t[2].clone(),
            big_n: t[3].clone(),
        },
        Family::B => XParams {
            v: l.one(),
            l: t[0].clone(),
            n: t[1].clone(),
            big_n: t[2].clone(),
        },
        _ => XParams {
            v: l.zero(),
            l: t[0].clone(),
            n: l.one(),
            big_n: l.neg(&t[1]),
        },
    }
}

#[derive(Debug, Serialize)]
struct Line {
    params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<u64>,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    rejection: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dims: Option<[usize; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    commutative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem: Option<String>,
    /// Measured on a branch where theory gives only bounds.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    beyond_theory: bool,
    agreement: BTreeMap<&'static str, Agreement>,
    #[serde(skip)]
    codes: Vec<u64>,
}

fn evaluate(space: &Space, tw: &Tower, code: u64, weight: Option<u64>) -> Result<Line> {
    let codes = space.decode(code);
    let t = elements(space, tw, &codes);
    let l = tw.l();
    let built = match space.family {
        Family::Twisted => make_twisted(l, &t[0], tw.s()),
        Family::A => make_a(tw, &t[0], &t[1]),
        Family::C => make_c(tw, &t[0], &t[1]),
        Family::B => make_b(tw, &t[0], &t[1], &t[2]),
        _ => make_x(tw, &x_params(space, l, &t)),
    };
    let mut line = Line {
        params: params_of(space, tw.s(), &t),
        weight,
        valid: false,
        rejection: None,
        dims: None,
        commutative: None,
        theorem: None,
        beyond_theory: false,
        agreement: BTreeMap::new(),
        codes,
    };
    match built {
        Ok(pre) => {
            line.valid = true;
            line.agreement
                .insert("predicate_vs_certificate", Agreement::Match);
            classify(&mut line, tw, &pre);
        }
        Err(FamilyError::ZeroDivisor { x, y }) => {
            line.rejection = Some(format!("zero divisor {x} * {y}"));
            line.agreement
                .insert("predicate_vs_certificate", Agreement::Mismatch);
        }
        Err(e) if is_parameter_rejection(&e) => {
            let raw = match space.family {
                Family::Twisted => twisted_product(l, &t[0], tw.s()),
                Family::A => a_product(tw, &t[0], &t[1]),
                _ => x_product(l, tw.s(), &x_params(space, l, &t)),
            };
            let cert = verify_presemifield(&raw);
            line.agreement.insert(
                "predicate_vs_certificate",
                Agreement::of(cert != Certificate::Pass),
            );
            line.rejection = Some(e.to_string());
        }
        Err(e) => bail!("invalid parameters: {e}"),
    }
    Ok(line)
}

fn classify(line: &mut Line, tw: &Tower, pre: &Presemifield) {
    let sf = to_semifield(pre, 1).expect("nonzero identity");
    let lin = nuclei_linear(&sf);
    let dims = lin.dims();
    let commutative = ganley_presemifield(pre).is_some();
    line.dims = Some(dims);
    line.commutative = Some(commutative);
    line.agreement
        .insert("consistency", Agreement::of(lin.consistent()));
    match predict_nuclei(tw, pre.params()) {
        Ok(p) if p.theorem != "none" => {
            line.agreement
                .insert("prediction", Agreement::of(p.admits(dims)));
            line.agreement.insert(
                "criterion",
                Agreement::compare(p.commutative, Some(commutative)),
            );
            line.beyond_theory = matches!(p.middle, DimPrediction::Interval { .. });
            line.theorem = Some(p.theorem);
        }
        _ => {
            line.agreement
                .insert("prediction", Agreement::NotApplicable);
        }
    }
}

#[derive(Debug, Default, Serialize)]
struct Bucket {
    tuples: u64,
    orbits: u64,
}

pub fn census(a: &CensusArgs, f: Format) -> Result<Output> {
    let start = Instant::now();
    let family = Family::parse(&a.family)?;
    if a.p == 2 && matches!(family, Family::X | Family::B | Family::C) {
        bail!("family {family:?} needs odd characteristic");
    }
    let tw = Tower::new(a.p, a.m, a.s).map_err(|e| anyhow::anyhow!("{e}"))?;
    let space = Space::new(family, &tw)?;
    let reps = representatives(&space, &tw, a.reduce);
    let lines = Exec::current().map(&reps, |&(code, w)| {
        evaluate(&space, &tw, code, a.reduce.then_some(w))
    });
    let lines = lines.into_iter().collect::<Result<Vec<_>>>()?;

    let mut hist: BTreeMap<String, Bucket> = BTreeMap::new();
    let (mut tuples, mut valid, mut valid_orbits, mut mismatches, mut beyond) = (0, 0, 0, 0, 0);
    for (line, &(_, w)) in lines.iter().zip(&reps) {
        tuples += w;
        let key = if line.valid {
            valid += w;
            valid_orbits += 1;
            beyond += line.beyond_theory as u64;
            format!(
                "valid dims={:?} commutative={}",
                line.dims.unwrap(),
                line.commutative.unwrap()
            )
        } else {
            "invalid".to_string()
        };
        let b = hist.entry(key).or_default();
        b.tuples += w;
        b.orbits += 1;
        mismatches += line
            .agreement
            .values()
            .filter(|x| **x == Agreement::Mismatch)
            .count();
    }
    let mut notes = Vec::new();
    if beyond > 0 {
        notes.push(format!(
            "{beyond} middle nuclei measured on a branch where theory gives only bounds"
        ));
    }
    if family == Family::A && (a.p, a.m, a.s) == (2, 6, 2) {
        notes.push("isotopy of these instances to a twisted field is undecided".to_string());
    }
    let summary = json!({
        "summary": {
            "command": { "name": "census", "args": a },
            "tower": tw.record(),
            "reduced": a.reduce,
            "tuples": tuples,
            "orbits": reps.len(),
            "valid": valid,
            "valid_orbits": valid_orbits,
            "histogram": hist,
            "mismatches": mismatches,
            "notes": notes,
            "timing_ms": start.elapsed().as_secs_f64() * 1e3,
        }
    });

    let mut text = String::new();
    match f {
        Format::Json => {
            for line in &lines {
                text += &serde_json::to_string(line)?;
                text.push('\n');
            }
            text += &serde_json::to_string(&summary)?;
            text.push('\n');
        }
        Format::Csv => {
            text += &space.names.join(",");
            text += ",weight,valid,left,middle,right,center,commutative\n";
            for line in &lines {
                let idx: Vec<String> = line.codes.iter().map(u64::to_string).collect();
                let dims = line
                    .dims
                    .map(|d| d.map(|x| x.to_string()).join(","))
                    .unwrap_or(",,,".into());
                let comm = line.commutative.map(|c| c.to_string()).unwrap_or_default();
                text += &format!(
                    "{},{},{},{},{}\n",
                    idx.join(","),
                    line.weight.unwrap_or(1),
                    line.valid,
                    dims,
                    comm
                );
            }
        }
    }
    Ok(Output {
        text,
        mismatch: mismatches > 0,
    })
}
