//! Single-instance subcommands.

use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Value};

use semifield_core::families::{FamilyError, Presemifield};
use semifield_core::semifield::{
    classify_algebra, ganley_presemifield, ganley_semifield, nuclei_bruteforce, nuclei_linear,
    to_semifield, verify_presemifield, verify_table, Certificate, Semifield, BRUTE_FORCE_MAX_ORDER,
};
use semifield_core::theory::{predict_nuclei, Prediction};

use crate::instance::Setting;
use crate::report::{Agreement, Report};
use crate::{Format, InstanceArgs, Output};

fn echo(name: &str, a: &InstanceArgs) -> Value {
    json!({ "name": name, "args": a })
}

/// Instance provenance for reports.
pub fn instance_record(st: &Setting, pre: &Presemifield) -> Value {
    json!({
        "provenance": pre.provenance(),
        "tower": st.tower.record(),
        "order": pre.order(),
    })
}

/// Rejections by a family's defining conditions, as opposed to malformed input.
pub fn is_parameter_rejection(e: &FamilyError) -> bool {
    matches!(
        e,
        FamilyError::InvalidL
            | FamilyError::InvalidMu
            | FamilyError::PolynomialHasRoot
            | FamilyError::RInPowerSubgroup
            | FamilyError::ConditionViolated(_)
    )
}

fn prepare(a: &InstanceArgs) -> Result<(Setting, Presemifield)> {
    let st = Setting::from_args(a)?;
    let pre = st
        .build()?
        .map_err(|e| anyhow!("invalid parameters: {e}"))?;
    Ok((st, pre))
}

fn semifield(pre: &Presemifield, e: u64) -> Result<Semifield> {
    to_semifield(pre, e).map_err(|err| anyhow!("identity {e}: {err}"))
}

fn prediction(st: &Setting, pre: &Presemifield) -> Option<Prediction> {
    predict_nuclei(&st.tower, pre.params()).ok()
}

fn json_only(f: Format) -> Result<()> {
    if f == Format::Csv {
        bail!("--format csv applies to export and census only");
    }
    Ok(())
}

fn finish(mut r: Report, start: Instant) -> Result<Output> {
    r.finish(start);
    let mismatch = r.mismatch();
    Ok(Output {
        text: serde_json::to_string_pretty(&r)? + "\n",
        mismatch,
    })
}

pub fn construct(a: &InstanceArgs, f: Format) -> Result<Output> {
    json_only(f)?;
    let start = Instant::now();
    let (st, pre) = prepare(a)?;
    let mut r = Report::new(echo("construct", a));
    r.instance = Some(instance_record(&st, &pre));
    r.result("certificate", Certificate::Pass);
    finish(r, start)
}

pub fn verify(a: &InstanceArgs, f: Format) -> Result<Output> {
    json_only(f)?;
    let start = Instant::now();
    let st = Setting::from_args(a)?;
    let mut r = Report::new(echo("verify", a));
    let (predicate, built) = match st.build()? {
        Ok(pre) => (Some(true), Some(pre)),
        Err(FamilyError::ZeroDivisor { .. }) => (Some(true), None),
        Err(e) if is_parameter_rejection(&e) => {
            r.result("predicate_rejection", e.to_string());
            (Some(false), None)
        }
        Err(e) => bail!("invalid parameters: {e}"),
    };
    r.result("predicate_valid", predicate);
    if let Some(pre) = &built {
        r.instance = Some(instance_record(&st, pre));
    }
    let raw = match st.raw_product()? {
        Some(b) => Some(b),
        None => built.as_ref().map(|p| p.product().clone()),
    };
    let cert = raw.as_ref().map(verify_presemifield);
    r.result("certificate", cert);
    let has_raw = st.raw_product()?.is_some();
    r.agree(
        "predicate_vs_certificate",
        if has_raw {
            Agreement::compare(predicate, cert.map(|c| c == Certificate::Pass))
        } else {
            Agreement::NotApplicable
        },
    );
    let scan = raw
        .as_ref()
        .and_then(|b| b.table())
        .map(|t| verify_table(&t));
    r.result("table_scan", scan);
    r.agree(
        "rank_vs_table_scan",
        Agreement::compare(
            cert.map(|c| c == Certificate::Pass),
            scan.map(|c| c == Certificate::Pass),
        ),
    );
    finish(r, start)
}

pub fn nuclei(a: &InstanceArgs, f: Format) -> Result<Output> {
    json_only(f)?;
    let start = Instant::now();
    let (st, pre) = prepare(a)?;
    let sf = semifield(&pre, a.e.unwrap_or(1))?;
    let mut r = Report::new(echo("nuclei", a));
    r.instance = Some(instance_record(&st, &pre));
    let lin = nuclei_linear(&sf);
    r.result("linear", &lin);
    r.result("dims", lin.dims());
    r.agree("consistency", Agreement::of(lin.consistent()));
    if sf.order() <= BRUTE_FORCE_MAX_ORDER {
        let brute = nuclei_bruteforce(&sf).map_err(|e| anyhow!("{e}"))?;
        r.agree(
            "linear_vs_bruteforce",
            Agreement::of(brute.same_spaces(&lin)),
        );
        r.result("bruteforce_dims", brute.dims());
    } else {
        r.agree("linear_vs_bruteforce", Agreement::NotApplicable);
    }
    predicted_dims(&mut r, &st, &pre, lin.dims());
    finish(r, start)
}

fn predicted_dims(r: &mut Report, st: &Setting, pre: &Presemifield, dims: [usize; 4]) {
    match prediction(st, pre) {
        Some(p) if p.theorem != "none" => {
            r.agree("prediction", Agreement::of(p.admits(dims)));
            r.result("prediction", &p);
        }
        other => {
            r.agree("prediction", Agreement::NotApplicable);
            r.result("prediction", other);
        }
    }
}

fn ganley_block(r: &mut Report, st: &Setting, pre: &Presemifield, sf: &Semifield) {
    let on_semifield = ganley_semifield(sf);
    let on_pre = ganley_presemifield(pre);
    r.result("ganley_semifield", on_semifield);
    r.result("ganley_presemifield", on_pre);
    r.result("commutative", on_pre.is_some());
    r.agree(
        "semifield_vs_presemifield",
        Agreement::of(on_semifield.is_some() == on_pre.is_some()),
    );
    let criterion = prediction(st, pre).and_then(|p| p.commutative);
    r.result("criterion", criterion);
    r.agree(
        "criterion",
        Agreement::compare(criterion, Some(on_pre.is_some())),
    );
}

pub fn ganley(a: &InstanceArgs, f: Format) -> Result<Output> {
    json_only(f)?;
    let start = Instant::now();
    let (st, pre) = prepare(a)?;
    let sf = semifield(&pre, a.e.unwrap_or(1))?;
    let mut r = Report::new(echo("ganley", a));
    r.instance = Some(instance_record(&st, &pre));
    r.result("algebra", classify_algebra(&sf));
    ganley_block(&mut r, &st, &pre, &sf);
    finish(r, start)
}

pub fn predict(a: &InstanceArgs, f: Format) -> Result<Output> {
    json_only(f)?;
    let start = Instant::now();
    let (st, pre) = prepare(a)?;
    let sf = semifield(&pre, a.e.unwrap_or(1))?;
    let mut r = Report::new(echo("predict", a));
    r.instance = Some(instance_record(&st, &pre));
    let dims = nuclei_linear(&sf).dims();
    r.result("measured_dims", dims);
    predicted_dims(&mut r, &st, &pre, dims);
    ganley_block(&mut r, &st, &pre, &sf);
    finish(r, start)
}

pub fn export(a: &InstanceArgs, f: Format) -> Result<Output> {
    let (st, pre) = prepare(a)?;
    let owned;
    let table = match a.e {
        None => pre.table(),
        Some(e) => {
            owned = semifield(&pre, e)?;
            owned.table()
        }
    };
    let table = table.ok_or_else(|| anyhow!("order {} is too large to tabulate", pre.order()))?;
    let text = match f {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let v = json!({
                "command": echo("export", a),
                "instance": instance_record(&st, &pre),
                "identity": a.e,
                "table": table,
            });
            serde_json::to_string(&v)? + "\n"
        }
    };
    Ok(Output {
        text,
        mismatch: false,
    })
}
