//! The four batch commands and their reports.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use sdclab::artinian::{extension_tower, CoefficientRing, TensorElement};
use sdclab::dgla::{Dgla, GaugeOutcome};
use sdclab::exactlin::{scalar_to_string, Scalar};
use sdclab::fixtures::{bidual_numbers, t_cubed, two_variable_cube};
use sdclab::sample::rng;
use sdclab::sdc::{check_exp_structure, check_sdc, check_sdc_on, is_mc, sdc_cohomology, sdc_obstruction, Sdc};
use sdclab::translate::roundtrip_report;
use sdclab::Error;

use crate::document::{element, index_labels, Document, ElementDoc};

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or inconsistent input: exit status 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type Outcome = std::result::Result<RunReport, Failure>;

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub kind: String,
    pub input_digest: String,
    pub seed: u64,
    pub cap: usize,
    pub passed: bool,
    pub results: Value,
}

pub struct Inputs {
    pub doc: Document,
    pub ring: Option<Arc<CoefficientRing>>,
    pub element: Option<ElementDoc>,
    pub digest: String,
    pub cap: usize,
    pub seed: u64,
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(scalar_to_string).collect()
}

fn report(cmd: &str, inputs: &Inputs, passed: bool, results: Value) -> RunReport {
    RunReport {
        command: cmd.into(),
        kind: inputs.doc.kind().into(),
        input_digest: inputs.digest.clone(),
        seed: inputs.seed,
        cap: inputs.cap,
        passed,
        results,
    }
}

fn unsupported(cmd: &str, doc: &Document) -> Failure {
    Failure::Input(format!("`{cmd}` does not accept a {} document", doc.kind()))
}

/// Structural failures found while assembling an object are findings, not
/// input errors.
fn is_violation(e: &Error) -> bool {
    matches!(e, Error::InvalidStructure(_) | Error::Precondition(_) | Error::NotAComplex(_))
}

fn violations_report(cmd: &str, inputs: &Inputs, v: Vec<String>) -> RunReport {
    report(cmd, inputs, v.is_empty(), json!({ "violations": v }))
}

pub fn check(inputs: &Inputs) -> Outcome {
    let cmd = "check";
    let v: Vec<String> = match &inputs.doc {
        Document::Ring(spec) => spec.build()?.check().iter().map(|x| format!("{x:?}")).collect(),
        Document::Dgla(d) => d.build()?.check().violations.iter().map(ToString::to_string).collect(),
        Document::Algebra(a) => a.build()?.check().iter().map(ToString::to_string).collect(),
        Document::Coalgebra(c) => c.build()?.check().iter().map(ToString::to_string).collect(),
        Document::Expsdc(d) => {
            let e = match d.build(inputs.cap) {
                Ok(e) => e,
                Err(e) if is_violation(&e) => return Ok(violations_report(cmd, inputs, vec![e.to_string()])),
                Err(e) => return Err(e.into()),
            };
            let rings = [t_cubed(), two_variable_cube()];
            let mut out: Vec<String> = check_sdc(&e, &rings, 2, &mut rng(inputs.seed))?
                .violations
                .iter()
                .map(ToString::to_string)
                .collect();
            out.extend(check_exp_structure(&e).iter().map(ToString::to_string));
            out
        }
        Document::ModuleProblem(d) => {
            let s = match d.build(inputs.cap) {
                Ok(s) => s,
                Err(e) if is_violation(&e) => return Ok(violations_report(cmd, inputs, vec![e.to_string()])),
                Err(e) => return Err(e.into()),
            };
            let ring = bidual_numbers();
            let elements: Vec<Vec<TensorElement>> = (0..=s.cap())
                .map(|n| {
                    let d = s.level_dim(n);
                    let mut out = vec![s.identity(n, &ring)];
                    for k in 0..d.min(6) {
                        let mut v = vec![Scalar::from_integer(0.into()); d];
                        v[k] = Scalar::from_integer(1.into());
                        out.push(TensorElement::pure(&ring, &v, 0));
                        out.push(TensorElement::pure(&ring, &v, 1));
                    }
                    out
                })
                .collect();
            check_sdc_on(&s, &elements)?.violations.iter().map(ToString::to_string).collect()
        }
        doc @ Document::Element(_) => return Err(unsupported(cmd, doc)),
    };
    Ok(violations_report(cmd, inputs, v))
}

fn sdc_table<S: Sdc + ?Sized>(s: &S) -> Result<Vec<Value>, Failure> {
    let mut rows = Vec::new();
    for i in 0..s.cap() {
        rows.push(json!({ "degree": i, "dim": sdc_cohomology(s, i)? }));
    }
    Ok(rows)
}

pub fn cohomology(inputs: &Inputs) -> Outcome {
    let cmd = "cohomology";
    let rows = match &inputs.doc {
        Document::Dgla(d) => {
            let l = d.build()?;
            let mut rows = Vec::new();
            for i in 0..=l.top_degree() {
                rows.push(json!({ "degree": i, "dim": l.cohomology(i)?.dim }));
            }
            rows
        }
        Document::Expsdc(d) => sdc_table(&d.build(inputs.cap)?)?,
        Document::ModuleProblem(d) => sdc_table(&d.build(inputs.cap)?)?,
        doc => return Err(unsupported(cmd, doc)),
    };
    Ok(report(cmd, inputs, true, json!({ "cohomology": rows })))
}

/// `x` reduced to the quotient of `tower[k]`.
fn reduce_to(tower: &[sdclab::artinian::SmallExtensionStep], k: usize, x: &TensorElement) -> sdclab::Result<TensorElement> {
    (k..tower.len()).rev().try_fold(x.clone(), |acc, j| acc.reduce(&tower[j].projection))
}

/// One entry per tower step: is the reduction MC over the quotient, and
/// what obstructs lifting it.
fn deform_stages(
    tower: &[sdclab::artinian::SmallExtensionStep],
    x: &TensorElement,
    is_mc_at: &dyn Fn(&TensorElement) -> sdclab::Result<bool>,
    class_at: &dyn Fn(usize, &TensorElement) -> sdclab::Result<(bool, Vec<Scalar>)>,
) -> sdclab::Result<(Vec<Value>, Option<usize>)> {
    let mut stages = Vec::new();
    let mut obstructed = None;
    for k in 0..tower.len() {
        let q = reduce_to(tower, k, x)?;
        let stage = k + 1;
        let total_labels = tower[k].total.labels().to_vec();
        if !is_mc_at(&q)? {
            stages.push(json!({ "stage": stage, "ring": total_labels, "quotient_mc": false }));
            break;
        }
        let (zero, class) = class_at(k, &q)?;
        if !zero && obstructed.is_none() {
            obstructed = Some(stage);
        }
        let lifted = reduce_to(tower, k + 1, x)?;
        stages.push(json!({
            "stage": stage,
            "ring": total_labels,
            "quotient_mc": true,
            "obstruction_zero": zero,
            "class": strings(&class),
            "given_lift_mc": is_mc_at(&lifted)?,
        }));
    }
    Ok((stages, obstructed))
}

pub fn deform(inputs: &Inputs) -> Outcome {
    let cmd = "deform";
    let ring = inputs
        .ring
        .clone()
        .ok_or_else(|| Failure::Input("deform needs --ring".into()))?;
    let el = inputs
        .element
        .as_ref()
        .ok_or_else(|| Failure::Input("deform needs --element".into()))?;
    let tower = extension_tower(&ring);
    let (stages, obstructed, mc, extra) = match &inputs.doc {
        Document::Dgla(d) => {
            let l: Dgla = d.build()?;
            let x = element(&el.coords, l.labels(1), &ring)?;
            let (stages, obstructed) = deform_stages(
                &tower,
                &x,
                &|y| l.is_mc(y),
                &|k, y| {
                    let c = l.obstruction_class(&tower[k], y)?;
                    Ok((c.is_zero, c.class))
                },
            )?;
            let mut extra = json!({ "residual": residual_strings(&l.mc_residual(&x)?) });
            if let Some(t) = &el.target {
                let y = element(t, l.labels(1), &ring)?;
                let outcome = if !(l.is_mc(&x)? && l.is_mc(&y)?) {
                    json!({ "equivalent": null, "reason": "both elements must be Maurer-Cartan" })
                } else {
                    match l.find_gauge(&x, &y)? {
                    GaugeOutcome::Found(a) => json!({ "equivalent": true, "gauge": residual_strings(&a) }),
                    GaugeOutcome::NotEquivalent { stage, .. } => json!({ "equivalent": false, "stage": stage + 1 }),
                    GaugeOutcome::Undetermined { stage, .. } => json!({ "equivalent": null, "stage": stage + 1 }),
                    }
                };
                extra["gauge_search"] = outcome;
            }
            (stages, obstructed, l.is_mc(&x)?, extra)
        }
        Document::Expsdc(d) => {
            let e = d.build(inputs.cap)?;
            sdc_deform(&e, &tower, &el.coords, &ring)?
        }
        Document::ModuleProblem(d) => {
            let s = d.build(inputs.cap)?;
            sdc_deform(&s, &tower, &el.coords, &ring)?
        }
        doc => return Err(unsupported(cmd, doc)),
    };
    let summary = match obstructed {
        Some(k) => format!("obstructed at stage {k}"),
        None => match stages.last() {
            Some(last) if last["quotient_mc"] == false => {
                format!("not Maurer-Cartan over the quotient at stage {}", last["stage"])
            }
            _ => "lifts at every stage".to_string(),
        },
    };
    let mut results = json!({
        "element_mc": mc,
        "stages": stages,
        "summary": summary,
    });
    if let Value::Object(extra) = extra {
        for (k, v) in extra {
            results[k] = v;
        }
    }
    Ok(report(cmd, inputs, true, results))
}

fn residual_strings(t: &TensorElement) -> Vec<Vec<String>> {
    (0..t.dim()).map(|i| strings(t.coords().row(i))).collect()
}

type DeformParts = (Vec<Value>, Option<usize>, bool, Value);

fn sdc_deform<S: Sdc + ?Sized>(
    s: &S,
    tower: &[sdclab::artinian::SmallExtensionStep],
    coords: &std::collections::BTreeMap<String, std::collections::BTreeMap<String, crate::document::Rat>>,
    ring: &Arc<CoefficientRing>,
) -> Result<DeformParts, Failure> {
    let x = element(coords, &index_labels(s, 1), ring)?;
    let (stages, obstructed) = deform_stages(
        tower,
        &x,
        &|y| is_mc(s, y),
        &|k, y| {
            let c = sdc_obstruction(s, &tower[k], y)?;
            Ok((c.is_zero, c.class))
        },
    )?;
    Ok((stages, obstructed, is_mc(s, &x)?, json!({})))
}

pub fn translate(inputs: &Inputs) -> Outcome {
    let cmd = "translate";
    let Document::Dgla(d) = &inputs.doc else {
        return Err(unsupported(cmd, &inputs.doc));
    };
    let l = d.build()?;
    let v: Vec<String> = l.check().violations.iter().map(ToString::to_string).collect();
    if !v.is_empty() {
        return Ok(violations_report(cmd, inputs, v));
    }
    let rings = vec![("t^3".to_string(), t_cubed()), ("(s,t)^3".to_string(), two_variable_cube())];
    let r = roundtrip_report(&l, inputs.cap, &rings, inputs.seed)?;
    let passed = r.consistent;
    Ok(report(cmd, inputs, passed, serde_json::to_value(r).expect("serializable")))
}

/// Plain-text rendering: one `path = value` line per leaf.
pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let head = serde_json::to_value(r).expect("serializable");
    flatten("", &head, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => {
            out.push_str(&format!("{prefix} = {other}\n"));
        }
    }
}
