//! Job files, built-in examples, and the JSON and text reports of every
//! command.
//!
//! A job is `{"kind": ..., "payload": {...}}`. Every kind accepts its input
//! as a weight matrix (`weights`, optionally with a `section`) or as an
//! explicit `presentation`; see `schema/ahtorus.schema.json` at the
//! repository root.

pub mod builtins;
pub mod input;

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{self, presentation_bounded};
use crate::classification::{self, Outcome};
use crate::fixed_points::{self, FixedLocusDim};
use crate::lattice::{cokernel_map, IntMatrix};
use crate::poly::Poly;
use crate::presentation::{normalized_sequence, AHPresentation, Base};
use crate::serial::fmt_int_vec;

pub use builtins::{builtin, builtin_examples, builtin_names, Builtin};
pub use input::{JobKind, JobSpec};

use input::*;

/// Version of the job and report format.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("schema error at {pointer:?}: {message}")]
    Schema { pointer: String, message: String },
    #[error("unknown example {0:?}")]
    NotFound(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Schema { .. } | CliError::NotFound(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        let family = match self {
            CliError::Io(_) => "io",
            CliError::Schema { .. } => "schema",
            CliError::NotFound(_) => "not_found",
            CliError::Precondition(_) => "precondition",
        };
        let mut v = json!({ "error": family, "message": self.to_string() });
        if let CliError::Schema { pointer, .. } = self {
            v["pointer"] = json!(pointer);
        }
        v
    }
}

/// Exit status when a classification ends undecided.
pub const EXIT_UNDECIDED: i32 = 4;

/// Output of one job: the JSON document and a text rendering of it.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub undecided: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.undecided {
            EXIT_UNDECIDED
        } else {
            0
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

fn pointer_of(path: &serde_path_to_error::Path, prefix: &str) -> String {
    use serde_path_to_error::Segment;
    let mut out = prefix.to_string();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => write!(out, "/{index}").unwrap(),
            Segment::Map { key } => write!(out, "/{}", key.replace('~', "~0").replace('/', "~1")).unwrap(),
            Segment::Enum { variant } => write!(out, "/{variant}").unwrap(),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

fn typed<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| CliError::Schema {
        pointer: pointer_of(e.path(), prefix),
        message: e.inner().to_string(),
    })
}

fn json_text(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Schema { pointer: String::new(), message: e.to_string() })
}

/// Parse a complete job file.
pub fn parse_job(text: &str) -> Result<JobSpec, CliError> {
    typed(json_text(text)?, "")
}

/// A job of the given kind whose payload is `text` (empty means `{}`).
pub fn job_from_payload(kind: JobKind, text: &str) -> Result<JobSpec, CliError> {
    let payload = if text.trim().is_empty() { json!({}) } else { json_text(text)? };
    if !payload.is_object() {
        return Err(CliError::Schema { pointer: "/payload".into(), message: "payload must be an object".into() });
    }
    Ok(JobSpec { kind, payload })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library values serialize")
}

fn precondition(e: impl std::fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

/// Run one job.
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    let payload = job.payload.clone();
    let (mut json, text, undecided) = match job.kind {
        JobKind::Present => present(typed(payload, "/payload")?)?,
        JobKind::Evaluate => evaluate(typed(payload, "/payload")?)?,
        JobKind::FixedPoints => fixed_points_job(typed(payload, "/payload")?)?,
        JobKind::Invariants => invariants(typed(payload, "/payload")?)?,
        JobKind::Classify => classify_job(typed(payload, "/payload")?)?,
        JobKind::Example => {
            let p: ExamplePayload = typed(payload, "/payload")?;
            example(&builtin(&p.name.ok_or_else(|| missing("name"))?)?)?
        }
    };
    let obj = json.as_object_mut().expect("reports are objects");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("kind".into(), json!(job.kind.name()));
    Ok(Report { json, text, undecided })
}

type Out = (Value, String, bool);

fn surface_line(p: &AHPresentation) -> String {
    match &p.base {
        Base::Toric { info, fan } => {
            let rays: Vec<String> = fan.rays().iter().map(|r| fmt_int_vec(r)).collect();
            format!("Y = {} (rays {})", info.describe(), rays.join(", "))
        }
        Base::Plane { curves } => {
            let cs: Vec<String> = curves.iter().map(|(n, f)| format!("{n}: {f} = 0")).collect();
            format!("Y = A^2 with curves {}", cs.join(", "))
        }
    }
}

fn presentation_text(p: &AHPresentation) -> String {
    let mut t = String::new();
    if let Some(seq) = &p.sequence {
        writeln!(t, "P = {}", matrix_text(&seq.cokernel)).unwrap();
        writeln!(t, "s = {}", matrix_text(&seq.section)).unwrap();
    }
    writeln!(t, "{}", surface_line(p)).unwrap();
    writeln!(t, "D = {}", p.formal_sum()).unwrap();
    t
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| fmt_int_vec(r)).collect();
    format!("[{}]", rows.join(", "))
}

fn present(p: PresentPayload) -> Result<Out, CliError> {
    let (pres, _) = resolve(&p.weights, &p.section, &p.presentation)?;
    let json = json!({ "presentation": to_value(&pres), "formal_sum": pres.formal_sum() });
    Ok((json, presentation_text(&pres), false))
}

fn evaluate(p: EvaluatePayload) -> Result<Out, CliError> {
    let (pres, _) = resolve(&p.weights, &p.section, &p.presentation)?;
    let u = int_vec(&p.u.ok_or_else(|| missing("u"))?);
    let d = algebra::evaluate(&pres, &u).map_err(precondition)?;
    let (sections, line) = match &pres.base {
        Base::Plane { .. } => {
            let g = algebra::graded_piece(&pres, &u).map_err(precondition)?;
            let line = format!("A_u = C[u,v] * {}", g.generator());
            (to_value(&g), line)
        }
        Base::Toric { .. } => {
            let s = algebra::sections_toric(&pres, &u).map_err(precondition)?;
            let parts: Vec<String> =
                s.bounds.iter().map(|(r, b)| format!("<w,{}> >= {b}", fmt_int_vec(r))).collect();
            (to_value(&s), format!("A_u spanned by chi^w with {}", parts.join(", ")))
        }
    };
    let json = json!({ "u": u.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "divisor": to_value(&d), "sections": sections });
    let text = format!("D({}) = {d}\n{line}\n", fmt_int_vec(&u));
    Ok((json, text, false))
}

fn dim_text(d: FixedLocusDim) -> String {
    match d {
        FixedLocusDim::NotComputed => "not computed".into(),
        FixedLocusDim::Empty => "empty".into(),
        FixedLocusDim::Dim(d) => d.to_string(),
    }
}

fn fixed_points_job(p: FixedPointsPayload) -> Result<Out, CliError> {
    let (pres, f) = resolve(&p.weights, &p.section, &p.presentation)?;
    let oracle = |ell: &[num_bigint::BigInt]| -> Result<Option<Vec<usize>>, CliError> {
        f.as_ref()
            .map(|f| fixed_points::oracle_fixed_points_linear(f, ell))
            .transpose()
            .map_err(precondition)
    };
    let mut text = String::new();
    let entry = |r: &fixed_points::FixedLocusReport, o: Option<Vec<usize>>, text: &mut String| {
        let labels: Vec<String> = r.fixed_labels.iter().map(|l| l.to_string()).collect();
        writeln!(
            text,
            "l = {}: fixed over [{}], fixed locus dimension {}{}",
            fmt_int_vec(&r.direction),
            labels.join(", "),
            dim_text(r.fixed_locus_dim),
            o.as_ref().map_or(String::new(), |s| format!(", surviving coordinates {s:?}"))
        )
        .unwrap();
        let mut v = to_value(r);
        v["oracle_coordinates"] = to_value(&o);
        v
    };
    let json = match (&p.direction, p.height) {
        (Some(_), Some(_)) => {
            return Err(CliError::Schema {
                pointer: "/payload".into(),
                message: "give either `direction` or `height`".into(),
            })
        }
        (Some(d), None) => {
            let r = fixed_points::fixed_components(&pres, &int_vec(d)).map_err(precondition)?;
            let o = oracle(&r.direction)?;
            json!({ "reports": [entry(&r, o, &mut text)] })
        }
        (None, h) => {
            let s = fixed_points::fixed_locus_survey(&pres, h.unwrap_or(1)).map_err(precondition)?;
            let mut reports = Vec::new();
            for r in &s.reports {
                reports.push(entry(r, oracle(&r.direction)?, &mut text));
            }
            writeln!(text, "fixed divisors all lie over the origin: {}", s.fixed_labels_meet_over_origin).unwrap();
            json!({
                "height": s.height,
                "reports": reports,
                "fixed_labels_meet_over_origin": s.fixed_labels_meet_over_origin,
            })
        }
    };
    Ok((json, text, false))
}

fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn invariants(p: InvariantsPayload) -> Result<Out, CliError> {
    let f = matrix(p.weights.as_ref().ok_or_else(|| missing("weights"))?, "weights")?;
    let vars = p.variables.clone().unwrap_or_else(|| default_vars(f.nrows()));
    if vars.len() != f.nrows() {
        return Err(CliError::Schema {
            pointer: "/payload/variables".into(),
            message: format!("{} names for {} coordinates", vars.len(), f.nrows()),
        });
    }
    let mut json = json!({ "variables": vars });
    let mut text = String::new();
    if let Some(bound) = p.bound {
        let r = algebra::invariant_ring_generators(&f, bound).map_err(precondition)?;
        let monos = r.monomials(&vars);
        writeln!(text, "invariant monomials up to degree {bound}: {}", monos.join(", ")).unwrap();
        writeln!(text, "status: {}", serde_json::to_string(&r.status).unwrap().trim_matches('"')).unwrap();
        json["invariants"] = to_value(&r);
        json["monomials"] = json!(monos);
    }
    if let Some(g) = &p.hypersurface {
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let poly = Poly::parse(g, &names).map_err(|e| CliError::Schema {
            pointer: "/payload/hypersurface".into(),
            message: e.to_string(),
        })?;
        let w = algebra::check_equivariant_hypersurface(&f, &poly).map_err(precondition)?;
        writeln!(text, "{poly} = 0 is stable, weight {}", fmt_int_vec(&w)).unwrap();
        json["hypersurface"] = json!({
            "polynomial": poly.to_string(),
            "weight": w.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        });
    }
    if p.bound.is_none() && p.hypersurface.is_none() {
        return Err(missing("bound"));
    }
    Ok((json, text, false))
}

fn classify_job(p: ClassifyPayload) -> Result<Out, CliError> {
    let (pres, f) = resolve(&p.weights, &p.section, &p.presentation)?;
    let curves = p.curves.iter().enumerate().map(|(i, c)| curve_spec(c, i)).collect::<Result<Vec<_>, _>>()?;
    let mu = p.mu.as_ref().map(mu_action).transpose()?;
    let r = classification::classify(&pres, f.as_ref(), &curves, mu.as_ref()).map_err(precondition)?;
    let mut text = String::new();
    writeln!(text, "{}", surface_line(&pres)).unwrap();
    writeln!(text, "D = {}", pres.formal_sum()).unwrap();
    if let Some(s) = &r.snc {
        let pts: Vec<String> = s.points.iter().map(|p| crate::serial::fmt_q_vec(&p.point)).collect();
        writeln!(text, "curves meet at {}; transverse: {:?}", pts.join(", "), s.all_transverse).unwrap();
    }
    writeln!(text, "affine lines: {:?}", r.affine_lines).unwrap();
    if let Some(s) = &r.product_split {
        writeln!(text, "product split: {:?} x {:?}", s.first, s.second).unwrap();
    }
    for n in &r.verdict.evidence.notes {
        writeln!(text, "{n}").unwrap();
    }
    writeln!(text, "outcome: {:?}", r.outcome).unwrap();
    let undecided = r.outcome == Outcome::Undecided;
    Ok((json!({ "report": to_value(&r) }), text, undecided))
}

/// Report of a built-in example: its data and the presentation, invariants
/// or classification it leads to.
pub fn example(b: &Builtin) -> Result<Out, CliError> {
    let rows = |m: &IntMatrix| to_value(m);
    let mut json = json!({ "name": b.name, "description": b.description });
    let mut text = format!("{}: {}\n", b.name, b.description);
    if let Some(f) = &b.weights {
        let p = match normalized_sequence(f) {
            Ok(seq) => seq.cokernel,
            Err(_) => cokernel_map(f).map_err(precondition)?,
        };
        writeln!(text, "F = {}", matrix_text(f)).unwrap();
        writeln!(text, "P = {}", matrix_text(&p)).unwrap();
        json["weights"] = rows(f);
        json["cokernel"] = rows(&p);
        if let Some(d) = &b.displayed_cokernel {
            let same = d.same_row_lattice(&p);
            writeln!(text, "same row lattice as {}: {same}", matrix_text(d)).unwrap();
            json["displayed_cokernel"] = rows(d);
            json["cokernel_matches_display"] = json!(same);
        }
    }
    if let Some(spec) = &b.presentation {
        let pres = presentation_from_spec(spec)?;
        let alg = algebra_report(&pres, 2)?;
        let rels = |v: &Value| v["relations"].as_array().cloned().unwrap_or_default();
        writeln!(text, "relations: {:?}", rels(&alg["presentation"])).unwrap();
        if alg.get("eliminated_u").is_some() {
            writeln!(text, "after eliminating u: {:?}", rels(&alg["eliminated_u"])).unwrap();
        }
        json["algebra"] = alg;
    }
    let (inner, inner_text, undecided) = run_inner(&b.job())?;
    text.push_str(&inner_text);
    json["result"] = inner;
    Ok((json, text, undecided))
}

fn run_inner(job: &JobSpec) -> Result<Out, CliError> {
    let r = run(job)?;
    Ok((r.json, r.text, r.undecided))
}

/// Generators and relations of the algebra of a plane presentation, with
/// the first base variable eliminated when possible.
pub fn algebra_report(pres: &AHPresentation, bound: u32) -> Result<Value, CliError> {
    let alg = presentation_bounded(pres, bound).map_err(precondition)?;
    let mut v = json!({ "presentation": to_value(&alg) });
    if let Ok(e) = alg.eliminate("u") {
        v["eliminated_u"] = to_value(&e);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_errors_carry_pointers() {
        let job = parse_job(r#"{"kind":"present","payload":{"weights":[[1,0],["x",0]]}}"#).unwrap();
        match run(&job) {
            Err(CliError::Schema { pointer, .. }) => assert_eq!(pointer, "/payload/weights/1/0"),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_job(r#"{"kind":"nope"}"#).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let ragged = job_from_payload(JobKind::Present, r#"{"weights":[[1,0],[1]]}"#).unwrap();
        match run(&ragged) {
            Err(CliError::Schema { pointer, .. }) => assert_eq!(pointer, "/payload/weights/1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn preconditions() {
        let job = job_from_payload(JobKind::Present, r#"{"weights":[[1],[1]]}"#).unwrap();
        let e = run(&job).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("not fully hyperbolic"));
        assert_eq!(builtin("example-99").unwrap_err(), CliError::NotFound("example-99".into()));
    }

    #[test]
    fn example_jobs_run() {
        for b in builtin_examples() {
            let (json, _, _) = example(&b).unwrap();
            if b.displayed_cokernel.is_some() {
                assert_eq!(json["cokernel_matches_display"], json!(true), "{}", b.name);
            }
        }
    }
}
