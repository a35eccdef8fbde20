//! Payload types of the job file and their conversion to library values.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::CliError;
use crate::classification::{CurveSpec, MuAction};
use crate::lattice::IntMatrix;
use crate::poly::{parse_plane, Poly};
use crate::polyhedra::Polyhedron;
use crate::presentation::{self, AHPresentation};
use crate::serial::{JsonInt, JsonQ};

pub type JsonMatrix = Vec<Vec<JsonInt>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JobKind {
    Present,
    Evaluate,
    FixedPoints,
    Invariants,
    Classify,
    Example,
}

impl JobKind {
    pub fn name(self) -> &'static str {
        match self {
            JobKind::Present => "present",
            JobKind::Evaluate => "evaluate",
            JobKind::FixedPoints => "fixed-points",
            JobKind::Invariants => "invariants",
            JobKind::Classify => "classify",
            JobKind::Example => "example",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub kind: JobKind,
    #[serde(default = "empty_object")]
    pub payload: Value,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

/// One term of a hand-written presentation: either a fan ray or a named
/// plane curve, with the coefficient given by vertices and rays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray: Option<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    pub vertices: Vec<Vec<JsonQ>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<Vec<JsonQ>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSpec {
    pub rank: usize,
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveInput {
    pub f: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuInput {
    pub k: u64,
    pub weights: [i64; 2],
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentPayload {
    pub weights: Option<JsonMatrix>,
    pub section: Option<JsonMatrix>,
    pub presentation: Option<PresentationSpec>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluatePayload {
    pub weights: Option<JsonMatrix>,
    pub section: Option<JsonMatrix>,
    pub presentation: Option<PresentationSpec>,
    pub u: Option<Vec<JsonInt>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPointsPayload {
    pub weights: Option<JsonMatrix>,
    pub section: Option<JsonMatrix>,
    pub presentation: Option<PresentationSpec>,
    pub height: Option<u32>,
    pub direction: Option<Vec<JsonInt>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsPayload {
    pub weights: Option<JsonMatrix>,
    pub bound: Option<u32>,
    pub variables: Option<Vec<String>>,
    pub hypersurface: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyPayload {
    pub weights: Option<JsonMatrix>,
    pub section: Option<JsonMatrix>,
    pub presentation: Option<PresentationSpec>,
    #[serde(default)]
    pub curves: Vec<CurveInput>,
    pub mu: Option<MuInput>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExamplePayload {
    pub name: Option<String>,
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema { pointer: pointer.into(), message: message.into() }
}

pub fn missing(field: &str) -> CliError {
    schema("/payload", format!("missing field `{field}`"))
}

pub fn matrix(rows: &JsonMatrix, field: &str) -> Result<IntMatrix, CliError> {
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || ncols == 0 {
        return Err(schema(format!("/payload/{field}"), "matrix needs at least one row and one column"));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(schema(
                format!("/payload/{field}/{i}"),
                format!("row has {} entries, expected {ncols}", r.len()),
            ));
        }
    }
    let data = rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
    IntMatrix::from_rows(data, ncols).map_err(|e| schema(format!("/payload/{field}"), e.to_string()))
}

pub fn int_vec(v: &[JsonInt]) -> Vec<num_bigint::BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn plane_poly(text: &str, pointer: &str) -> Result<Poly, CliError> {
    parse_plane(text).map_err(|e| schema(pointer, e.to_string()))
}

fn coefficient(rank: usize, t: &TermSpec, pointer: &str) -> Result<Polyhedron, CliError> {
    let qv = |v: &Vec<JsonQ>| v.iter().map(|x| x.0.clone()).collect::<Vec<_>>();
    let verts: Vec<_> = t.vertices.iter().map(qv).collect();
    let rays: Vec<_> = t.rays.iter().map(qv).collect();
    if verts.iter().chain(&rays).any(|v| v.len() != rank) {
        return Err(schema(pointer, format!("every vertex and ray needs {rank} coordinates")));
    }
    Polyhedron::from_generators(rank, &verts, &rays).map_err(|e| schema(pointer, e.to_string()))
}

pub fn presentation_from_spec(spec: &PresentationSpec) -> Result<AHPresentation, CliError> {
    let toric = spec.terms.iter().all(|t| t.ray.is_some());
    let plane = spec.terms.iter().all(|t| t.name.is_some() && t.f.is_some());
    if spec.terms.is_empty() || toric == plane {
        return Err(schema(
            "/payload/presentation/terms",
            "terms must all carry a `ray`, or all carry a curve `name` and `f`",
        ));
    }
    let mut toric_terms = Vec::new();
    let mut plane_terms = Vec::new();
    for (i, t) in spec.terms.iter().enumerate() {
        let ptr = format!("/payload/presentation/terms/{i}");
        let c = coefficient(spec.rank, t, &ptr)?;
        match (&t.ray, &t.name, &t.f) {
            (Some(r), _, _) => toric_terms.push((int_vec(r), c)),
            (None, Some(n), Some(f)) => plane_terms.push((n.clone(), plane_poly(f, &format!("{ptr}/f"))?, c)),
            _ => unreachable!("shape checked above"),
        }
    }
    let pres = if toric {
        AHPresentation::toric(spec.rank, toric_terms)
    } else {
        AHPresentation::plane(spec.rank, plane_terms)
    };
    pres.map_err(|e| CliError::Precondition(e.to_string()))
}

/// The presentation named by a payload: from `weights` (and an optional
/// `section`) or from an explicit `presentation`.
pub fn resolve(
    weights: &Option<JsonMatrix>,
    section: &Option<JsonMatrix>,
    presentation: &Option<PresentationSpec>,
) -> Result<(AHPresentation, Option<IntMatrix>), CliError> {
    match (weights, presentation) {
        (Some(_), Some(_)) => Err(schema("/payload", "give either `weights` or `presentation`, not both")),
        (Some(w), None) => {
            let f = matrix(w, "weights")?;
            let pres = match section {
                Some(s) => presentation::ah_presentation_with_section(&f, &matrix(s, "section")?),
                None => presentation::ah_presentation(&f),
            }
            .map_err(|e| CliError::Precondition(e.to_string()))?;
            Ok((pres, Some(f)))
        }
        (None, Some(p)) => {
            if section.is_some() {
                return Err(schema("/payload/section", "a section only applies to `weights`"));
            }
            Ok((presentation_from_spec(p)?, None))
        }
        (None, None) => Err(missing("weights")),
    }
}

pub fn curve_spec(c: &CurveInput, index: usize) -> Result<CurveSpec, CliError> {
    let ptr = format!("/payload/curves/{index}");
    let param = c.param.as_ref().map(|[p, q]| (p.as_str(), q.as_str()));
    CurveSpec::parse(&c.f, param).map_err(|e| match e {
        crate::classification::ClassifyError::Parse(p) => schema(ptr, p.to_string()),
        other => CliError::Precondition(other.to_string()),
    })
}

pub fn mu_action(m: &MuInput) -> Result<MuAction, CliError> {
    MuAction::new(m.k, m.weights[0], m.weights[1]).map_err(|e| schema("/payload/mu/k", e.to_string()))
}
