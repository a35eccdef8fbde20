//! Checks on the quotient data of a complexity-two action: crossings of the
//! two branch curves, invariance under a cyclic group, affine-line
//! parametrizations, splitting of the cokernel matrix into two blocks, and the
//! resulting verdict linear / cyclic cover / bi-cyclic cover.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{invariant_ring_generators, AlgebraError};
use crate::fan2d::coarsest_refinement;
use crate::lattice::{cokernel_map, det2, primitive, IntMatrix, LatticeError};
use crate::poly::{plane_vars, Poly, PolyParseError, UPoly};
use crate::presentation::{AHPresentation, Base, DivisorLabel, PresentError};
use crate::qmath::{self, QVector, Q};
use crate::serial::q_vec_to_json;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("curves {0} and {1} share a common factor")]
    NotCoprime(String, String),
    #[error("parametrization does not lie on the curve: f(p, q) = {0}")]
    ParametrizationMismatch(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("the zero polynomial does not define a curve")]
    ZeroCurve,
    #[error("cyclic group order must be at least 1")]
    ZeroOrder,
    #[error("weight matrix has {n} rows and {k} columns, expected n = k + 2")]
    NotComplexityTwo { n: usize, k: usize },
    #[error(transparent)]
    Parse(#[from] PolyParseError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Present(#[from] PresentError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Three-valued answer for checks that are not always decidable here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    /// Conjunction: `No` wins over `Undecided`, which wins over `Yes`.
    pub fn and(self, other: Decision) -> Decision {
        match (self, other) {
            (Decision::No, _) | (_, Decision::No) => Decision::No,
            (Decision::Undecided, _) | (_, Decision::Undecided) => Decision::Undecided,
            _ => Decision::Yes,
        }
    }
}

/// A plane curve `f(u, v) = 0`, optionally with a claimed parametrization
/// `t -> (p(t), q(t))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub f: Poly,
    pub parametrization: Option<(UPoly, UPoly)>,
}

impl CurveSpec {
    pub fn new(f: Poly) -> Result<Self, ClassifyError> {
        if f.is_zero() {
            return Err(ClassifyError::ZeroCurve);
        }
        let f = f.embed(&plane_vars()).ok_or_else(|| {
            ClassifyError::UnsupportedShape(format!("curve must be in u, v: {f}"))
        })?;
        Ok(CurveSpec { f, parametrization: None })
    }

    pub fn with_parametrization(mut self, p: UPoly, q: UPoly) -> Self {
        self.parametrization = Some((p, q));
        self
    }

    /// Parse `f` in `u, v` and an optional parametrization in `t`.
    pub fn parse(f: &str, param: Option<(&str, &str)>) -> Result<Self, ClassifyError> {
        let spec = CurveSpec::new(crate::poly::parse_plane(f)?)?;
        Ok(match param {
            None => spec,
            Some((p, q)) => spec.with_parametrization(parse_t(p)?, parse_t(q)?),
        })
    }
}

fn parse_t(text: &str) -> Result<UPoly, PolyParseError> {
    Ok(Poly::parse(text, &["t"])?.to_upoly(0).expect("single variable"))
}

/// `mu_k` acting on the plane by `(u, v) -> (z^a u, z^b v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuAction {
    pub order: u64,
    pub weights: (u64, u64),
}

impl MuAction {
    pub fn new(order: u64, a: i64, b: i64) -> Result<Self, ClassifyError> {
        if order == 0 {
            return Err(ClassifyError::ZeroOrder);
        }
        let k = order as i64;
        Ok(MuAction { order, weights: (a.rem_euclid(k) as u64, b.rem_euclid(k) as u64) })
    }
}

// ---------------------------------------------------------------- crossings

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingPoint {
    #[serde(serialize_with = "ser_qvec")]
    pub point: QVector,
    pub smooth: (bool, bool),
    pub transverse: bool,
}

fn ser_qvec<S: serde::Serializer>(v: &QVector, s: S) -> Result<S::Ok, S::Error> {
    q_vec_to_json(v).serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SncReport {
    /// Rational common zeros, sorted lexicographically.
    pub points: Vec<CrossingPoint>,
    /// Some common zeros are not rational and were not examined.
    pub irrational_points: bool,
    pub all_transverse: Decision,
}

impl SncReport {
    pub fn point_coordinates(&self) -> Vec<QVector> {
        self.points.iter().map(|p| p.point.clone()).collect()
    }
}

fn content_in_u(f: &Poly) -> UPoly {
    f.coefficients_in(1)
        .values()
        .map(|c| c.to_upoly(0).expect("plane polynomial"))
        .fold(UPoly::zero(), |g, c| UPoly::gcd(&g, &c))
}

/// Common zeros of two plane curves and whether they cross transversally.
pub fn snc_check(c1: &CurveSpec, c2: &CurveSpec) -> Result<SncReport, ClassifyError> {
    let (f1, f2) = (&c1.f, &c2.f);
    let not_coprime = || ClassifyError::NotCoprime(f1.to_string(), f2.to_string());
    if UPoly::gcd(&content_in_u(f1), &content_in_u(f2)).degree() != Some(0) {
        return Err(not_coprime());
    }
    let mut irrational = false;
    let mut us: Vec<Q> = Vec::new();
    if f1.degree_in(1) == 0 && f2.degree_in(1) == 0 {
        // both are polynomials in u alone with trivial common content
    } else {
        let res = f1.resultant(f2, 1, 0);
        if res.is_zero() {
            return Err(not_coprime());
        }
        us = res.rational_roots().into_iter().map(|(r, _)| r).collect();
        irrational |= res.strip_rational_roots().degree().unwrap_or(0) > 0;
    }
    let mut pts: BTreeSet<(Q, Q)> = BTreeSet::new();
    for u0 in &us {
        let g1 = f1.specialize(0, u0).to_upoly(1).expect("plane polynomial");
        let g2 = f2.specialize(0, u0).to_upoly(1).expect("plane polynomial");
        let g = UPoly::gcd(&g1, &g2);
        for (v0, _) in g.rational_roots() {
            pts.insert((u0.clone(), v0));
        }
        irrational |= g.strip_rational_roots().degree().unwrap_or(0) > 0;
    }
    let grads = [(f1.partial(0), f1.partial(1)), (f2.partial(0), f2.partial(1))];
    let points: Vec<CrossingPoint> = pts
        .into_iter()
        .map(|(u0, v0)| {
            let x = [u0.clone(), v0.clone()];
            let g: Vec<(Q, Q)> = grads.iter().map(|(a, b)| (a.eval(&x), b.eval(&x))).collect();
            let smooth = |i: usize| !(g[i].0.is_zero() && g[i].1.is_zero());
            let jac = &g[0].0 * &g[1].1 - &g[0].1 * &g[1].0;
            CrossingPoint { point: vec![u0, v0], smooth: (smooth(0), smooth(1)), transverse: !jac.is_zero() }
        })
        .collect();
    let all_transverse = if points.iter().any(|p| !p.transverse) {
        Decision::No
    } else if irrational {
        Decision::Undecided
    } else {
        Decision::Yes
    };
    Ok(SncReport { points, irrational_points: irrational, all_transverse })
}

// ------------------------------------------------------------- mu-invariance

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuInvariance {
    pub invariant: bool,
    /// Common weight of the monomials of `f` when invariant.
    pub residue: Option<u64>,
    pub contains_origin: bool,
}

/// Whether `f` is semi-invariant under the cyclic group, so that its zero set
/// is stable.
pub fn mu_invariance_check(c: &CurveSpec, mu: &MuAction) -> MuInvariance {
    let k = BigInt::from(mu.order);
    let (a, b) = (BigInt::from(mu.weights.0), BigInt::from(mu.weights.1));
    let residues: BTreeSet<BigInt> = c
        .f
        .monomials()
        .iter()
        .map(|e| (&a * e[0] + &b * e[1]).mod_floor(&k))
        .collect();
    let invariant = residues.len() <= 1;
    let residue = if invariant {
        Some(residues.into_iter().next().map_or(0, |r| r.try_into().expect("residue below order")))
    } else {
        None
    };
    MuInvariance { invariant, residue, contains_origin: c.f.constant_term().is_zero() }
}

// ------------------------------------------------------------- affine lines

/// `(p(t) - p(s)) / (t - s)` over the variables `[t, s]`.
fn divided_difference(p: &UPoly) -> Poly {
    let vars = vec!["t".to_string(), "s".to_string()];
    let mut out = Poly::zero(&vars);
    for (d, c) in p.coeffs().iter().enumerate().skip(1) {
        for i in 0..d as u32 {
            out = &out + &Poly::monomial(&vars, vec![i, d as u32 - 1 - i], c.clone());
        }
    }
    out
}

fn content_in_t(f: &Poly) -> UPoly {
    f.coefficients_in(1)
        .values()
        .map(|c| c.to_upoly(0).expect("two variables"))
        .fold(UPoly::zero(), |g, c| UPoly::gcd(&g, &c))
}

/// Coprimality in `Q[t, s]`.
fn coprime_ts(a: &Poly, b: &Poly) -> bool {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => false,
        (true, false) => b.is_constant(),
        (false, true) => a.is_constant(),
        (false, false) => {
            UPoly::gcd(&content_in_t(a), &content_in_t(b)).degree() == Some(0)
                && (a.degree_in(1) == 0 && b.degree_in(1) == 0 || !a.resultant(b, 1, 0).is_zero())
        }
    }
}

/// Whether the supplied parametrization exhibits the curve as an embedded
/// affine line: it lies on the curve, has the degrees of a proper
/// parametrization, and is injective.
pub fn a1_check(c: &CurveSpec) -> Result<Decision, ClassifyError> {
    let Some((p, q)) = &c.parametrization else {
        return Ok(Decision::Undecided);
    };
    let tv = vec!["t".to_string()];
    let images = [Poly::from_upoly(&tv, 0, p), Poly::from_upoly(&tv, 0, q)];
    let composed = c.f.substitute(&images);
    if !composed.is_zero() {
        return Err(ClassifyError::ParametrizationMismatch(composed.to_string()));
    }
    let deg = |x: &UPoly| x.degree().unwrap_or(0) as u32;
    let proper = deg(p) == c.f.degree_in(1) && deg(q) == c.f.degree_in(0);
    let injective = coprime_ts(&divided_difference(p), &divided_difference(q));
    Ok(Decision::from_bool(proper && injective))
}

// ------------------------------------------------------------ product split

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductSplit {
    /// Coordinates (numbered from 1) whose column lies on the first ray.
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// Partition of the coordinates along the two rays of the quotient fan when
/// the quotient is the affine plane. `None` when the fan has more than two
/// rays or its two rays do not form a lattice basis.
pub fn product_split(f: &IntMatrix) -> Result<Option<ProductSplit>, ClassifyError> {
    let (n, k) = (f.nrows(), f.ncols());
    if n != k + 2 {
        return Err(ClassifyError::NotComplexityTwo { n, k });
    }
    let p = cokernel_map(f)?;
    let cols: Vec<Vec<BigInt>> = (0..n).map(|j| p.col(j)).filter(|c| c.iter().any(|x| !x.is_zero())).collect();
    let fan = coarsest_refinement(&cols).map_err(PresentError::from)?;
    if fan.rays().len() != 2 {
        return Ok(None);
    }
    let (a, b) = (&fan.rays()[0], &fan.rays()[1]);
    if !det2(a, b).abs().is_one() {
        return Ok(None);
    }
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for j in 0..n {
        match primitive(&p.col(j)) {
            Ok(c) if &c == a => first.push(j + 1),
            Ok(c) if &c == b => second.push(j + 1),
            _ => {
                return Err(ClassifyError::UnsupportedShape(format!("coordinate {} has a zero column", j + 1)))
            }
        }
    }
    Ok(Some(ProductSplit { first, second }))
}

/// Every Hilbert basis element found up to `bound` is supported on one side
/// of the split.
pub fn split_respects_invariants(f: &IntMatrix, split: &ProductSplit, bound: u32) -> Result<bool, ClassifyError> {
    let report = invariant_ring_generators(f, bound)?;
    let side = |idx: &[usize], e: &[u32]| e.iter().enumerate().all(|(j, &x)| x == 0 || idx.contains(&(j + 1)));
    Ok(report.generators.iter().all(|e| side(&split.first, e) || side(&split.second, e)))
}

// -------------------------------------------------------------- the verdict

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Outcome {
    Linear,
    ProductOfComplexityOne,
    BiCyclicCover,
    CyclicCover,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveEvidence {
    pub label: DivisorLabel,
    pub coefficient_dim: usize,
    /// Basis of the smallest linear subspace containing the coefficient.
    #[serde(serialize_with = "ser_qvecs")]
    pub minimal_subspace: Vec<QVector>,
    /// For a point coefficient, the least common denominator of its
    /// coordinates.
    #[serde(serialize_with = "ser_opt_int")]
    pub cover_order: Option<BigInt>,
}

fn ser_qvecs<S: serde::Serializer>(v: &[QVector], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| q_vec_to_json(x)))
}

fn ser_opt_int<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub curves: Vec<CurveEvidence>,
    /// Dimension of the intersection of the two minimal subspaces, when both
    /// coefficients have positive dimension.
    pub intersection_dim: Option<usize>,
    /// Case of the dichotomy on the intersection that applies and is ruled
    /// out: "i" for a trivial intersection, "ii" otherwise.
    pub excluded_case: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub evidence: Evidence,
}

fn curve_labels(pres: &AHPresentation) -> Result<Vec<DivisorLabel>, ClassifyError> {
    match &pres.base {
        Base::Toric { .. } => Ok(vec![DivisorLabel::Axis(1), DivisorLabel::Axis(2)]),
        Base::Plane { curves } if curves.len() == 2 => {
            Ok(curves.keys().map(|c| DivisorLabel::Curve(c.clone())).collect())
        }
        Base::Plane { curves } => {
            Err(ClassifyError::UnsupportedShape(format!("expected two curve terms, found {}", curves.len())))
        }
    }
}

/// Linear action, or a (bi-)cyclic cover of one, read off the coefficients
/// of the two non-exceptional curves.
pub fn linearization_verdict(pres: &AHPresentation) -> Result<Verdict, ClassifyError> {
    let k = pres.lattice_rank;
    let mut curves = Vec::new();
    for label in curve_labels(pres)? {
        let term = pres
            .term(&label)
            .ok_or_else(|| ClassifyError::UnsupportedShape(format!("no term for {label}")))?;
        let delta = &term.coefficient;
        let dim = delta.affine_dim();
        let cover_order = (dim == 0 && delta.is_point()).then(|| {
            delta.vertices()[0].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
        });
        curves.push(CurveEvidence { label, coefficient_dim: dim, minimal_subspace: delta.minimal_subspace(), cover_order });
    }
    let points = curves.iter().filter(|c| c.coefficient_dim == 0).count();
    let mut notes = Vec::new();
    let (outcome, intersection_dim, excluded_case) = match points {
        0 => {
            let s1 = &curves[0].minimal_subspace;
            let s2 = &curves[1].minimal_subspace;
            let mut both = s1.clone();
            both.extend(s2.iter().cloned());
            let meet = s1.len() + s2.len() - qmath::rank(&both, k);
            let case = if meet == 0 { "i" } else { "ii" };
            notes.push(format!(
                "both coefficients have positive dimension; their subspaces meet in dimension {meet}, case {case} is excluded"
            ));
            (Outcome::Linear, Some(meet), Some(case.to_string()))
        }
        1 => {
            let c = curves.iter().find(|c| c.coefficient_dim == 0).expect("one point");
            notes.push(format!("coefficient of {} is a point: cyclic cover along it", c.label));
            (Outcome::CyclicCover, None, None)
        }
        _ => {
            notes.push("both coefficients are points: bi-cyclic cover along both curves".to_string());
            (Outcome::BiCyclicCover, None, None)
        }
    };
    Ok(Verdict { outcome, evidence: Evidence { curves, intersection_dim, excluded_case, notes } })
}

// ------------------------------------------------------------- the pipeline

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub outcome: Outcome,
    pub verdict: Verdict,
    pub product_split: Option<ProductSplit>,
    pub snc: Option<SncReport>,
    pub affine_lines: Vec<Decision>,
    pub mu_invariance: Vec<MuInvariance>,
    pub gates: Decision,
}

/// Combine the verdict with the checks on the curves. Over a toric base
/// without explicit curves, the coordinate axes are used.
pub fn classify(
    pres: &AHPresentation,
    weights: Option<&IntMatrix>,
    curves: &[CurveSpec],
    mu: Option<&MuAction>,
) -> Result<ClassifyReport, ClassifyError> {
    let verdict = linearization_verdict(pres)?;
    let axes;
    let curves = if curves.is_empty() && matches!(pres.base, Base::Toric { .. }) {
        let t = UPoly::from_i64(&[0, 1]);
        axes = vec![
            CurveSpec::parse("u", None)?.with_parametrization(UPoly::zero(), t.clone()),
            CurveSpec::parse("v", None)?.with_parametrization(t, UPoly::zero()),
        ];
        &axes[..]
    } else {
        curves
    };
    let mut gates = Decision::Yes;
    let snc = match curves {
        [a, b] => {
            let r = snc_check(a, b)?;
            let smooth = r.points.iter().all(|p| p.smooth.0 && p.smooth.1);
            gates = gates.and(r.all_transverse).and(Decision::from_bool(smooth));
            Some(r)
        }
        _ => {
            gates = Decision::Undecided;
            None
        }
    };
    let affine_lines = curves.iter().map(a1_check).collect::<Result<Vec<_>, _>>()?;
    for d in &affine_lines {
        gates = gates.and(*d);
    }
    let mu_invariance: Vec<MuInvariance> = match mu {
        Some(m) => curves.iter().map(|c| mu_invariance_check(c, m)).collect(),
        None => Vec::new(),
    };
    for m in &mu_invariance {
        gates = gates.and(Decision::from_bool(m.invariant && m.contains_origin));
    }
    let product_split = match weights {
        Some(f) => product_split(f)?,
        None => None,
    };
    let outcome = match (gates, &product_split) {
        (Decision::Yes, Some(_)) => Outcome::ProductOfComplexityOne,
        (Decision::Yes, None) => verdict.outcome,
        _ => Outcome::Undecided,
    };
    Ok(ClassifyReport { outcome, verdict, product_split, snc, affine_lines, mu_invariance, gates })
}
