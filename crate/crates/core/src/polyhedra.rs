//! Exact rational polyhedra in V-representation.
//!
//! A [`Polyhedron`] is `conv(vertices) + cone(rays) + span(lines)`, always
//! nonempty and always stored in canonical form: `lines` is the reduced
//! echelon basis of the lineality space (primitive integer rows), vertices and
//! rays live in the orthogonal complement of the lineality space, vertices are
//! exactly the minimal-face representatives, rays are primitive integer
//! extreme rays. Equal sets therefore compare equal with `==`.
//!
//! Both directions of the V/H conversion reduce to one routine: extreme rays
//! of a cone `{z : E z = 0, A z >= 0}`, found by exhaustive enumeration of
//! active constraint subsets. That is exponential, and fine up to
//! [`MAX_DIM`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::lattice::IntMatrix;
use crate::qmath::{self, Q, QVector};
use crate::serial::{fmt_q_vec, JsonQ};

/// Largest ambient dimension accepted by vertex enumeration.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("a polyhedron needs at least one point")]
    NoPoints,
}

fn check_dim(expected: usize, got: usize) -> Result<(), PolyError> {
    if expected == got {
        Ok(())
    } else {
        Err(PolyError::DimensionMismatch { expected, got })
    }
}

/// V-representation of a polyhedral cone: lineality basis plus extreme rays
/// of its pointed part (taken inside the orthogonal complement of the lines).
#[derive(Debug, Clone)]
pub(crate) struct ConeGenerators {
    pub lines: Vec<QVector>,
    pub rays: Vec<QVector>,
}

/// Extreme rays of `{z in Q^dim : eq . z = 0, ineq . z >= 0}`.
pub(crate) fn cone_generators(dim: usize, eqs: &[QVector], ineqs: &[QVector]) -> ConeGenerators {
    let all: Vec<QVector> = eqs.iter().chain(ineqs).cloned().collect();
    let lines = qmath::canonical_span(&qmath::nullspace(&all, dim), dim);

    let mut base: Vec<QVector> = eqs.to_vec();
    base.extend(lines.iter().cloned());
    let w_basis = qmath::nullspace(&base, dim);
    let r = w_basis.len();
    if r == 0 {
        return ConeGenerators { lines, rays: Vec::new() };
    }

    // Inequalities in W-coordinates; parallel rows carry the same information.
    let mut rows: Vec<QVector> = Vec::new();
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for a in ineqs {
        let g: QVector = w_basis.iter().map(|b| qmath::dot(a, b)).collect();
        if let Some(key) = qmath::primitive_direction(&g) {
            if seen.insert(key.clone()) {
                rows.push(qmath::int_to_q(&key));
            }
        }
    }

    let feasible = |y: &QVector| rows.iter().all(|g| !qmath::dot(g, y).is_negative());
    let mut candidates: Vec<QVector> = Vec::new();
    if r == 1 {
        candidates.push(vec![Q::from_integer(1.into())]);
        candidates.push(vec![Q::from_integer((-1).into())]);
    } else {
        for subset in (0..rows.len()).combinations(r - 1) {
            let sub: Vec<QVector> = subset.iter().map(|&i| rows[i].clone()).collect();
            let ns = qmath::nullspace(&sub, r);
            if ns.len() != 1 {
                continue;
            }
            candidates.push(ns[0].clone());
            candidates.push(qmath::neg(&ns[0]));
        }
    }

    let mut rays: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for y in candidates.into_iter().filter(|y| feasible(y)) {
        let mut z = vec![Q::zero(); dim];
        for (c, b) in y.iter().zip(&w_basis) {
            for (zi, bi) in z.iter_mut().zip(b) {
                *zi += c * bi;
            }
        }
        if let Some(p) = qmath::primitive_direction(&z) {
            rays.insert(p);
        }
    }
    ConeGenerators { lines, rays: rays.iter().map(|r| qmath::int_to_q(r)).collect() }
}

/// Value of `min <u, P>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportValue {
    Finite(Q),
    MinusInfinity,
}

impl SupportValue {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            SupportValue::Finite(q) => Some(q),
            SupportValue::MinusInfinity => None,
        }
    }
}

/// H-representation: `normal . x = rhs` for equations, `normal . x >= rhs`
/// for inequalities (one per facet).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub equations: Vec<(QVector, Q)>,
    pub inequalities: Vec<(QVector, Q)>,
}

/// A face of a polyhedron, given by indices into the parent's vertex and ray
/// lists, its dimension, and a point in the relative interior of its normal
/// cone (a direction `u` whose minimizing face is exactly this face).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
    pub dim: usize,
    pub normal: QVector,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyhedron {
    dim: usize,
    vertices: Vec<QVector>,
    rays: Vec<Vec<BigInt>>,
    lines: Vec<Vec<BigInt>>,
}

fn homogenize(v: &[Q], last: Q) -> QVector {
    let mut h = v.to_vec();
    h.push(last);
    h
}

impl Polyhedron {
    /// Smallest polyhedron containing the given points and recession
    /// directions, in canonical form.
    pub fn from_generators(dim: usize, points: &[QVector], rays: &[QVector]) -> Result<Self, PolyError> {
        if dim > MAX_DIM {
            return Err(PolyError::DimensionTooLarge(dim));
        }
        if points.is_empty() {
            return Err(PolyError::NoPoints);
        }
        for v in points.iter().chain(rays) {
            check_dim(dim, v.len())?;
        }
        let gens: Vec<QVector> = points
            .iter()
            .map(|p| homogenize(p, Q::from_integer(1.into())))
            .chain(rays.iter().filter(|r| !qmath::is_zero_vec(r)).map(|r| homogenize(r, Q::zero())))
            .collect();
        Ok(Self::minimalize(dim, &gens))
    }

    fn minimalize(dim: usize, gens: &[QVector]) -> Self {
        let d1 = dim + 1;
        let dual = cone_generators(d1, &[], gens);
        let mut constraint_rows = dual.lines.clone();
        constraint_rows.extend(dual.rays.iter().cloned());
        let cone_lines = qmath::canonical_span(&qmath::nullspace(&constraint_rows, d1), d1);

        let mut fixed_rows = dual.lines.clone();
        fixed_rows.extend(cone_lines.iter().cloned());

        let mut vertices: BTreeSet<QVector> = BTreeSet::new();
        let mut rays: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for g in gens {
            let gp = qmath::project_off(g, &cone_lines);
            if qmath::is_zero_vec(&gp) {
                continue;
            }
            let mut rows = fixed_rows.clone();
            rows.extend(dual.rays.iter().filter(|a| qmath::dot(a, &gp).is_zero()).cloned());
            if qmath::rank(&rows, d1) + 1 != d1 {
                continue;
            }
            let lambda = gp[dim].clone();
            if lambda.is_zero() {
                rays.insert(qmath::primitive_direction(&gp[..dim]).expect("nonzero ray"));
            } else {
                vertices.insert(gp[..dim].iter().map(|x| x / &lambda).collect());
            }
        }
        let lines = cone_lines
            .iter()
            .map(|l| qmath::primitive_direction(&l[..dim]).expect("lineality rows are nonzero"))
            .collect();
        Polyhedron { dim, vertices: vertices.into_iter().collect(), rays: rays.into_iter().collect(), lines }
    }

    pub fn point(v: QVector) -> Self {
        let dim = v.len();
        Polyhedron { dim, vertices: vec![v], rays: Vec::new(), lines: Vec::new() }
    }

    pub fn origin(dim: usize) -> Self {
        Self::point(vec![Q::zero(); dim])
    }

    pub fn polytope(points: &[QVector]) -> Result<Self, PolyError> {
        let dim = points.first().ok_or(PolyError::NoPoints)?.len();
        Self::from_generators(dim, points, &[])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    /// Extreme rays of the pointed part of the tail cone.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    /// Basis of the lineality space.
    pub fn lines(&self) -> &[Vec<BigInt>] {
        &self.lines
    }

    /// Rays together with both orientations of each lineality vector: a
    /// generating set of the tail cone.
    pub fn tail_generators(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.rays.clone();
        for l in &self.lines {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.is_bounded() && self.vertices.len() == 1
    }

    fn direction_vectors(&self) -> Vec<QVector> {
        let v0 = &self.vertices[0];
        let mut dirs: Vec<QVector> = self.vertices[1..].iter().map(|v| qmath::sub(v, v0)).collect();
        dirs.extend(self.tail_generators().iter().map(|r| qmath::int_to_q(r)));
        dirs
    }

    /// Dimension of the affine hull (so 0 for a point).
    pub fn affine_dim(&self) -> usize {
        qmath::rank(&self.direction_vectors(), self.dim)
    }

    /// Canonical basis of `span(P - P)`, the smallest linear subspace whose
    /// translate contains the polyhedron.
    pub fn minimal_subspace(&self) -> Vec<QVector> {
        qmath::canonical_span(&self.direction_vectors(), self.dim)
    }

    pub fn tail_cone(&self) -> Cone {
        Cone { dim: self.dim, rays: self.rays.clone(), lines: self.lines.clone() }
    }

    pub fn support_min(&self, u: &[Q]) -> Result<SupportValue, PolyError> {
        check_dim(self.dim, u.len())?;
        for r in &self.rays {
            if qmath::dot(u, &qmath::int_to_q(r)).is_negative() {
                return Ok(SupportValue::MinusInfinity);
            }
        }
        for l in &self.lines {
            if !qmath::dot(u, &qmath::int_to_q(l)).is_zero() {
                return Ok(SupportValue::MinusInfinity);
            }
        }
        let m = self
            .vertices
            .iter()
            .map(|v| qmath::dot(u, v))
            .min()
            .expect("polyhedra are nonempty");
        Ok(SupportValue::Finite(m))
    }

    pub fn neg(&self) -> Self {
        let vertices: Vec<QVector> = self.vertices.iter().map(|v| qmath::neg(v)).sorted().collect();
        let rays: Vec<Vec<BigInt>> = self.rays.iter().map(|r| r.iter().map(|x| -x).collect()).sorted().collect();
        // the lineality space is symmetric, so its canonical basis is unchanged
        Polyhedron { dim: self.dim, vertices, rays, lines: self.lines.clone() }
    }

    /// Translate by `t`. Vertices stay canonical only if `t` is orthogonal to
    /// the lineality space, so the general case re-minimalizes.
    pub fn translate(&self, t: &[Q]) -> Result<Self, PolyError> {
        check_dim(self.dim, t.len())?;
        if self.lines.is_empty() {
            let vertices = self.vertices.iter().map(|v| qmath::add(v, t)).sorted().collect();
            return Ok(Polyhedron { dim: self.dim, vertices, rays: self.rays.clone(), lines: Vec::new() });
        }
        let pts: Vec<QVector> = self.vertices.iter().map(|v| qmath::add(v, t)).collect();
        let rays: Vec<QVector> = self.tail_generators().iter().map(|r| qmath::int_to_q(r)).collect();
        Self::from_generators(self.dim, &pts, &rays)
    }

    /// Facet description computed from the generators.
    pub fn hrep(&self) -> HRep {
        let d1 = self.dim + 1;
        let gens: Vec<QVector> = self
            .vertices
            .iter()
            .map(|v| homogenize(v, Q::from_integer(1.into())))
            .chain(self.tail_generators().iter().map(|r| homogenize(&qmath::int_to_q(r), Q::zero())))
            .collect();
        let dual = cone_generators(d1, &[], &gens);
        let split = |a: &QVector| (a[..self.dim].to_vec(), -a[self.dim].clone());
        let equations = dual.lines.iter().map(split).collect();
        let inequalities = dual
            .rays
            .iter()
            .filter(|a| !qmath::is_zero_vec(&a[..self.dim]))
            .map(split)
            .collect();
        HRep { equations, inequalities }
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        let h = self.hrep();
        h.equations.iter().all(|(a, b)| &qmath::dot(a, x) == b)
            && h.inequalities.iter().all(|(a, b)| &qmath::dot(a, x) >= b)
    }

    /// All nonempty faces, including the polyhedron itself.
    pub fn faces(&self) -> Vec<Face> {
        let h = self.hrep();
        let qrays: Vec<QVector> = self.rays.iter().map(|r| qmath::int_to_q(r)).collect();
        let tight_at = |idx: &(BTreeSet<usize>, BTreeSet<usize>)| -> Vec<usize> {
            (0..h.inequalities.len())
                .filter(|&i| {
                    let (a, b) = &h.inequalities[i];
                    idx.0.iter().all(|&v| &qmath::dot(a, &self.vertices[v]) == b)
                        && idx.1.iter().all(|&r| qmath::dot(a, &qrays[r]).is_zero())
                })
                .collect()
        };
        let whole: (BTreeSet<usize>, BTreeSet<usize>) =
            ((0..self.vertices.len()).collect(), (0..self.rays.len()).collect());
        let mut seen: BTreeMap<(BTreeSet<usize>, BTreeSet<usize>), ()> = BTreeMap::new();
        let mut queue = VecDeque::from([whole]);
        let mut faces = Vec::new();
        while let Some(f) = queue.pop_front() {
            if seen.insert(f.clone(), ()).is_some() {
                continue;
            }
            let tight = tight_at(&f);
            let mut normal = vec![Q::zero(); self.dim];
            for &i in &tight {
                normal = qmath::add(&normal, &h.inequalities[i].0);
            }
            let sub = Polyhedron {
                dim: self.dim,
                vertices: f.0.iter().map(|&v| self.vertices[v].clone()).collect(),
                rays: f.1.iter().map(|&r| self.rays[r].clone()).collect(),
                lines: self.lines.clone(),
            };
            faces.push(Face {
                vertices: f.0.iter().copied().collect(),
                rays: f.1.iter().copied().collect(),
                dim: sub.affine_dim(),
                normal,
            });
            for (i, (a, b)) in h.inequalities.iter().enumerate() {
                if tight.contains(&i) {
                    continue;
                }
                let vs: BTreeSet<usize> =
                    f.0.iter().copied().filter(|&v| &qmath::dot(a, &self.vertices[v]) == b).collect();
                if vs.is_empty() {
                    continue;
                }
                let rs: BTreeSet<usize> =
                    f.1.iter().copied().filter(|&r| qmath::dot(a, &qrays[r]).is_zero()).collect();
                queue.push_back((vs, rs));
            }
        }
        faces
    }
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| fmt_q_vec(v)).collect();
        write!(f, "conv{{{}}}", vs.join("; "))?;
        let tail = self.tail_generators();
        if !tail.is_empty() {
            let rs: Vec<String> = tail.iter().map(|r| fmt_q_vec(&qmath::int_to_q(r))).collect();
            write!(f, " + cone{{{}}}", rs.join("; "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyhedronJson {
    vertices: Vec<Vec<JsonQ>>,
    #[serde(default)]
    rays: Vec<Vec<JsonQ>>,
}

impl Serialize for Polyhedron {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyhedronJson {
            vertices: self.vertices.iter().map(|v| crate::serial::q_vec_to_json(v)).collect(),
            rays: self
                .tail_generators()
                .iter()
                .map(|r| crate::serial::q_vec_to_json(&qmath::int_to_q(r)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyhedronJson::deserialize(d)?;
        let unwrap = |vs: Vec<Vec<JsonQ>>| -> Vec<QVector> {
            vs.into_iter().map(|v| v.into_iter().map(|x| x.0).collect()).collect()
        };
        let vertices = unwrap(raw.vertices);
        let rays = unwrap(raw.rays);
        let dim = vertices.first().map_or(0, Vec::len);
        Polyhedron::from_generators(dim, &vertices, &rays).map_err(serde::de::Error::custom)
    }
}

/// Polyhedral cone given by generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    lines: Vec<Vec<BigInt>>,
}

impl Cone {
    pub fn zero(dim: usize) -> Self {
        Cone { dim, rays: Vec::new(), lines: Vec::new() }
    }

    pub fn from_generators(dim: usize, gens: &[QVector]) -> Result<Self, PolyError> {
        let p = Polyhedron::from_generators(dim, &[vec![Q::zero(); dim]], gens)?;
        Ok(p.tail_cone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lines(&self) -> &[Vec<BigInt>] {
        &self.lines
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    /// No line inside.
    pub fn is_strongly_convex(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.rays.clone();
        for l in &self.lines {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let gens: Vec<Vec<String>> =
            self.generators().iter().map(|g| g.iter().map(|x| x.to_string()).collect()).collect();
        gens.serialize(s)
    }
}

pub fn dual_cone(c: &Cone) -> Cone {
    let gens: Vec<QVector> = c.generators().iter().map(|g| qmath::int_to_q(g)).collect();
    let dual = cone_generators(c.dim, &[], &gens);
    Cone {
        dim: c.dim,
        rays: dual.rays.iter().map(|r| qmath::primitive_direction(r).expect("nonzero")).collect(),
        lines: dual.lines.iter().map(|l| qmath::primitive_direction(l).expect("nonzero")).collect(),
    }
}

/// Exact V-representation of `{x : A x = b, C x >= d}`; `None` when infeasible.
pub fn vertex_enumeration(
    dim: usize,
    equalities: &[(QVector, Q)],
    inequalities: &[(QVector, Q)],
) -> Result<Option<Polyhedron>, PolyError> {
    if dim > MAX_DIM {
        return Err(PolyError::DimensionTooLarge(dim));
    }
    for (a, _) in equalities.iter().chain(inequalities) {
        check_dim(dim, a.len())?;
    }
    let d1 = dim + 1;
    let eqs: Vec<QVector> = equalities.iter().map(|(a, b)| homogenize(a, -b.clone())).collect();
    let mut ineqs: Vec<QVector> = inequalities.iter().map(|(c, d)| homogenize(c, -d.clone())).collect();
    let mut lambda_row = vec![Q::zero(); d1];
    lambda_row[dim] = Q::from_integer(1.into());
    ineqs.push(lambda_row);

    let cone = cone_generators(d1, &eqs, &ineqs);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for z in &cone.rays {
        let lambda = &z[dim];
        if lambda.is_zero() {
            rays.push(qmath::primitive_direction(&z[..dim]).expect("nonzero ray"));
        } else {
            vertices.push(z[..dim].iter().map(|x| x / lambda).collect::<QVector>());
        }
    }
    if vertices.is_empty() {
        return Ok(None);
    }
    vertices.sort();
    rays.sort();
    let lines = cone
        .lines
        .iter()
        .map(|l| qmath::primitive_direction(&l[..dim]).expect("lineality rows are nonzero"))
        .collect();
    Ok(Some(Polyhedron { dim, vertices, rays, lines }))
}

/// Image of `p` under the integer linear map `map` (columns = `p.dim()`).
pub fn linear_image(map: &IntMatrix, p: &Polyhedron) -> Result<Polyhedron, PolyError> {
    check_dim(p.dim, map.ncols())?;
    let pts: Vec<QVector> = p.vertices.iter().map(|v| map.apply_q(v)).collect();
    let rays: Vec<QVector> = p.tail_generators().iter().map(|r| map.apply_q(&qmath::int_to_q(r))).collect();
    Polyhedron::from_generators(map.nrows(), &pts, &rays)
}

pub fn minkowski_sum(a: &Polyhedron, b: &Polyhedron) -> Result<Polyhedron, PolyError> {
    check_dim(a.dim, b.dim)?;
    let pts: Vec<QVector> = a
        .vertices
        .iter()
        .cartesian_product(&b.vertices)
        .map(|(x, y)| qmath::add(x, y))
        .collect();
    let rays: Vec<QVector> = a
        .tail_generators()
        .iter()
        .chain(b.tail_generators().iter())
        .map(|r| qmath::int_to_q(r))
        .collect();
    Polyhedron::from_generators(a.dim, &pts, &rays)
}

/// Whether some line parallel to `direction` meets `p` in a segment of
/// positive length. Since `P - P` is a convex set symmetric about the origin
/// and spanning the minimal subspace, this holds iff `direction` lies in that
/// subspace.
pub fn line_slice_positive_length(p: &Polyhedron, direction: &[Q]) -> Result<bool, PolyError> {
    check_dim(p.dim, direction.len())?;
    if qmath::is_zero_vec(direction) {
        return Err(PolyError::ZeroDirection);
    }
    let mut span = p.minimal_subspace();
    let r = span.len();
    span.push(direction.to_vec());
    Ok(qmath::rank(&span, p.dim) == r)
}
