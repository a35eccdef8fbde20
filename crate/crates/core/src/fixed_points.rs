//! Fixed points of one-parameter subgroups.
//!
//! A one-dimensional subtorus with primitive direction `l` fixes the points
//! over a prime divisor `D` exactly when some line parallel to `l` meets the
//! coefficient of `D` in a segment of positive length; there the isotropy is
//! infinite, elsewhere finite.
//!
//! Over a toric surface the report also carries the dimension of the fixed
//! locus inside `X`. Orbits of `X` lying over a stratum `S` of `Y` (a curve or
//! a torus fixed point) correspond to faces `F` of the stratum's polyhedron;
//! such an orbit has dimension `k - dim F` and is fixed by `l` iff `l` lies in
//! the linear span of `F - F`. Over a compact curve `E` the family of orbits
//! of face `F` varies with the point of `E` iff `D(u) . E > 0` for `u` in the
//! relative interior of the normal cone of `F`; otherwise it collapses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lattice::{primitive, IntMatrix};
use crate::polyhedra::{self, line_slice_positive_length, Polyhedron};
use crate::presentation::{AHPresentation, Base, DivisorLabel};
use crate::qmath::{self, Q, QVector};
use crate::serial::ser_int_vec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedError {
    #[error("direction is the zero vector")]
    ZeroDirection,
    #[error("direction has {got} entries, the lattice has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("height bound must be at least 1")]
    HeightZero,
    #[error(transparent)]
    Polyhedra(#[from] polyhedra::PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Isotropy {
    Finite,
    Infinite,
}

/// Dimension of the fixed locus in `X`, when computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedLocusDim {
    NotComputed,
    Empty,
    Dim(usize),
}

impl Serialize for FixedLocusDim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FixedLocusDim::NotComputed => s.serialize_none(),
            FixedLocusDim::Empty => s.serialize_str("empty"),
            FixedLocusDim::Dim(d) => s.serialize_u64(*d as u64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedLocusReport {
    #[serde(serialize_with = "ser_int_vec")]
    pub direction: Vec<BigInt>,
    pub fixed_labels: Vec<DivisorLabel>,
    #[serde(serialize_with = "ser_isotropy")]
    pub isotropy: BTreeMap<DivisorLabel, Isotropy>,
    pub fixed_locus_dim: FixedLocusDim,
}

fn ser_isotropy<S: Serializer>(m: &BTreeMap<DivisorLabel, Isotropy>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(l, i)| (l.to_string(), i)))
}

impl FixedLocusReport {
    /// `Some(true)` when the fixed locus has positive dimension; `None` when
    /// the dimension was not computed.
    pub fn positive_dimensional(&self) -> Option<bool> {
        match self.fixed_locus_dim {
            FixedLocusDim::NotComputed => None,
            FixedLocusDim::Empty => Some(false),
            FixedLocusDim::Dim(d) => Some(d > 0),
        }
    }
}

fn check_direction(k: usize, ell: &[BigInt]) -> Result<Vec<BigInt>, FixedError> {
    if ell.len() != k {
        return Err(FixedError::DimensionMismatch { expected: k, got: ell.len() });
    }
    primitive(ell).map_err(|_| FixedError::ZeroDirection)
}

/// Faces of one stratum: linear span of `F - F`, its dimension, and the
/// dimension of the family of orbits in the image.
struct StratumFaces {
    faces: Vec<(Vec<QVector>, usize, usize)>,
}

/// Precomputed face data of all strata of a toric base.
pub struct FixedLocusModel {
    rank: usize,
    strata: Vec<StratumFaces>,
}

impl FixedLocusModel {
    pub fn new(pres: &AHPresentation) -> Result<Option<Self>, FixedError> {
        let Base::Toric { fan, .. } = &pres.base else {
            return Ok(None);
        };
        let k = pres.lattice_rank;
        let nrays = fan.rays().len();
        let coeff: Vec<&Polyhedron> = fan
            .rays()
            .iter()
            .map(|r| {
                &pres
                    .terms
                    .iter()
                    .find(|t| t.ray.as_ref() == Some(r))
                    .expect("every fan ray carries a term")
                    .coefficient
            })
            .collect();
        let mut strata = Vec::new();
        for (j, delta) in coeff.iter().enumerate() {
            let compact = j > 0 && j + 1 < nrays;
            let mut faces = Vec::new();
            for face in delta.faces() {
                let image = if !compact {
                    1
                } else {
                    let mut deg = Q::zero();
                    for (i, other) in coeff.iter().enumerate() {
                        let c = fan.intersection(i, j).expect("compact curve");
                        if c.is_zero() {
                            continue;
                        }
                        let m = other.support_min(&face.normal)?;
                        deg += c * m.finite().expect("bounded coefficients");
                    }
                    usize::from(deg.is_positive())
                };
                faces.push((face_span(delta, &face), face.dim, image));
            }
            strata.push(StratumFaces { faces });
        }
        for j in 0..nrays - 1 {
            let sum = polyhedra::minkowski_sum(coeff[j], coeff[j + 1])?;
            let faces = sum.faces().into_iter().map(|f| (face_span(&sum, &f), f.dim, 0)).collect();
            strata.push(StratumFaces { faces });
        }
        Ok(Some(FixedLocusModel { rank: k, strata }))
    }

    /// Dimension of the fixed locus of the subtorus with direction `ell`.
    pub fn dimension(&self, ell: &[BigInt]) -> FixedLocusDim {
        let l = qmath::int_to_q(ell);
        let mut best: Option<usize> = None;
        for s in &self.strata {
            for (span, dim, image) in &s.faces {
                let mut rows = span.clone();
                rows.push(l.clone());
                if qmath::rank(&rows, self.rank) == *dim {
                    let d = self.rank - dim + image;
                    best = Some(best.map_or(d, |b| b.max(d)));
                }
            }
        }
        best.map_or(FixedLocusDim::Empty, FixedLocusDim::Dim)
    }
}

fn face_span(p: &Polyhedron, face: &polyhedra::Face) -> Vec<QVector> {
    let verts: Vec<&QVector> = face.vertices.iter().map(|&i| &p.vertices()[i]).collect();
    let mut dirs: Vec<QVector> = verts.iter().skip(1).map(|v| qmath::sub(v, verts[0])).collect();
    dirs.extend(face.rays.iter().map(|&i| qmath::int_to_q(&p.rays()[i])));
    dirs.extend(p.lines().iter().map(|l| qmath::int_to_q(l)));
    qmath::canonical_span(&dirs, p.dim())
}

fn report(pres: &AHPresentation, model: Option<&FixedLocusModel>, ell: Vec<BigInt>) -> Result<FixedLocusReport, FixedError> {
    let l = qmath::int_to_q(&ell);
    let mut isotropy = BTreeMap::new();
    let mut fixed_labels = Vec::new();
    for t in &pres.terms {
        if line_slice_positive_length(&t.coefficient, &l)? {
            fixed_labels.push(t.label.clone());
            isotropy.insert(t.label.clone(), Isotropy::Infinite);
        } else {
            isotropy.insert(t.label.clone(), Isotropy::Finite);
        }
    }
    let fixed_locus_dim = model.map_or(FixedLocusDim::NotComputed, |m| m.dimension(&ell));
    Ok(FixedLocusReport { direction: ell, fixed_labels, isotropy, fixed_locus_dim })
}

/// Which terms carry fixed points of the subtorus with direction `ell`.
pub fn fixed_components(pres: &AHPresentation, ell: &[BigInt]) -> Result<FixedLocusReport, FixedError> {
    let ell = check_direction(pres.lattice_rank, ell)?;
    let model = FixedLocusModel::new(pres)?;
    report(pres, model.as_ref(), ell)
}

/// Coordinates (numbered from 1) that survive on the fixed locus of
/// `t -> diag(t^<row_i F, l>)` acting on `A^n`.
pub fn oracle_fixed_points_linear(f: &IntMatrix, ell: &[BigInt]) -> Result<Vec<usize>, FixedError> {
    let ell = check_direction(f.ncols(), ell)?;
    let pairings = f.apply(&ell);
    Ok((0..f.nrows()).filter(|&i| pairings[i].is_zero()).map(|i| i + 1).collect())
}

/// All primitive `l` with `max |l_i| <= height`, one of each pair `+-l`
/// (first nonzero entry positive), in lexicographic order.
pub fn directions(rank: usize, height: u32) -> Vec<Vec<BigInt>> {
    let h = height as i64;
    let mut pts: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..rank {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-h..=h).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let mut out: Vec<Vec<BigInt>> = pts
        .into_iter()
        .filter(|p| p.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .map(|p| p.into_iter().map(BigInt::from).collect::<Vec<BigInt>>())
        .filter(|p| primitive(p).as_ref() == Ok(p))
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedLocusSurvey {
    pub height: u32,
    pub reports: Vec<FixedLocusReport>,
    /// Every divisor carrying fixed points for some direction passes over
    /// the origin of the quotient `Y_0`.
    pub fixed_labels_meet_over_origin: bool,
}

pub fn fixed_locus_survey(pres: &AHPresentation, height: u32) -> Result<FixedLocusSurvey, FixedError> {
    if height == 0 {
        return Err(FixedError::HeightZero);
    }
    let model = FixedLocusModel::new(pres)?;
    let reports = directions(pres.lattice_rank, height)
        .into_iter()
        .map(|ell| report(pres, model.as_ref(), ell))
        .collect::<Result<Vec<_>, _>>()?;
    let over_origin = |label: &DivisorLabel| match (&pres.base, label) {
        (Base::Plane { curves }, DivisorLabel::Curve(name)) => {
            curves.get(name).is_some_and(|f| f.constant_term().is_zero())
        }
        // axes and exceptional curves of a toric base all lie over the origin
        _ => true,
    };
    let fixed_labels_meet_over_origin = reports.iter().flat_map(|r| &r.fixed_labels).all(over_origin);
    Ok(FixedLocusSurvey { height, reports, fixed_labels_meet_over_origin })
}
