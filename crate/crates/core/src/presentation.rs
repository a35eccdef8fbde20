//! Polyhedral divisor presentations `(Y, D)` of torus actions.
//!
//! For a linear action on `A^n` with weight matrix `F` of complexity two the
//! pipeline is: exact sequence `(F, P, s)`, one fan ray per distinct column
//! direction of `P`, and for each ray `v` the coefficient
//! `s({x >= 0 : P x = v})`. The cokernel map is normalized by a lattice
//! automorphism of `Z^2` so that the first axis ray is `(1, 0)` and the
//! second is `(-q, d)` with `0 <= q < d`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::fan2d::{self, Fan2D, FanError, SurfaceInfo};
use crate::lattice::{self, primitive, ExactSequenceData, IntMatrix, LatticeError};
use crate::polyhedra::{self, Cone, PolyError, Polyhedron};
use crate::poly::Poly;
use crate::qmath::{self, Q, QVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Polyhedra(#[from] PolyError),
    #[error("the action is not fully hyperbolic: some nonzero weight combination is nonnegative")]
    NotFullyHyperbolic,
    #[error("expected complexity two (n - k = 2), got n = {n}, k = {k}")]
    NotComplexityTwo { n: usize, k: usize },
    #[error("presentations are not comparable: {0}")]
    StructureMismatch(String),
}

/// Prime divisor of the quotient surface carrying a coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorLabel {
    /// Strict transform of a coordinate axis, `1` or `2`.
    Axis(u8),
    /// Exceptional curve, numbered from 1 in counterclockwise order.
    Exceptional(usize),
    /// A named curve on the plane.
    Curve(String),
}

impl fmt::Display for DivisorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorLabel::Axis(i) => write!(f, "H{i}"),
            DivisorLabel::Exceptional(i) => write!(f, "E{i}"),
            DivisorLabel::Curve(name) => write!(f, "{name}"),
        }
    }
}

impl FromStr for DivisorLabel {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let numbered = |prefix: char| {
            s.strip_prefix(prefix)
                .filter(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|rest| rest.parse::<usize>().ok())
        };
        Ok(match (numbered('H'), numbered('E')) {
            (Some(i @ (1 | 2)), _) => DivisorLabel::Axis(i as u8),
            (_, Some(i)) if i >= 1 => DivisorLabel::Exceptional(i),
            _ => DivisorLabel::Curve(s.to_string()),
        })
    }
}

impl Serialize for DivisorLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DivisorLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(s.parse().expect("label parsing is infallible"))
    }
}

/// One summand `Delta (x) D` of the polyhedral divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub label: DivisorLabel,
    /// Fan ray of the divisor when the base is toric.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_ray")]
    pub ray: Option<Vec<BigInt>>,
    /// Coordinates of `A^n` (numbered from 1) whose cokernel column points along `ray`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub columns: Vec<usize>,
    pub coefficient: Polyhedron,
}

fn ser_opt_ray<S: Serializer>(ray: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    let strings: Option<Vec<String>> = ray.as_ref().map(|r| r.iter().map(|x| x.to_string()).collect());
    strings.serialize(s)
}

/// The quotient surface `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Toric { fan: Fan2D, info: SurfaceInfo },
    /// `A^2 = Spec Q[u, v]` with named curves.
    Plane { curves: BTreeMap<String, Poly> },
}

impl Serialize for Base {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        match self {
            Base::Toric { fan, info } => {
                m.serialize_entry("kind", "toric")?;
                m.serialize_entry("description", &info.describe())?;
                let rays: Vec<Vec<String>> =
                    fan.rays().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
                m.serialize_entry("rays", &rays)?;
                m.serialize_entry("quotient_order", &info.quotient_order.to_string())?;
                m.serialize_entry("exceptional_count", &info.exceptional_rays.len())?;
                let dets: Vec<String> = info.cone_determinants.iter().map(|d| d.to_string()).collect();
                m.serialize_entry("cone_determinants", &dets)?;
            }
            Base::Plane { curves } => {
                m.serialize_entry("kind", "plane")?;
                let cs: BTreeMap<&String, String> = curves.iter().map(|(k, v)| (k, v.to_string())).collect();
                m.serialize_entry("curves", &cs)?;
            }
        }
        m.end()
    }
}

/// A polyhedral divisor on a surface, with the lattice data it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AHPresentation {
    pub lattice_rank: usize,
    #[serde(rename = "surface")]
    pub base: Base,
    pub terms: Vec<Term>,
    pub tail: Cone,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<ExactSequenceData>,
}

impl AHPresentation {
    /// Hand-built presentation over a toric surface given by its rays.
    /// `terms` pairs each coefficient with its ray; labels follow the fan.
    pub fn toric(rank: usize, terms: Vec<(Vec<BigInt>, Polyhedron)>) -> Result<Self, PresentError> {
        let rays: Vec<Vec<BigInt>> = terms.iter().map(|(r, _)| r.clone()).collect();
        let fan = fan2d::coarsest_refinement(&rays)?;
        let info = fan2d::surface_info(&fan);
        let mut out = Vec::new();
        for (ray, coefficient) in terms {
            if coefficient.dim() != rank {
                return Err(PolyError::DimensionMismatch { expected: rank, got: coefficient.dim() }.into());
            }
            let ray = primitive(&ray)?;
            let idx = fan.index_of(&ray).expect("ray is in its own refinement");
            out.push(Term { label: label_for(idx, fan.rays().len()), ray: Some(ray), columns: Vec::new(), coefficient });
        }
        out.sort_by(|a, b| a.label.cmp(&b.label));
        Ok(AHPresentation {
            lattice_rank: rank,
            base: Base::Toric { fan, info },
            terms: out,
            tail: Cone::zero(rank),
            sequence: None,
        })
    }

    /// Presentation on the plane with coefficients attached to named curves.
    pub fn plane(rank: usize, terms: Vec<(String, Poly, Polyhedron)>) -> Result<Self, PresentError> {
        let mut curves = BTreeMap::new();
        let mut out = Vec::new();
        for (name, f, coefficient) in terms {
            if coefficient.dim() != rank {
                return Err(PolyError::DimensionMismatch { expected: rank, got: coefficient.dim() }.into());
            }
            if curves.insert(name.clone(), f).is_some() {
                return Err(PresentError::StructureMismatch(format!("curve {name} given twice")));
            }
            out.push(Term { label: DivisorLabel::Curve(name), ray: None, columns: Vec::new(), coefficient });
        }
        Ok(AHPresentation { lattice_rank: rank, base: Base::Plane { curves }, terms: out, tail: Cone::zero(rank), sequence: None })
    }

    pub fn term(&self, label: &DivisorLabel) -> Option<&Term> {
        self.terms.iter().find(|t| &t.label == label)
    }

    pub fn labels(&self) -> Vec<DivisorLabel> {
        self.terms.iter().map(|t| t.label.clone()).collect()
    }

    pub fn fan(&self) -> Option<&Fan2D> {
        match &self.base {
            Base::Toric { fan, .. } => Some(fan),
            Base::Plane { .. } => None,
        }
    }

    pub fn surface_info(&self) -> Option<&SurfaceInfo> {
        match &self.base {
            Base::Toric { info, .. } => Some(info),
            Base::Plane { .. } => None,
        }
    }

    /// The divisor as a formal sum, e.g. `conv{(0,0); (1,0)} (x) H1 + ...`.
    pub fn formal_sum(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|t| format!("{} (x) {}", t.coefficient, t.label)).collect();
        parts.join(" + ")
    }
}

fn label_for(idx: usize, nrays: usize) -> DivisorLabel {
    if idx == 0 {
        DivisorLabel::Axis(1)
    } else if idx + 1 == nrays {
        DivisorLabel::Axis(2)
    } else {
        DivisorLabel::Exceptional(idx)
    }
}

/// True iff no nonzero `y` has `F y >= 0`, i.e. `F(Q^k)` meets the
/// nonnegative orthant only in the origin.
pub fn fully_hyperbolic_check(f: &IntMatrix) -> Result<bool, PresentError> {
    let rows: Vec<(QVector, Q)> = f.to_q_rows().into_iter().map(|r| (r, Q::zero())).collect();
    let cone = polyhedra::vertex_enumeration(f.ncols(), &[], &rows)?
        .expect("the origin is always feasible");
    Ok(cone.rays().is_empty() && cone.lines().is_empty())
}

/// Unimodular `G` with `G h1 = (1, 0)` and `G h2 = (-q, d)`, `0 <= q < d`.
fn normalizing_transform(h1: &[BigInt], h2: &[BigInt]) -> IntMatrix {
    let (p, q) = (&h1[0], &h1[1]);
    let e = p.extended_gcd(q);
    // x p + y q = 1 since h1 is primitive
    let mut g = IntMatrix::from_rows(vec![vec![e.x.clone(), e.y.clone()], vec![-q.clone(), p.clone()]], 2)
        .expect("2 x 2");
    let w = g.apply(h2);
    if w[1].is_negative() {
        g = &IntMatrix::from_i64(&[&[1, 0], &[0, -1]]) * &g;
    }
    let w = g.apply(h2);
    let d = &w[1];
    let qq = (-&w[0]).mod_floor(d);
    let m = (-&qq - &w[0]) / d;
    let shear = IntMatrix::from_rows(vec![vec![BigInt::one(), m], vec![BigInt::zero(), BigInt::one()]], 2).expect("2 x 2");
    &shear * &g
}

/// Exact sequence for `F` with the cokernel map in normal form.
pub fn normalized_sequence(f: &IntMatrix) -> Result<ExactSequenceData, PresentError> {
    let (n, k) = (f.nrows(), f.ncols());
    if !fully_hyperbolic_check(f)? {
        return Err(PresentError::NotFullyHyperbolic);
    }
    if n != k + 2 {
        return Err(PresentError::NotComplexityTwo { n, k });
    }
    let mut seq = lattice::exact_sequence(f)?;
    let cols: Vec<Vec<BigInt>> = (0..n).map(|i| seq.cokernel.col(i)).collect();
    let fan = fan2d::coarsest_refinement(&cols)?;
    let (a, b) = (fan.rays()[0].clone(), fan.rays()[fan.rays().len() - 1].clone());
    let first_col = |r: &[BigInt]| cols.iter().position(|c| primitive(c).ok().as_deref() == Some(r));
    let (h1, h2) = if first_col(&a) <= first_col(&b) { (a, b) } else { (b, a) };
    let g = normalizing_transform(&h1, &h2);
    seq.cokernel = &g * &seq.cokernel;
    seq.validate()?;
    Ok(seq)
}

/// Presentation of `A^n` with the linear action of weight matrix `F`.
pub fn ah_presentation(f: &IntMatrix) -> Result<AHPresentation, PresentError> {
    let seq = normalized_sequence(f)?;
    present_with_sequence(seq)
}

/// Same pipeline with a caller-chosen section (checked: `s F = I`).
pub fn ah_presentation_with_section(f: &IntMatrix, s: &IntMatrix) -> Result<AHPresentation, PresentError> {
    let mut seq = normalized_sequence(f)?;
    seq.section = s.clone();
    seq.validate()?;
    present_with_sequence(seq)
}

fn present_with_sequence(seq: ExactSequenceData) -> Result<AHPresentation, PresentError> {
    let n = seq.weights.nrows();
    let k = seq.weights.ncols();
    let p = &seq.cokernel;
    let cols: Vec<Vec<BigInt>> = (0..n).map(|i| p.col(i)).collect();
    let fan = fan2d::coarsest_refinement(&cols)?;
    let info = fan2d::surface_info(&fan);
    let nonneg: Vec<(QVector, Q)> = (0..n)
        .map(|i| {
            let mut e = vec![Q::zero(); n];
            e[i] = Q::one();
            (e, Q::zero())
        })
        .collect();
    let p_rows = p.to_q_rows();

    let mut terms = Vec::new();
    for (idx, v) in fan.rays().iter().enumerate() {
        let eqs: Vec<(QVector, Q)> = p_rows
            .iter()
            .zip(v)
            .map(|(row, vi)| (row.clone(), Q::from_integer(vi.clone())))
            .collect();
        let slice = polyhedra::vertex_enumeration(n, &eqs, &nonneg)?
            .expect("a column along v gives a feasible point");
        let coefficient = polyhedra::linear_image(&seq.section, &slice)?;
        let columns = (0..n).filter(|&i| primitive(&cols[i]).ok().as_ref() == Some(v)).map(|i| i + 1).collect();
        terms.push(Term { label: label_for(idx, fan.rays().len()), ray: Some(v.clone()), columns, coefficient });
    }
    terms.sort_by(|a, b| a.label.cmp(&b.label));

    let zero_eqs: Vec<(QVector, Q)> = p_rows.iter().map(|row| (row.clone(), Q::zero())).collect();
    let recession = polyhedra::vertex_enumeration(n, &zero_eqs, &nonneg)?.expect("origin is feasible");
    let tail = polyhedra::linear_image(&seq.section, &recession)?.tail_cone();

    Ok(AHPresentation { lattice_rank: k, base: Base::Toric { fan, info }, terms, tail, sequence: Some(seq) })
}

/// Witness of shift equivalence: `sign * Delta_B = Delta_A + shift` per label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftWitness {
    pub sign: i8,
    /// `k x 2` integer map sending each ray to its shift, when rays exist.
    pub map: Option<IntMatrix>,
    pub shifts: BTreeMap<String, Vec<String>>,
}

fn check_comparable(a: &AHPresentation, b: &AHPresentation) -> Result<(), PresentError> {
    if a.lattice_rank != b.lattice_rank {
        return Err(PresentError::StructureMismatch(format!(
            "lattice ranks {} and {}",
            a.lattice_rank, b.lattice_rank
        )));
    }
    let (la, lb) = (a.labels(), b.labels());
    let mut sa = la.clone();
    let mut sb = lb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Err(PresentError::StructureMismatch("label sets differ".into()));
    }
    for t in &a.terms {
        let u = b.term(&t.label).expect("same labels");
        if t.ray != u.ray {
            return Err(PresentError::StructureMismatch(format!("ray of {} differs", t.label)));
        }
        if !t.coefficient.is_bounded() || !u.coefficient.is_bounded() {
            return Err(PresentError::StructureMismatch(format!("coefficient of {} is unbounded", t.label)));
        }
    }
    Ok(())
}

/// Searches for a sign and an integer map `T: Z^2 -> Z^k` with
/// `sign * Delta_B(v) = Delta_A(v) + T v` for every ray `v`. Terms without a
/// ray may be shifted by independent lattice vectors.
pub fn shift_equivalence(a: &AHPresentation, b: &AHPresentation) -> Result<Option<ShiftWitness>, PresentError> {
    check_comparable(a, b)?;
    let k = a.lattice_rank;
    'signs: for sign in [1i8, -1] {
        let mut shifts: Vec<(DivisorLabel, Option<Vec<BigInt>>, QVector)> = Vec::new();
        for t in &a.terms {
            let other = &b.term(&t.label).expect("same labels").coefficient;
            let target = if sign == 1 { other.clone() } else { other.neg() };
            let tau = qmath::sub(&target.vertices()[0], &t.coefficient.vertices()[0]);
            if t.coefficient.translate(&tau)? != target {
                continue 'signs;
            }
            shifts.push((t.label.clone(), t.ray.clone(), tau));
        }
        let rayed: Vec<&(DivisorLabel, Option<Vec<BigInt>>, QVector)> =
            shifts.iter().filter(|s| s.1.is_some()).collect();
        let unrayed_integral = shifts.iter().filter(|s| s.1.is_none()).all(|s| s.2.iter().all(|x| x.is_integer()));
        if !unrayed_integral {
            continue;
        }
        let ray_rows: Vec<QVector> = rayed.iter().map(|s| qmath::int_to_q(s.1.as_ref().unwrap())).collect();
        let map = if rayed.is_empty() {
            None
        } else if qmath::rank(&ray_rows, 2) < 2 {
            // one direction: T v = tau is solvable over Z iff tau is integral
            if !rayed.iter().all(|s| s.2.iter().all(|x| x.is_integer())) {
                continue;
            }
            None
        } else {
            let mut rows = Vec::new();
            for r in 0..k {
                let rhs: Vec<Q> = rayed.iter().map(|s| s.2[r].clone()).collect();
                let Some(x) = qmath::solve(&ray_rows, &rhs, 2) else { continue 'signs };
                if !x.iter().all(|c| c.is_integer()) {
                    continue 'signs;
                }
                rows.push(x.iter().map(|c| c.to_integer()).collect::<Vec<BigInt>>());
            }
            Some(IntMatrix::from_rows(rows, 2)?)
        };
        let shifts = shifts
            .into_iter()
            .map(|(l, _, tau)| (l.to_string(), tau.iter().map(crate::serial::fmt_q).collect()))
            .collect();
        return Ok(Some(ShiftWitness { sign, map, shifts }));
    }
    Ok(None)
}

pub fn shift_equivalent(a: &AHPresentation, b: &AHPresentation) -> Result<bool, PresentError> {
    Ok(shift_equivalence(a, b)?.is_some())
}

/// A section `s + T P` for an integer `k x 2` matrix `T`; used to move
/// between equivalent presentations.
pub fn shifted_section(seq: &ExactSequenceData, t: &IntMatrix) -> Result<IntMatrix, PresentError> {
    let tp = t.checked_mul(&seq.cokernel)?;
    let rows: Vec<Vec<BigInt>> = (0..seq.section.nrows())
        .map(|i| seq.section.row(i).iter().zip(tp.row(i)).map(|(a, b)| a + b).collect())
        .collect();
    Ok(IntMatrix::from_rows(rows, seq.section.ncols())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::qvec;

    fn ex10() -> IntMatrix {
        IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])
    }

    fn seg(a: &[i64], b: &[i64]) -> Polyhedron {
        Polyhedron::polytope(&[qvec(a), qvec(b)]).unwrap()
    }

    fn v(a: i64, b: i64) -> Vec<BigInt> {
        vec![a.into(), b.into()]
    }

    #[test]
    fn labels_round_trip() {
        for s in ["H1", "H2", "E3", "C1", "H3", "E0"] {
            assert_eq!(s.parse::<DivisorLabel>().unwrap().to_string(), s);
        }
        assert_eq!("H3".parse::<DivisorLabel>().unwrap(), DivisorLabel::Curve("H3".into()));
    }

    #[test]
    fn hyperbolicity() {
        assert!(fully_hyperbolic_check(&ex10()).unwrap());
        assert!(!fully_hyperbolic_check(&IntMatrix::from_i64(&[&[1], &[1]])).unwrap());
    }

    #[test]
    fn example_10_pipeline() {
        let p = ah_presentation(&ex10()).unwrap();
        assert_eq!(p.fan().unwrap().rays(), &[v(1, 0), v(0, 1)]);
        assert_eq!(p.terms.len(), 2);
        assert!(p.tail.is_zero());
        let paper = AHPresentation::toric(2, vec![(v(1, 0), seg(&[-1, 0], &[0, 0])), (v(0, 1), seg(&[0, -1], &[0, 0]))])
            .unwrap();
        assert!(shift_equivalent(&p, &paper).unwrap());
        assert!(shift_equivalent(&paper, &p).unwrap());
    }

    #[test]
    fn non_integral_shift_is_rejected() {
        let a = AHPresentation::toric(2, vec![(v(1, 0), seg(&[-1, 0], &[0, 0])), (v(0, 1), seg(&[0, -1], &[0, 0]))])
            .unwrap();
        let half = Polyhedron::polytope(&[vec![Q::new((-1).into(), 2.into()), Q::zero()], vec![Q::new(1.into(), 2.into()), Q::zero()]])
            .unwrap();
        let b = AHPresentation::toric(2, vec![(v(1, 0), half), (v(0, 1), seg(&[0, -1], &[0, 0]))]).unwrap();
        assert!(!shift_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn rejects_positive_weights() {
        let f = IntMatrix::from_i64(&[&[1], &[1], &[1]]);
        assert_eq!(ah_presentation(&f), Err(PresentError::NotFullyHyperbolic));
        let g = IntMatrix::from_i64(&[&[1], &[1]]);
        assert_eq!(ah_presentation(&g), Err(PresentError::NotFullyHyperbolic));
        let h = IntMatrix::from_i64(&[&[1], &[-1]]);
        assert_eq!(ah_presentation(&h), Err(PresentError::NotComplexityTwo { n: 2, k: 1 }));
    }

    #[test]
    fn normal_form_of_cyclic_quotient() {
        let g = normalizing_transform(&v(1, 2), &v(1, 0));
        assert_eq!(g.apply(&v(1, 2)), v(1, 0));
        let w = g.apply(&v(1, 0));
        assert_eq!(w[1], BigInt::from(2));
        assert!(!w[0].is_positive() && w[0] > BigInt::from(-2));
    }
}
