//! Complete-in-a-cone fans in the plane and the surfaces they describe.
//!
//! The quotient surface of a complexity-two linear action is the toric
//! surface whose fan has one ray per distinct column direction of the
//! cokernel matrix. The two extreme rays are the strict transforms of the
//! axes, interior rays are exceptional curves.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{det2, primitive};
use crate::qmath::Q;
use crate::serial::{ser_int, ser_int_vec, ser_int_vecs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("rays do not span a strongly convex cone")]
    NotStronglyConvex,
    #[error("a fan needs at least two distinct ray directions, got {0}")]
    FewerThanTwoRays(usize),
    #[error("zero vector given as a ray")]
    ZeroRay,
    #[error("ray of length {0} is not a plane vector")]
    NotPlanar(usize),
}

/// Rays sorted counterclockwise; maximal cones are consecutive pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fan2D {
    #[serde(serialize_with = "ser_int_vecs")]
    rays: Vec<Vec<BigInt>>,
}

fn is_before(a: &[BigInt], b: &[BigInt]) -> Ordering {
    det2(b, a).cmp(&BigInt::zero())
}

/// The fan whose rays are exactly the distinct directions among `rays`.
pub fn coarsest_refinement(rays: &[Vec<BigInt>]) -> Result<Fan2D, FanError> {
    let mut dirs: Vec<Vec<BigInt>> = Vec::new();
    for r in rays {
        if r.len() != 2 {
            return Err(FanError::NotPlanar(r.len()));
        }
        let p = primitive(r).map_err(|_| FanError::ZeroRay)?;
        if !dirs.contains(&p) {
            dirs.push(p);
        }
    }
    if dirs.len() < 2 {
        return Err(FanError::FewerThanTwoRays(dirs.len()));
    }
    let first = dirs
        .iter()
        .find(|a| dirs.iter().all(|r| r == *a || det2(a, r).is_positive()))
        .ok_or(FanError::NotStronglyConvex)?
        .clone();
    let last = dirs
        .iter()
        .find(|b| dirs.iter().all(|r| r == *b || det2(r, b).is_positive()))
        .ok_or(FanError::NotStronglyConvex)?
        .clone();
    if !det2(&first, &last).is_positive() {
        return Err(FanError::NotStronglyConvex);
    }
    dirs.sort_by(|a, b| is_before(a, b));
    Ok(Fan2D { rays: dirs })
}

impl Fan2D {
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn cones(&self) -> Vec<(usize, usize)> {
        (0..self.rays.len() - 1).map(|i| (i, i + 1)).collect()
    }

    pub fn index_of(&self, ray: &[BigInt]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == ray)
    }

    /// Whether `v` lies in the support of the fan.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let (a, b) = (&self.rays[0], &self.rays[self.rays.len() - 1]);
        !det2(a, v).is_negative() && !det2(v, b).is_negative()
    }

    /// Intersection number of the invariant curves of rays `i` and `j`.
    /// Only defined when at least one of them is interior, i.e. compact.
    pub fn intersection(&self, i: usize, j: usize) -> Option<Q> {
        let last = self.rays.len() - 1;
        let compact = |x: usize| x > 0 && x < last;
        if !compact(i) && !compact(j) {
            return None;
        }
        let r = &self.rays;
        if i == j {
            let num = det2(&r[i - 1], &r[i + 1]);
            let den = det2(&r[i - 1], &r[i]) * det2(&r[i], &r[i + 1]);
            return Some(-Q::new(num, den));
        }
        if i.abs_diff(j) == 1 {
            return Some(Q::new(BigInt::one(), det2(&r[i], &r[j]).abs()));
        }
        Some(Q::zero())
    }
}

/// Blow-up structure of the surface: the singular affine quotient it maps to
/// and the curves it contracts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceInfo {
    #[serde(serialize_with = "ser_int")]
    pub quotient_order: BigInt,
    #[serde(serialize_with = "ser_int_vecs")]
    pub boundary_rays: [Vec<BigInt>; 2],
    #[serde(serialize_with = "ser_int_vecs")]
    pub exceptional_rays: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "ser_int_vec")]
    pub cone_determinants: Vec<BigInt>,
}

pub fn surface_info(fan: &Fan2D) -> SurfaceInfo {
    let r = fan.rays();
    let first = r[0].clone();
    let last = r[r.len() - 1].clone();
    SurfaceInfo {
        quotient_order: det2(&first, &last).abs(),
        exceptional_rays: r[1..r.len() - 1].to_vec(),
        cone_determinants: fan.cones().iter().map(|&(i, j)| det2(&r[i], &r[j])).collect(),
        boundary_rays: [first, last],
    }
}

impl SurfaceInfo {
    pub fn is_smooth(&self) -> bool {
        self.cone_determinants.iter().all(One::is_one)
    }

    pub fn is_affine(&self) -> bool {
        self.exceptional_rays.is_empty()
    }

    /// Short text in the usual notation: `A^2`, `A^2/mu_3`, `blow-up of ...`.
    pub fn describe(&self) -> String {
        let base = if self.quotient_order.is_one() {
            "A^2".to_string()
        } else {
            format!("A^2/mu_{}", self.quotient_order)
        };
        match self.exceptional_rays.len() {
            0 => base,
            1 => format!("blow-up of {base} with 1 exceptional curve"),
            m => format!("blow-up of {base} with {m} exceptional curves"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: i64, b: i64) -> Vec<BigInt> {
        vec![a.into(), b.into()]
    }

    #[test]
    fn plane_from_repeated_axes() {
        let fan = coarsest_refinement(&[v(1, 0), v(1, 0), v(0, 1), v(0, 1)]).unwrap();
        assert_eq!(fan.rays(), &[v(1, 0), v(0, 1)]);
        let info = surface_info(&fan);
        assert!(info.is_affine() && info.is_smooth());
        assert_eq!(info.quotient_order, BigInt::one());
        assert_eq!(info.describe(), "A^2");
    }

    #[test]
    fn one_blow_up() {
        let fan = coarsest_refinement(&[v(1, 0), v(0, 1), v(1, 1), v(1, 1)]).unwrap();
        assert_eq!(fan.rays(), &[v(1, 0), v(1, 1), v(0, 1)]);
        assert_eq!(fan.cones().len(), 2);
        let info = surface_info(&fan);
        assert_eq!(info.exceptional_rays, vec![v(1, 1)]);
        assert_eq!(fan.intersection(1, 1), Some(Q::from_integer((-1).into())));
        assert_eq!(fan.intersection(0, 2), None);
    }

    #[test]
    fn cyclic_quotient() {
        let fan = coarsest_refinement(&[v(1, 2), v(1, 0)]).unwrap();
        assert_eq!(surface_info(&fan).quotient_order, BigInt::from(2));
        assert!(!surface_info(&fan).is_smooth());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(coarsest_refinement(&[v(1, 0), v(-1, 0)]), Err(FanError::NotStronglyConvex));
        assert_eq!(
            coarsest_refinement(&[v(1, 0), v(0, 1), v(-1, -1)]),
            Err(FanError::NotStronglyConvex)
        );
        assert_eq!(coarsest_refinement(&[v(2, 0), v(1, 0)]), Err(FanError::FewerThanTwoRays(1)));
        assert_eq!(coarsest_refinement(&[v(0, 0), v(1, 0)]), Err(FanError::ZeroRay));
    }

    #[test]
    fn order_does_not_matter() {
        let a = coarsest_refinement(&[v(3, 1), v(1, 0), v(0, 1), v(2, 1), v(1, 1)]).unwrap();
        let b = coarsest_refinement(&[v(1, 1), v(0, 1), v(2, 1), v(1, 0), v(3, 1)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(surface_info(&a).exceptional_rays.len(), 3);
    }
}
