//! Random generators and the property suites shared by the test targets.

#![allow(dead_code)]

use ahtorus::algebra::evaluate;
use ahtorus::classification::{snc_check, ClassifyError, CurveSpec};
use ahtorus::lattice::{exact_sequence, IntMatrix};
use ahtorus::poly::{plane_vars, Poly};
use ahtorus::polyhedra::{line_slice_positive_length, minkowski_sum, Polyhedron, SupportValue};
use ahtorus::presentation::{
    ah_presentation, ah_presentation_with_section, fully_hyperbolic_check, normalized_sequence, shift_equivalent,
    shifted_section,
};
use ahtorus::qmath::{self, Q, QVector};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

/// Run `test` on `cases` random inputs; the error names the first failing
/// input after shrinking.
pub fn check<S, F>(cases: u32, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let config = Config { cases, max_global_rejects: 1_000_000, failure_persistence: None, ..Config::default() };
    TestRunner::new(config).run(&strategy, test).map_err(|e| e.to_string())
}

/// Saturated `n x k` weight matrices: the first columns of a random
/// unimodular matrix.
pub fn saturated_weights() -> impl Strategy<Value = IntMatrix> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), 1..n, vec((0..n, 0..n, -2i64..=2), 0..10), any::<bool>()))
        .prop_map(|(n, k, ops, flip)| {
            let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            for (i, j, c) in ops {
                if i != j {
                    let row_j = m[j].clone();
                    for (a, b) in m[i].iter_mut().zip(row_j) {
                        *a += c * b;
                    }
                }
            }
            if flip {
                m.swap(0, n - 1);
            }
            let rows: Vec<Vec<i64>> = m.iter().map(|r| r[..k].to_vec()).collect();
            matrix(&rows)
        })
}

/// Fully hyperbolic complexity-two weight matrices with `n <= 4`.
pub fn hyperbolic_weights() -> impl Strategy<Value = IntMatrix> {
    (3usize..=4)
        .prop_flat_map(|n| vec(vec(-3i64..=3, n - 2), n))
        .prop_filter_map("fully hyperbolic and saturated", |rows| {
            let f = matrix(&rows);
            (fully_hyperbolic_check(&f).ok()? && exact_sequence(&f).is_ok()).then_some(f)
        })
}

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=2).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn point(dim: usize) -> impl Strategy<Value = QVector> {
    vec(rational(), dim)
}

/// Polyhedra of dimension `dim` from a few points and at most two rays.
pub fn polyhedron(dim: usize) -> impl Strategy<Value = Polyhedron> {
    (vec(point(dim), 1..=4), vec(vec(-2i64..=2, dim), 0..=2)).prop_map(move |(pts, rays)| {
        let rays: Vec<QVector> =
            rays.into_iter().filter(|r| r.iter().any(|&x| x != 0)).map(|r| qmath::qvec(&r)).collect();
        Polyhedron::from_generators(dim, &pts, &rays).expect("valid generators")
    })
}

pub fn polytope(dim: usize) -> impl Strategy<Value = Polyhedron> {
    vec(point(dim), 1..=4).prop_map(|pts| Polyhedron::polytope(&pts).expect("valid points"))
}

fn support(p: &Polyhedron, u: &[Q]) -> Option<Q> {
    match p.support_min(u).expect("matching dimension") {
        SupportValue::Finite(x) => Some(x),
        SupportValue::MinusInfinity => None,
    }
}

fn plus(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    Some(a? + b?)
}

/// `a >= b` with `None` as minus infinity.
fn geq(a: &Option<Q>, b: &Option<Q>) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x >= y,
    }
}

/// Plane curves of degree at most two with small coefficients.
pub fn plane_curve() -> impl Strategy<Value = Poly> {
    vec(-2i64..=2, 6)
        .prop_map(|c| {
            let vars = plane_vars();
            let exps = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
            exps.iter().zip(c).fold(Poly::zero(&vars), |acc, (e, x)| {
                &acc + &Poly::monomial(&vars, e.to_vec(), Q::from_integer(x.into()))
            })
        })
        .prop_filter("nonconstant", |p| !p.is_constant())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn exact_sequence_identities(cases: u32) -> Result<(), String> {
    check(cases, saturated_weights(), |f| {
        let seq = exact_sequence(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure((&seq.cokernel * &f).is_zero(), || "P F != 0".into())?;
        ensure((&seq.section * &f).is_identity(), || "s F != I".into())?;
        ensure(seq.cokernel.nrows() == f.nrows() - f.ncols(), || "wrong cokernel rank".into())?;
        Ok(())
    })?;
    check(cases, hyperbolic_weights(), |f| {
        let seq = normalized_sequence(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure((&seq.cokernel * &f).is_zero(), || "normalized P F != 0".into())?;
        ensure((&seq.section * &f).is_identity(), || "normalized s F != I".into())
    })
}

pub fn minkowski_additivity(cases: u32) -> Result<(), String> {
    let s = (1usize..=4).prop_flat_map(|d| (polyhedron(d), polyhedron(d), vec(-3i64..=3, d)));
    check(cases, s, |(a, b, u)| {
        let u = qmath::qvec(&u);
        let sum = minkowski_sum(&a, &b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let lhs = support(&sum, &u);
        let rhs = plus(support(&a, &u), support(&b, &u));
        ensure(lhs == rhs, || format!("h_(A+B) = {lhs:?}, h_A + h_B = {rhs:?}"))
    })
}

pub fn evaluate_superadditive(cases: u32) -> Result<(), String> {
    let s = hyperbolic_weights().prop_flat_map(|f| {
        let k = f.ncols();
        (Just(f), vec(-3i64..=3, k), vec(-3i64..=3, k))
    });
    check(cases, s, |(f, u, w)| {
        let p = ah_presentation(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let sum: Vec<i64> = u.iter().zip(&w).map(|(a, b)| a + b).collect();
        let d = |x: &[i64]| evaluate(&p, &ints(x)).map_err(|e| TestCaseError::fail(e.to_string()));
        let (du, dw, ds) = (d(&u)?, d(&w)?, d(&sum)?);
        ensure(ds.dominates(&du.add(&dw)), || format!("D(u+w) = {ds} < {du} + {dw}"))
    })
}

pub fn support_concave_homogeneous(cases: u32) -> Result<(), String> {
    let s = (1usize..=4).prop_flat_map(|d| (polyhedron(d), vec(-3i64..=3, d), vec(-3i64..=3, d), 0i64..=4, 1i64..=3));
    check(cases, s, |(p, u, w, n, m)| {
        let (u, w) = (qmath::qvec(&u), qmath::qvec(&w));
        let hs = support(&p, &qmath::add(&u, &w));
        let (hu, hw) = (support(&p, &u), support(&p, &w));
        ensure(geq(&hs, &plus(hu.clone(), hw)), || "support function is not concave".into())?;
        let lambda = Q::new(n.into(), m.into());
        let hl = support(&p, &qmath::scale(&lambda, &u));
        let expected = if lambda.is_zero() { Some(Q::zero()) } else { hu.map(|x| x * &lambda) };
        ensure(hl == expected, || format!("h(lambda u) = {hl:?}, lambda h(u) = {expected:?}"))
    })
}

/// A point in the relative interior: the mean of the vertices plus the sum
/// of the tail generators.
fn relative_interior_point(p: &Polyhedron) -> QVector {
    let n = Q::from_integer(BigInt::from(p.vertices().len()));
    let mut c = p.vertices().iter().fold(vec![Q::zero(); p.dim()], |acc, v| qmath::add(&acc, v));
    c = qmath::scale(&(Q::one() / n), &c);
    for r in p.rays() {
        c = qmath::add(&c, &qmath::int_to_q(r));
    }
    c
}

/// Brute-force answer: does `c + eps * l` stay in `p` for some small `eps`,
/// with `c` in the relative interior.
pub fn line_slice_oracle(p: &Polyhedron, l: &[Q]) -> bool {
    let c = relative_interior_point(p);
    (1..=12).any(|j| {
        let eps = Q::new(BigInt::one(), BigInt::from(10).pow(j));
        p.contains(&qmath::add(&c, &qmath::scale(&eps, l))) && p.contains(&qmath::sub(&c, &qmath::scale(&eps, l)))
    })
}

pub fn line_slice_matches_oracle(cases: u32) -> Result<(), String> {
    let s = (1usize..=4).prop_flat_map(|d| {
        let dir = vec(-2i64..=2, d).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0));
        (polyhedron(d), dir)
    });
    check(cases, s, |(p, l)| {
        let l = qmath::qvec(&l);
        let got = line_slice_positive_length(&p, &l).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let want = line_slice_oracle(&p, &l);
        ensure(got == want, || format!("line slice {got}, oracle {want} for {p}"))
    })
}

pub fn snc_symmetric(cases: u32) -> Result<(), String> {
    check(cases, (plane_curve(), plane_curve()), |(f, g)| {
        let a = CurveSpec::new(f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let b = CurveSpec::new(g).map_err(|e| TestCaseError::fail(e.to_string()))?;
        match (snc_check(&a, &b), snc_check(&b, &a)) {
            (Ok(x), Ok(y)) => {
                ensure(x.point_coordinates() == y.point_coordinates(), || "points differ".into())?;
                ensure(x.all_transverse == y.all_transverse, || "verdicts differ".into())
            }
            (Err(ClassifyError::NotCoprime(..)), Err(ClassifyError::NotCoprime(..))) => Ok(()),
            (x, y) => Err(TestCaseError::fail(format!("asymmetric: {x:?} vs {y:?}"))),
        }
    })
}

pub fn shift_reflexive_and_section_independent(cases: u32) -> Result<(), String> {
    let s = hyperbolic_weights().prop_flat_map(|f| {
        let k = f.ncols();
        (Just(f), vec(vec(-3i64..=3, 2), k))
    });
    check(cases, s, |(f, t)| {
        let fail = |e: ahtorus::presentation::PresentError| TestCaseError::fail(e.to_string());
        let p = ah_presentation(&f).map_err(fail)?;
        ensure(shift_equivalent(&p, &p).map_err(fail)?, || "not reflexive".into())?;
        let seq = p.sequence.clone().expect("computed from weights");
        let s2 = shifted_section(&seq, &matrix(&t)).map_err(fail)?;
        let q = ah_presentation_with_section(&f, &s2).map_err(fail)?;
        ensure(shift_equivalent(&p, &q).map_err(fail)?, || format!("section {s2:?} changes the class"))?;
        ensure(shift_equivalent(&q, &p).map_err(fail)?, || "not symmetric".into())
    })
}

pub type Suite = fn(u32) -> Result<(), String>;

/// The property suites, by name.
pub fn suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("P F = 0 and s F = I", exact_sequence_identities),
        ("support functions add under Minkowski sum", minkowski_additivity),
        ("evaluation is superadditive", evaluate_superadditive),
        ("support functions are concave and homogeneous", support_concave_homogeneous),
        ("line slices agree with a brute-force oracle", line_slice_matches_oracle),
        ("crossing checks are symmetric", snc_symmetric),
        ("shift equivalence is reflexive and section-independent", shift_reflexive_and_section_independent),
    ]
}
