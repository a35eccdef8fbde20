//! Randomized checks against direct computations on the linear action.

mod common;

use ahtorus::algebra::sections_toric;
use ahtorus::classification::{
    linearization_verdict, mu_invariance_check, product_split, snc_check, split_respects_invariants, ClassifyError,
    CurveSpec, MuAction, Outcome,
};
use ahtorus::fixed_points::{directions, fixed_components, oracle_fixed_points_linear, FixedLocusDim};
use ahtorus::presentation::{ah_presentation, DivisorLabel};
use ahtorus::qmath::Q;
use common::{check, hyperbolic_weights, ints, matrix, plane_curve};
use num_integer::Integer;
use num_traits::Zero;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

const CASES: u32 = 300;

fn fail<E: std::fmt::Display>(e: E) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn ok(r: Result<(), String>) {
    if let Err(e) = r {
        panic!("{e}");
    }
}

/// A monomial `x^e` of degree `u` is `e = s^T u + P^T w` with `e >= 0`; the
/// graded piece over the quotient must contain exactly those `w`.
#[test]
fn toric_sections_match_monomials() {
    let s = hyperbolic_weights().prop_flat_map(|f| {
        let k = f.ncols();
        (Just(f), vec(-3i64..=3, k), vec(-4i64..=4, 2))
    });
    ok(check(CASES, s, |(f, u, w)| {
        let pres = ah_presentation(&f).map_err(fail)?;
        let seq = pres.sequence.as_ref().expect("sequence from weights");
        let (u, w) = (ints(&u), ints(&w));
        let e: Vec<_> = (0..f.nrows())
            .map(|i| {
                let a: num_bigint::BigInt = (0..f.ncols()).map(|j| seq.section.get(j, i) * &u[j]).sum();
                let b: num_bigint::BigInt = (0..2).map(|j| seq.cokernel.get(j, i) * &w[j]).sum();
                a + b
            })
            .collect();
        let monomial = e.iter().all(|x| *x >= Zero::zero());
        let piece = sections_toric(&pres, &u).map_err(fail)?;
        prop_assert_eq!(piece.contains(&w), monomial, "exponent {:?}", e);
        Ok(())
    }));
}

#[test]
fn fixed_locus_dimension_matches_linear_oracle() {
    ok(check(CASES, hyperbolic_weights(), |f| {
        let pres = ah_presentation(&f).map_err(fail)?;
        for ell in directions(f.ncols(), 2) {
            let report = fixed_components(&pres, &ell).map_err(fail)?;
            let survivors = oracle_fixed_points_linear(&f, &ell).map_err(fail)?;
            prop_assert_eq!(report.fixed_locus_dim, FixedLocusDim::Dim(survivors.len()), "direction {:?}", ell);
        }
        Ok(())
    }));
}

/// Every reported crossing is a common zero with the right Jacobian
/// verdict, and every common zero on a small rational grid is reported.
#[test]
fn crossings_match_grid_search() {
    ok(check(CASES, (plane_curve(), plane_curve()), |(f, g)| {
        let (a, b) = (CurveSpec::new(f.clone()).map_err(fail)?, CurveSpec::new(g.clone()).map_err(fail)?);
        let report = match snc_check(&a, &b) {
            Ok(r) => r,
            Err(ClassifyError::NotCoprime(..)) => return Ok(()),
            Err(e) => return Err(fail(e)),
        };
        for p in &report.points {
            prop_assert!(f.eval(&p.point).is_zero() && g.eval(&p.point).is_zero());
            let grad = |h: &ahtorus::poly::Poly| [h.partial(0).eval(&p.point), h.partial(1).eval(&p.point)];
            let (df, dg) = (grad(&f), grad(&g));
            let det = &df[0] * &dg[1] - &df[1] * &dg[0];
            prop_assert_eq!(p.transverse, !det.is_zero(), "at {:?}", p.point);
        }
        let found = report.point_coordinates();
        for n in -12i64..=12 {
            for m in -12i64..=12 {
                let pt = vec![Q::new(n.into(), 2.into()), Q::new(m.into(), 2.into())];
                if f.eval(&pt).is_zero() && g.eval(&pt).is_zero() {
                    prop_assert!(found.contains(&pt), "missed {:?}", pt);
                }
            }
        }
        Ok(())
    }));
}

/// Two complexity-one actions side by side, with the weight basis and the
/// coordinates shuffled.
fn split_weights() -> impl Strategy<Value = ahtorus::lattice::IntMatrix> {
    let pair = (1i64..=3, 1i64..=3).prop_filter("coprime", |(a, b)| a.gcd(b) == 1);
    (pair.clone(), pair, -2i64..=2, Just(vec![0usize, 1, 2, 3]).prop_shuffle())
        .prop_map(|((a, b), (c, d), t, perm)| {
            let rows = [[a, a * t], [-b, -b * t], [0, c], [0, -d]];
            matrix(&perm.iter().map(|&i| rows[i].to_vec()).collect::<Vec<_>>())
        })
}

#[test]
fn product_split_certifies_invariants() {
    ok(check(100, split_weights(), |f| {
        let split = product_split(&f).map_err(fail)?;
        let split = split.ok_or_else(|| TestCaseError::fail("no split"))?;
        prop_assert_eq!(split.first.len() + split.second.len(), 4);
        prop_assert!(split_respects_invariants(&f, &split, 8).map_err(fail)?);
        Ok(())
    }));
}

#[test]
fn trivial_group_leaves_every_curve_invariant() {
    ok(check(CASES, (plane_curve(), -5i64..=5, -5i64..=5), |(f, a, b)| {
        let mu = MuAction::new(1, a, b).map_err(fail)?;
        prop_assert!(mu_invariance_check(&CurveSpec::new(f).map_err(fail)?, &mu).invariant);
        Ok(())
    }));
}

#[test]
fn point_coefficients_are_never_linear() {
    ok(check(CASES, hyperbolic_weights(), |f| {
        let pres = ah_presentation(&f).map_err(fail)?;
        let verdict = linearization_verdict(&pres).map_err(fail)?;
        let point = [DivisorLabel::Axis(1), DivisorLabel::Axis(2)]
            .iter()
            .any(|l| pres.term(l).is_some_and(|t| t.coefficient.is_point()));
        if point {
            prop_assert_ne!(verdict.outcome, Outcome::Linear);
        } else {
            prop_assert_eq!(verdict.outcome, Outcome::Linear);
        }
        Ok(())
    }));
}
