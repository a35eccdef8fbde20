//! Acceptance checks: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use ahtorus::algebra::{check_equivariant_hypersurface, invariant_ring_generators, presentation_bounded};
use ahtorus::classification::{linearization_verdict, product_split, Decision, snc_check, CurveSpec, Outcome, ProductSplit};
use ahtorus::fixed_points::{directions, fixed_components, oracle_fixed_points_linear, FixedLocusDim};
use ahtorus::io::builtins::{example_13_weights, example_3ii_weights};
use ahtorus::io::{builtin, input::presentation_from_spec};
use ahtorus::lattice::IntMatrix;
use ahtorus::poly::Poly;
use ahtorus::polyhedra::Polyhedron;
use ahtorus::presentation::{ah_presentation, shift_equivalent, AHPresentation, DivisorLabel};
use ahtorus::qmath::{qfrac, qvec, QVector};
use common::ints;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn hull(points: &[&[i64]]) -> Polyhedron {
    let pts: Vec<QVector> = points.iter().map(|p| qvec(p)).collect();
    Polyhedron::polytope(&pts).expect("valid points")
}

fn toric(terms: &[(&[i64], Polyhedron)]) -> AHPresentation {
    AHPresentation::toric(2, terms.iter().map(|(r, p)| (ints(r), p.clone())).collect()).expect("valid toric data")
}

fn displayed(name: &str) -> (IntMatrix, IntMatrix) {
    let b = builtin(name).expect("built-in example");
    (b.weights.expect("weights"), b.displayed_cokernel.expect("cokernel"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Check {
    let mut cases = vec![("example-3i".to_string(), 0usize)];
    cases.extend((4..=8).map(|n| (format!("example-3ii-n{n}"), 1)));
    cases.extend((4..=8).map(|n| (format!("example-3iii-n{n}"), n - 2)));
    for (name, exceptional) in &cases {
        let (f, p) = displayed(name);
        let pres = ah_presentation(&f).map_err(err)?;
        let seq = pres.sequence.as_ref().expect("sequence from weights");
        ensure!(seq.cokernel.same_row_lattice(&p), "{name}: cokernel row lattice differs from the displayed one");
        let info = pres.surface_info().expect("toric base");
        ensure!(info.exceptional_rays.len() == *exceptional, "{name}: {} exceptional rays", info.exceptional_rays.len());
        ensure!(info.quotient_order == 1.into(), "{name}: affine quotient is {}", info.describe());
    }
    Ok(format!("{} weight matrices, exceptional counts 0, 1 and n-2 over A^2", cases.len()))
}

fn criterion_2() -> Check {
    let (f, _) = displayed("example-10");
    let pres = ah_presentation(&f).map_err(err)?;
    let info = pres.surface_info().expect("toric base");
    ensure!(info.is_affine() && info.quotient_order == 1.into(), "quotient is {}", info.describe());
    ensure!(pres.terms.len() == 2, "{} terms", pres.terms.len());
    let expected = toric(&[(&[1, 0], hull(&[&[-1, 0], &[0, 0]])), (&[0, 1], hull(&[&[0, -1], &[0, 0]]))]);
    ensure!(shift_equivalent(&pres, &expected).map_err(err)?, "not shift-equivalent to the segments");
    let half = hull(&[&[-1, 0], &[0, 0]]).translate(&[qfrac(1, 2), qfrac(0, 1)]).map_err(err)?;
    let moved = toric(&[(&[1, 0], half), (&[0, 1], hull(&[&[0, -1], &[0, 0]]))]);
    ensure!(!shift_equivalent(&pres, &moved).map_err(err)?, "a half-integral translate is still equivalent");
    let split = product_split(&f).map_err(err)?;
    let want = ProductSplit { first: vec![1, 2], second: vec![3, 4] };
    ensure!(split.as_ref() == Some(&want), "split {split:?}");
    let verdict = linearization_verdict(&pres).map_err(err)?;
    ensure!(verdict.outcome == Outcome::Linear, "verdict {:?}", verdict.outcome);

    let ex12 = ah_presentation(&example_3ii_weights(4)).map_err(err)?;
    let mut only_e = ex12.clone();
    for t in &mut only_e.terms {
        if matches!(t.label, DivisorLabel::Exceptional(_)) {
            t.coefficient = t.coefficient.translate(&qvec(&[1, 0])).map_err(err)?;
        }
    }
    ensure!(!shift_equivalent(&ex12, &only_e).map_err(err)?, "moving only the exceptional coefficient is absorbed");
    Ok("A^2, two segment terms up to shift, split {1,2} | {3,4}, Linear; both negative controls rejected".into())
}

fn relation_set(rels: &[Poly], vars: &[String], want: &[&str]) -> Result<(), String> {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    ensure!(rels.len() == want.len(), "{} relations, expected {}", rels.len(), want.len());
    for w in want {
        let w = Poly::parse(w, &names).map_err(err)?;
        ensure!(rels.iter().any(|r| r.is_proportional(&w)), "no relation proportional to {w}");
    }
    Ok(())
}

fn criterion_3() -> Check {
    let c1 = CurveSpec::parse("u", Some(("0", "t"))).map_err(err)?;
    let c2 = CurveSpec::parse("u + v + v^2", Some(("-t - t^2", "t"))).map_err(err)?;
    let snc = snc_check(&c1, &c2).map_err(err)?;
    let got: BTreeSet<QVector> = snc.point_coordinates().into_iter().collect();
    let want: BTreeSet<QVector> = [qvec(&[0, 0]), qvec(&[0, -1])].into_iter().collect();
    ensure!(got == want, "crossing points {got:?}");
    ensure!(!snc.irrational_points && snc.all_transverse == Decision::Yes, "crossings are not all transverse");

    let linear = presentation_from_spec(&builtin("example-11-linear").map_err(err)?.presentation.unwrap()).map_err(err)?;
    let alg = presentation_bounded(&linear, 2).map_err(err)?;
    relation_set(&alg.relations, &alg.variables(), &["x1*x2 - u", "x3*x4 - v"])?;

    let curved = presentation_from_spec(&builtin("example-11-curves").map_err(err)?.presentation.unwrap()).map_err(err)?;
    let alg = presentation_bounded(&curved, 2).map_err(err)?.eliminate("u").map_err(err)?;
    relation_set(&alg.relations, &alg.variables(), &["x3*x4 - x1*x2 - v - v^2"])?;
    for r in &alg.relations {
        ensure!(alg.is_homogeneous(r), "relation {r} is not weight-homogeneous");
    }
    Ok("crossings {(0,0), (0,-1)} transverse; x1*x2 - u, x3*x4 - v; x3*x4 - x1*x2 - v - v^2 after eliminating u".into())
}

fn criterion_4() -> Check {
    let ex12 = ah_presentation(&displayed("example-12").0).map_err(err)?;
    let zero = || hull(&[&[0, 0]]);
    let want12 = toric(&[(&[1, 0], zero()), (&[0, 1], zero()), (&[1, 1], hull(&[&[0, 0], &[-1, 0], &[0, -1]]))]);
    ensure!(shift_equivalent(&ex12, &want12).map_err(err)?, "example 12 differs from the negative simplex on E");
    let ex12b = ah_presentation(&displayed("example-12b").0).map_err(err)?;
    let want12b = toric(&[
        (&[1, 0], zero()),
        (&[0, 1], hull(&[&[0, 1], &[1, 0]])),
        (&[1, 1], hull(&[&[0, 0], &[1, 0], &[0, 1]])),
    ]);
    ensure!(shift_equivalent(&ex12b, &want12b).map_err(err)?, "fourth example differs from segment plus simplex");
    ensure!(!shift_equivalent(&ex12, &ex12b).map_err(err)?, "the two examples are equivalent to each other");
    Ok("negative simplex on E; segment and standard simplex; the two are inequivalent".into())
}

/// Minimal nonzero `e >= 0` with `e F = 0` and `|e| <= bound`, by brute force.
fn hilbert_basis_oracle(f: &IntMatrix, bound: u32) -> BTreeSet<Vec<u32>> {
    let (n, k) = (f.nrows(), f.ncols());
    let rows: Vec<Vec<i64>> = f.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
    let mut sols: Vec<Vec<u32>> = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        let total: u32 = e.iter().sum();
        if total > 0 && total <= bound && (0..k).all(|j| (0..n).map(|i| e[i] as i64 * rows[i][j]).sum::<i64>() == 0) {
            sols.push(e.clone());
        }
        let mut i = 0;
        while i < n {
            e[i] += 1;
            if e.iter().sum::<u32>() <= bound {
                break;
            }
            e[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    let below = |a: &Vec<u32>, b: &Vec<u32>| a != b && a.iter().zip(b).all(|(x, y)| x <= y);
    sols.iter().filter(|s| !sols.iter().any(|t| below(t, s))).cloned().collect()
}

fn criterion_5() -> Check {
    let (f, p) = displayed("example-13");
    ensure!(f == example_13_weights(), "stored weights differ");
    ensure!((&p * &f).is_zero(), "P F is not zero");
    let want: BTreeSet<Vec<u32>> = [vec![0, 1, 2, 2, 0], vec![0, 1, 2, 0, 3], vec![1, 1, 2, 0, 0]].into_iter().collect();
    for bound in [6, 15] {
        let report = invariant_ring_generators(&f, bound).map_err(err)?;
        let got: BTreeSet<Vec<u32>> = report.generators.into_iter().collect();
        ensure!(got == want, "bound {bound}: {got:?}");
        let oracle = hilbert_basis_oracle(&f, bound);
        ensure!(oracle == want, "bound {bound}: brute force gives {oracle:?}");
    }
    Ok("P F = 0; z^2*y1*y2^2, t^3*y1*y2^2, x*y1*y2^2 at bounds 6 and 15, matching brute force".into())
}

fn criterion_6() -> Check {
    let f = example_13_weights();
    let vars = ["x", "y1", "y2", "z", "t"];
    let g = Poly::parse("x + x^2*y1*y2^2 + z^2 + t^3", &vars).map_err(err)?;
    let weight = check_equivariant_hypersurface(&f, &g).map_err(err)?;
    // Each monomial's weight is its exponent vector times the weight rows,
    // e.g. x alone picks the first row (6, 0).
    for e in g.monomials() {
        let w: Vec<i64> = (0..2)
            .map(|j| (0..5).map(|i| e[i] as i64 * i64::try_from(f.get(i, j)).unwrap()).sum())
            .collect();
        ensure!(ints(&w) == weight, "monomial {e:?} has weight {w:?}, reported {weight:?}");
    }
    ensure!(weight == ints(&[6, 0]), "weight {weight:?}");
    Ok("single common weight (6, 0)".into())
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for name in ["example-10", "example-12"] {
        let (f, _) = displayed(name);
        let pres = ah_presentation(&f).map_err(err)?;
        for ell in directions(2, 2) {
            let report = fixed_components(&pres, &ell).map_err(err)?;
            let survivors = oracle_fixed_points_linear(&f, &ell).map_err(err)?;
            ensure!(
                report.positive_dimensional() == Some(!survivors.is_empty()),
                "{name}, l = {ell:?}: {:?} against {} surviving coordinates",
                report.fixed_locus_dim,
                survivors.len()
            );
            ensure!(
                report.fixed_locus_dim == FixedLocusDim::Dim(survivors.len()),
                "{name}, l = {ell:?}: dimension {:?}, oracle {}",
                report.fixed_locus_dim,
                survivors.len()
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} directions agree, including the fixed locus dimension"))
}

fn criterion_8() -> Check {
    let mut names = Vec::new();
    for (name, suite) in common::suites() {
        suite(1000).map_err(|e| format!("{name}: {e}"))?;
        names.push(name);
    }
    Ok(format!("{} suites at 1000 cases each", names.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Check); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        match check() {
            Ok(msg) => println!("criterion {n}: PASS {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
