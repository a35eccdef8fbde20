//! Crossings of the quotient curves, affine-line parametrizations, cyclic
//! group invariance, product splitting and the linearization verdict.

use ahtorus::classification::{
    a1_check, classify, linearization_verdict, mu_invariance_check, product_split, snc_check, CurveSpec, MuAction,
};
use ahtorus::io::builtins::example_3ii_weights;
use ahtorus::lattice::IntMatrix;
use ahtorus::presentation::ah_presentation;
use ahtorus::serial::fmt_q_vec;

fn main() {
    let c1 = CurveSpec::parse("u", Some(("0", "t"))).unwrap();
    let c2 = CurveSpec::parse("u + v + v^2", Some(("-t - t^2", "t"))).unwrap();
    let snc = snc_check(&c1, &c2).unwrap();
    let points: Vec<String> = snc.point_coordinates().iter().map(|p| fmt_q_vec(p)).collect();
    println!("points {points:?}, transverse {:?}", snc.all_transverse);
    println!("affine lines: {:?} {:?}", a1_check(&c1).unwrap(), a1_check(&c2).unwrap());

    let tangent = CurveSpec::parse("u - v^2", None).unwrap();
    println!("u and u - v^2 cross transversally: {:?}", snc_check(&c1, &tangent).unwrap().all_transverse);

    let mu = MuAction::new(2, 0, 1).unwrap();
    println!("u + v^2 under mu_2: {:?}", mu_invariance_check(&CurveSpec::parse("u + v^2", None).unwrap(), &mu));

    let ex10 = IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
    println!("example 10 splits as {:?}", product_split(&ex10).unwrap());
    println!("example 12 splits as {:?}", product_split(&example_3ii_weights(4)).unwrap());

    for (name, f) in [("example 10", ex10), ("example 12", example_3ii_weights(4))] {
        let p = ah_presentation(&f).unwrap();
        let v = linearization_verdict(&p).unwrap();
        println!("{name}: {:?}, {:?}", v.outcome, v.evidence.notes);
        println!("  pipeline: {:?}", classify(&p, Some(&f), &[], None).unwrap().outcome);
    }
}
