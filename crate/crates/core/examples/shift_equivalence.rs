//! Coefficients are defined up to a shift by an integral linear map and a
//! global sign; compare a computed presentation with a hand-written one.

use ahtorus::lattice::IntMatrix;
use ahtorus::polyhedra::Polyhedron;
use ahtorus::presentation::{ah_presentation, ah_presentation_with_section, shift_equivalence, AHPresentation};
use ahtorus::qmath::qvec;
use num_bigint::BigInt;

fn main() {
    let f = IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
    let computed = ah_presentation(&f).unwrap();
    let ray = |a: i64, b: i64| vec![BigInt::from(a), BigInt::from(b)];
    let seg = |end: &[i64]| Polyhedron::polytope(&[qvec(&[0, 0]), qvec(end)]).unwrap();
    let expected = AHPresentation::toric(2, vec![(ray(1, 0), seg(&[-1, 0])), (ray(0, 1), seg(&[0, -1]))]).unwrap();

    println!("computed: {}", computed.formal_sum());
    println!("expected: {}", expected.formal_sum());
    match shift_equivalence(&computed, &expected).unwrap() {
        Some(w) => println!("equivalent with sign {} and shifts {:?}", w.sign, w.shifts),
        None => println!("not equivalent"),
    }

    let other_section = IntMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 0, -1]]);
    let moved = ah_presentation_with_section(&f, &other_section).unwrap();
    println!("another section: {}", moved.formal_sum());
    println!("still equivalent: {}", shift_equivalence(&computed, &moved).unwrap().is_some());
}
