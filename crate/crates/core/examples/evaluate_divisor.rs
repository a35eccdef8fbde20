//! Evaluate a polyhedral divisor at characters `u` and read off the graded
//! pieces of its algebra.

use ahtorus::algebra::{evaluate, graded_piece, sections_toric};
use ahtorus::io::builtins::example_3ii_weights;
use ahtorus::io::{builtin, input::presentation_from_spec};
use ahtorus::presentation::ah_presentation;
use num_bigint::BigInt;

fn main() {
    let p = ah_presentation(&example_3ii_weights(4)).unwrap();
    println!("D = {}", p.formal_sum());
    for u in [[1, 0], [0, 1], [-1, -1], [2, -1]] {
        let u: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
        let d = evaluate(&p, &u).unwrap();
        let s = sections_toric(&p, &u).unwrap();
        println!("D({:?}) = {d}; bounds {:?}", u, s.bounds);
    }

    let spec = builtin("example-11-curves").unwrap().presentation.unwrap();
    let plane = presentation_from_spec(&spec).unwrap();
    println!("D = {}", plane.formal_sum());
    for u in [[1, 0], [-1, 0], [0, -1], [-1, -1]] {
        let u: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
        let g = graded_piece(&plane, &u).unwrap();
        println!("A_{:?} = C[u,v] * {}", u, g.generator());
    }
}
