//! Presentations of linear complexity-two actions: the quotient surface and
//! the polyhedral coefficient over each of its boundary divisors.

use ahtorus::io::builtins::{example_3ii_weights, example_3iii_weights};
use ahtorus::lattice::IntMatrix;
use ahtorus::presentation::ah_presentation;

fn show(name: &str, f: &IntMatrix) {
    let p = ah_presentation(f).unwrap();
    let info = p.surface_info().unwrap();
    println!("{name}: Y = {}", info.describe());
    println!("  D = {}", p.formal_sum());
}

fn main() {
    show("example 10", &IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
    for n in 4..=6 {
        show(&format!("example 3(ii), n = {n}"), &example_3ii_weights(n));
    }
    for n in 4..=6 {
        show(&format!("example 3(iii), n = {n}"), &example_3iii_weights(n));
    }
    show("example 12b", &IntMatrix::from_i64(&[&[1, 1], &[-1, -1], &[-1, 0], &[0, -1]]));
    show("a cyclic quotient", &IntMatrix::from_i64(&[&[2], &[-1], &[-1]]));
}
