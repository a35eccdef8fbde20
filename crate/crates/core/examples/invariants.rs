//! Invariant monomials of a torus acting on `A^5` and a stable hypersurface.

use ahtorus::algebra::{check_equivariant_hypersurface, invariant_ring_generators};
use ahtorus::io::builtins::example_13_weights;
use ahtorus::poly::Poly;

fn main() {
    let f = example_13_weights();
    let vars: Vec<String> = ["x", "y1", "y2", "z", "t"].map(String::from).to_vec();
    let report = invariant_ring_generators(&f, 15).unwrap();
    println!("invariants: {:?}", report.monomials(&vars));
    println!("extreme rays: {:?}", report.extreme_rays);
    println!("status: {:?}", report.status);

    let g = Poly::parse("x + x^2*y1*y2^2 + z^2 + t^3", &["x", "y1", "y2", "z", "t"]).unwrap();
    let w = check_equivariant_hypersurface(&f, &g).unwrap();
    println!("{g} has weight {:?}", w.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let bad = Poly::parse("x + z", &["x", "y1", "y2", "z", "t"]).unwrap();
    println!("{bad}: {}", check_equivariant_hypersurface(&f, &bad).unwrap_err());
}
