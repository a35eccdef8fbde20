//! Exact polyhedra: vertex enumeration, Minkowski sums, support functions
//! and faces.

use ahtorus::polyhedra::{minkowski_sum, vertex_enumeration, Polyhedron};
use ahtorus::qmath::{q, qvec};
use ahtorus::serial::{fmt_q, fmt_q_vec};

fn main() {
    // x >= 0, y >= 0, x + y <= 1
    let ineqs = vec![(qvec(&[1, 0]), q(0)), (qvec(&[0, 1]), q(0)), (qvec(&[-1, -1]), q(-1))];
    let simplex = vertex_enumeration(2, &[], &ineqs).unwrap().expect("feasible");
    println!("simplex = {simplex}");

    let segment = Polyhedron::polytope(&[qvec(&[0, 0]), qvec(&[-1, 0])]).unwrap();
    let sum = minkowski_sum(&simplex, &segment).unwrap();
    println!("simplex + segment = {sum}");
    for u in [qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, 2])] {
        let a = simplex.support_min(&u).unwrap();
        let b = segment.support_min(&u).unwrap();
        let c = sum.support_min(&u).unwrap();
        let show = |x: Option<&ahtorus::qmath::Q>| x.map_or("-inf".to_string(), fmt_q);
        println!("min <{}, .>: {} + {} = {}", fmt_q_vec(&u), show(a.finite()), show(b.finite()), show(c.finite()));
    }

    for face in sum.faces() {
        println!("face of dimension {} with vertices {:?}", face.dim, face.vertices);
    }

    let quadrant = Polyhedron::from_generators(2, &[qvec(&[0, 0])], &[qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
    println!("tail cone of {quadrant}: {:?}", quadrant.tail_cone().rays());
}
