//! Smith normal form of a weight matrix and the exact sequence
//! `0 -> Z^k -F-> Z^n -P-> Z^2 -> 0` with a section `s`.

use ahtorus::lattice::{exact_sequence, smith_normal_form, IntMatrix};

fn main() {
    let f = IntMatrix::from_i64(&[&[6, 0], &[-6, 2], &[0, -1], &[3, 0], &[2, 0]]);
    let snf = smith_normal_form(&f);
    println!("invariant factors of F: {:?}", snf.invariant_factors());
    assert_eq!(&(&snf.u * &f) * &snf.v, snf.s);

    let seq = exact_sequence(&f).expect("F is saturated");
    println!("P = {:?}", seq.cokernel.to_rows());
    println!("s = {:?}", seq.section.to_rows());
    assert!((&seq.cokernel * &f).is_zero());
    assert!((&seq.section * &f).is_identity());

    let displayed = IntMatrix::from_i64(&[&[1, 1, 2, 0, 0], &[0, 1, 2, 2, 0], &[0, 1, 2, 0, 3]]);
    println!("same row lattice as the displayed P: {}", displayed.same_row_lattice(&seq.cokernel));
}
