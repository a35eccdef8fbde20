//! Fixed loci of one-parameter subgroups, compared with the diagonal action
//! on the coordinates.

use ahtorus::fixed_points::{fixed_locus_survey, oracle_fixed_points_linear};
use ahtorus::io::builtins::example_3ii_weights;
use ahtorus::lattice::IntMatrix;
use ahtorus::presentation::ah_presentation;

fn main() {
    let cases = [
        ("example 10", IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])),
        ("example 12", example_3ii_weights(4)),
    ];
    for (name, f) in cases {
        let p = ah_presentation(&f).unwrap();
        let survey = fixed_locus_survey(&p, 2).unwrap();
        println!("{name}: D = {}", p.formal_sum());
        for r in &survey.reports {
            let coords = oracle_fixed_points_linear(&f, &r.direction).unwrap();
            println!(
                "  l = {:?}: fixed over {:?}, dimension {:?}, coordinates {:?}",
                r.direction.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                r.fixed_labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                r.fixed_locus_dim,
                coords
            );
        }
    }
}
