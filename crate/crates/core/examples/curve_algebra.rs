//! Generators and relations of the algebra of a divisor with segment
//! coefficients over two plane curves.

use ahtorus::algebra::presentation_bounded;
use ahtorus::io::{builtin, input::presentation_from_spec};

fn main() {
    for name in ["example-11-linear", "example-11-curves"] {
        let spec = builtin(name).unwrap().presentation.unwrap();
        let pres = presentation_from_spec(&spec).unwrap();
        let alg = presentation_bounded(&pres, 2).unwrap();
        println!("{name}: variables {:?}", alg.variables());
        for g in &alg.generators {
            println!("  {} has weight {:?} and section {}", g.name, g.weight, g.section);
        }
        for r in &alg.relations {
            println!("  relation {r}");
        }
        let reduced = alg.eliminate("u").unwrap();
        let rels: Vec<String> = reduced.relations.iter().map(|r| r.to_string()).collect();
        println!("  without u: {:?} over {:?}", rels, reduced.variables());
    }
}
