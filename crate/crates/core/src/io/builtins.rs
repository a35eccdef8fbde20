//! The worked examples, available by name.

use serde_json::json;

use super::input::{CurveInput, JobKind, JobSpec, PresentationSpec, TermSpec};
use super::CliError;
use crate::lattice::IntMatrix;
use crate::serial::JsonQ;

/// A named example: weight matrix and the cokernel matrix as usually
/// displayed, or a presentation over the plane with its curves.
#[derive(Debug, Clone)]
pub struct Builtin {
    pub name: String,
    pub description: String,
    pub weights: Option<IntMatrix>,
    pub displayed_cokernel: Option<IntMatrix>,
    pub presentation: Option<PresentationSpec>,
    pub curves: Vec<CurveInput>,
    /// Coordinate names and a polynomial in them.
    pub hypersurface: Option<(Vec<String>, String)>,
    /// Bound for the invariant search, when invariants are part of the
    /// example.
    pub invariant_bound: Option<u32>,
}

impl Builtin {
    fn matrices(name: &str, description: &str, f: IntMatrix, p: IntMatrix) -> Self {
        Builtin {
            name: name.into(),
            description: description.into(),
            weights: Some(f),
            displayed_cokernel: Some(p),
            presentation: None,
            curves: Vec::new(),
            hypersurface: None,
            invariant_bound: None,
        }
    }

    /// The job this example is meant to run.
    pub fn job(&self) -> JobSpec {
        let weights = |f: &IntMatrix| {
            json!(f.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
        };
        let (kind, payload) = if let Some(p) = &self.presentation {
            (JobKind::Classify, json!({ "presentation": p, "curves": self.curves }))
        } else if let Some((vars, g)) = &self.hypersurface {
            let f = self.weights.as_ref().expect("hypersurface examples carry weights");
            (JobKind::Invariants, json!({ "weights": weights(f), "variables": vars, "hypersurface": g }))
        } else if let Some(bound) = self.invariant_bound {
            let f = self.weights.as_ref().expect("invariant examples carry weights");
            (JobKind::Invariants, json!({ "weights": weights(f), "bound": bound }))
        } else {
            let f = self.weights.as_ref().expect("matrix examples carry weights");
            (JobKind::Present, json!({ "weights": weights(f) }))
        };
        JobSpec { kind, payload }
    }
}

fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

/// Two rows of ones over `-I_{n-2}`.
pub fn example_3ii_weights(n: usize) -> IntMatrix {
    let k = n - 2;
    let mut rows = vec![vec![1; k], vec![1; k]];
    rows.extend((0..k).map(|i| (0..k).map(|j| if i == j { -1 } else { 0 }).collect()));
    m(rows)
}

/// First row `(n-2, n-3, ..., 1)`, then a row of ones over `-I_{n-2}`.
pub fn example_3iii_weights(n: usize) -> IntMatrix {
    let k = n - 2;
    let mut rows = vec![(1..=k as i64).rev().collect(), vec![1; k]];
    rows.extend((0..k).map(|i| (0..k).map(|j| if i == j { -1 } else { 0 }).collect()));
    m(rows)
}

fn example_3ii_cokernel(n: usize) -> IntMatrix {
    let mut top = vec![1, 0];
    let mut bottom = vec![0, 1];
    top.extend(std::iter::repeat_n(1, n - 2));
    bottom.extend(std::iter::repeat_n(1, n - 2));
    m(vec![top, bottom])
}

fn example_3iii_cokernel(n: usize) -> IntMatrix {
    let mut top = vec![1, 0];
    let mut bottom = vec![0, 1];
    top.extend((1..=(n - 2) as i64).rev());
    bottom.extend(std::iter::repeat_n(1, n - 2));
    m(vec![top, bottom])
}

pub fn example_13_weights() -> IntMatrix {
    m(vec![vec![6, 0], vec![-6, 2], vec![0, -1], vec![3, 0], vec![2, 0]])
}

fn segment_term(name: &str, f: &str, end: [i64; 2]) -> TermSpec {
    let q = |x: i64| JsonQ(crate::qmath::q(x));
    TermSpec {
        ray: None,
        name: Some(name.into()),
        f: Some(f.into()),
        vertices: vec![vec![q(0), q(0)], vec![q(end[0]), q(end[1])]],
        rays: Vec::new(),
    }
}

fn curve_example(name: &str, description: &str, curves: [(&str, [&str; 2]); 2]) -> Builtin {
    let spec = PresentationSpec {
        rank: 2,
        terms: vec![segment_term("C1", curves[0].0, [-1, 0]), segment_term("C2", curves[1].0, [0, -1])],
    };
    Builtin {
        name: name.into(),
        description: description.into(),
        weights: None,
        displayed_cokernel: None,
        presentation: Some(spec),
        curves: curves
            .iter()
            .map(|(f, [p, q])| CurveInput { f: f.to_string(), param: Some([p.to_string(), q.to_string()]) })
            .collect(),
        hypersurface: None,
        invariant_bound: None,
    }
}

/// Every built-in example, in a fixed order.
pub fn builtin_examples() -> Vec<Builtin> {
    let axes = || m(vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
    let axes_p = || m(vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
    let mut out = vec![Builtin::matrices(
        "example-3i",
        "A^4 with two opposite pairs of weights; Y = A^2",
        axes(),
        axes_p(),
    )];
    for n in 4..=8 {
        out.push(Builtin::matrices(
            &format!("example-3ii-n{n}"),
            &format!("A^{n}, two rows of ones over -I; Y = A^2 blown up once"),
            example_3ii_weights(n),
            example_3ii_cokernel(n),
        ));
    }
    for n in 4..=8 {
        out.push(Builtin::matrices(
            &format!("example-3iii-n{n}"),
            &format!("A^{n} with first weight row (n-2, ..., 1); Y has {} exceptional curves", n - 2),
            example_3iii_weights(n),
            example_3iii_cokernel(n),
        ));
    }
    out.push(Builtin::matrices(
        "example-10",
        "product of two copies of A^2 with complexity-one actions",
        axes(),
        axes_p(),
    ));
    out.push(curve_example(
        "example-11-linear",
        "segments over the curves u = 0 and v = 0: the linear action on A^4",
        [("u", ["0", "t"]), ("v", ["t", "0"])],
    ));
    out.push(curve_example(
        "example-11-curves",
        "segments over u = 0 and u + v + v^2 = 0, two affine lines meeting twice",
        [("u", ["0", "t"]), ("u + v + v^2", ["-t - t^2", "t"])],
    ));
    out.push(Builtin::matrices(
        "example-12",
        "A^4, Y = A^2 blown up at the origin, negative standard simplex on E",
        example_3ii_weights(4),
        example_3ii_cokernel(4),
    ));
    out.push(Builtin::matrices(
        "example-12b",
        "A^4, Y = A^2 blown up at the origin, a segment on D1 and the standard simplex on E",
        m(vec![vec![1, 1], vec![-1, -1], vec![-1, 0], vec![0, -1]]),
        m(vec![vec![1, 1, 0, 0], vec![1, 0, 1, 1]]),
    ));
    let mut ex13 = Builtin::matrices(
        "example-13",
        "A^5 = Spec C[x, y1, y2, z, t] with a two-dimensional torus; quotient A^3",
        example_13_weights(),
        m(vec![vec![1, 1, 2, 0, 0], vec![0, 1, 2, 2, 0], vec![0, 1, 2, 0, 3]]),
    );
    ex13.invariant_bound = Some(15);
    out.push(ex13);
    let mut ex15 = Builtin::matrices(
        "example-15-hypersurface",
        "the hypersurface x + x^2 y1 y2^2 + z^2 + t^3 = 0 in A^5, stable under the torus",
        example_13_weights(),
        m(vec![vec![1, 1, 2, 0, 0], vec![0, 1, 2, 2, 0], vec![0, 1, 2, 0, 3]]),
    );
    ex15.hypersurface = Some((
        ["x", "y1", "y2", "z", "t"].map(String::from).to_vec(),
        "x + x^2*y1*y2^2 + z^2 + t^3".into(),
    ));
    out.push(ex15);
    out
}

pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = builtin_examples().into_iter().map(|b| b.name).collect();
    names.push("example-3ii".into());
    names.push("example-3iii".into());
    names
}

/// Look up an example; `example-3ii` and `example-3iii` mean `n = 4`.
pub fn builtin(name: &str) -> Result<Builtin, CliError> {
    let name = match name {
        "example-3ii" => "example-3ii-n4",
        "example-3iii" => "example-3iii-n4",
        other => other,
    };
    builtin_examples()
        .into_iter()
        .find(|b| b.name == name)
        .ok_or_else(|| CliError::NotFound(name.to_string()))
}
