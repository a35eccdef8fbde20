//! The command-line binary: exit codes, determinism and the JSON contract.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

fn ahtorus(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ahtorus"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const EX10: &str = r#"{"weights":[[1,0],[-1,0],[0,1],[0,-1]]}"#;

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct Polyhedron {
    vertices: Vec<Vec<[String; 2]>>,
    rays: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct Term {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    ray: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    columns: Option<Vec<usize>>,
    coefficient: Polyhedron,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct Surface {
    kind: String,
    description: String,
    rays: Vec<Vec<String>>,
    quotient_order: String,
    exceptional_count: usize,
    cone_determinants: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct Sequence {
    weights: Vec<Vec<String>>,
    cokernel: Vec<Vec<String>>,
    section: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct Presentation {
    lattice_rank: usize,
    surface: Surface,
    terms: Vec<Term>,
    tail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    sequence: Option<Sequence>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct PresentReport {
    schema_version: String,
    kind: String,
    formal_sum: String,
    presentation: Presentation,
}

#[test]
fn exit_codes_by_error_family() {
    let ok = ahtorus(&["present", "--quiet"], EX10);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty(), "--quiet leaves stderr empty");

    let io = ahtorus(&["present", "--input", "/nonexistent/job.json"], "");
    assert_eq!(io.status.code(), Some(1));
    assert_eq!(json_out(&io)["error"], "io");

    let schema = ahtorus(&["present"], r#"{"weights":[[1,0],["x",0]]}"#);
    assert_eq!(schema.status.code(), Some(2));
    assert_eq!(json_out(&schema)["pointer"], "/payload/weights/1/0");

    let unknown = ahtorus(&["example", "--name", "example-99"], "");
    assert_eq!(unknown.status.code(), Some(2));
    assert_eq!(json_out(&unknown)["error"], "not_found");

    let precondition = ahtorus(&["present"], r#"{"weights":[[1],[1]]}"#);
    assert_eq!(precondition.status.code(), Some(3));
    assert!(json_out(&precondition)["message"].as_str().unwrap().contains("not fully hyperbolic"));

    let curves = json!({
        "presentation": {"rank": 2, "terms": [
            {"name": "C1", "f": "u", "vertices": [[0, 0], [-1, 0]]},
            {"name": "C2", "f": "u - v^2 - 2", "vertices": [[0, 0], [0, -1]]}
        ]},
        "curves": [{"f": "u"}, {"f": "u - v^2 - 2"}]
    });
    let undecided = ahtorus(&["classify", "--quiet"], &curves.to_string());
    assert_eq!(undecided.status.code(), Some(4));
    assert_eq!(json_out(&undecided)["report"]["outcome"], "Undecided");
}

#[test]
fn text_report_goes_to_stderr() {
    let out = ahtorus(&["present"], EX10);
    let text = String::from_utf8(out.stderr).unwrap();
    assert!(text.contains("H1") && text.contains("H2"), "{text}");
}

#[test]
fn builtin_output_is_deterministic() {
    let list = ahtorus(&["example", "--list"], "");
    let names = String::from_utf8(list.stdout).unwrap();
    for name in names.lines().filter(|n| !n.contains("-n5") && !n.contains("-n6") && !n.contains("-n7")) {
        let a = ahtorus(&["example", "--name", name, "--quiet"], "");
        let b = ahtorus(&["example", "--name", name, "--quiet"], "");
        assert_eq!(a.status.code(), Some(0), "{name}");
        assert_eq!(a.stdout, b.stdout, "{name}");
        let matches = &json_out(&a)["cokernel_matches_display"];
        assert!(matches.is_null() || matches == &json!(true), "{name}");
    }
}

#[test]
fn flags_override_the_payload() {
    let out = ahtorus(&["evaluate", "--u", "-1,2", "--quiet"], EX10);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out)["u"], json!(["-1", "2"]));
    let job = json!({"kind": "fixed-points", "payload": {"weights": serde_json::from_str::<Value>(EX10).unwrap()["weights"], "height": 1}});
    let run = ahtorus(&["run", "--quiet"], &job.to_string());
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(json_out(&run)["kind"], "fixed-points");
}

#[test]
fn present_report_round_trips() {
    let out = ahtorus(&["present", "--quiet"], r#"{"weights":[[1,1],[-1,-1],[-1,0],[0,-1]]}"#);
    let raw = json_out(&out);
    let typed: PresentReport = serde_json::from_value(raw.clone()).expect("report matches the typed mirror");
    assert_eq!(serde_json::to_value(&typed).unwrap(), raw);
    assert_eq!(typed.schema_version, "1");
    assert_eq!(typed.presentation.surface.exceptional_count, 1);

    // Feeding the terms back as a hand-built presentation gives the same divisor.
    let terms: Vec<Value> = typed
        .presentation
        .terms
        .iter()
        .map(|t| json!({"ray": t.ray, "vertices": t.coefficient.vertices, "rays": t.coefficient.rays}))
        .collect();
    let again = ahtorus(&["present", "--quiet"], &json!({"presentation": {"rank": 2, "terms": terms}}).to_string());
    assert_eq!(again.status.code(), Some(0), "{}", String::from_utf8_lossy(&again.stdout));
    assert_eq!(json_out(&again)["formal_sum"], json!(typed.formal_sum));
}

#[test]
fn schema_lists_every_kind() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/ahtorus.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(schema["version"], "1");
    let kinds = &schema["$defs"]["job"]["properties"]["kind"]["enum"];
    let kinds: Vec<&str> = kinds.as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    assert_eq!(kinds, ["present", "evaluate", "fixed-points", "invariants", "classify", "example"]);
    for kind in kinds {
        let job = json!({"kind": kind, "payload": {}});
        let out = ahtorus(&["run", "--quiet"], &job.to_string());
        assert!(matches!(out.status.code(), Some(2 | 3)), "{kind}: empty payload is rejected");
    }
}
