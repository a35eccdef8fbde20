//! Run jobs the way the command line does and print their JSON.

use ahtorus::io::{builtin_names, parse_job, run};

fn main() {
    println!("built-in examples: {}", builtin_names().join(", "));
    let jobs = [
        r#"{"kind":"example","payload":{"name":"example-3i"}}"#,
        r#"{"kind":"present","payload":{"weights":[[1,0],[-1,0],[0,1],[0,-1]]}}"#,
        r#"{"kind":"fixed-points","payload":{"weights":[[1,0],[-1,0],[0,1],[0,-1]],"direction":[1,0]}}"#,
        r#"{"kind":"present","payload":{"weights":[[1],[1]]}}"#,
        r#"{"kind":"present","payload":{"weights":[[1,0],["one",0]]}}"#,
    ];
    for text in jobs {
        match parse_job(text).and_then(|j| run(&j)) {
            Ok(r) => print!("{}{}", r.text, r.json_string()),
            Err(e) => println!("exit {}: {}", e.exit_code(), e.to_json()),
        }
    }
}
