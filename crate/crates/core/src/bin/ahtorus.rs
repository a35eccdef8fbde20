use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ahtorus::io::{self, CliError, JobKind, JobSpec};

#[derive(Parser)]
#[command(name = "ahtorus", version, about = "Polyhedral divisors of torus actions on affine space")]
struct Cli {
    /// Read the payload (or the job, for `run`) from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Do not print the text report on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation of a weight matrix.
    Present,
    /// Evaluate the divisor at a degree, e.g. --u "1,0".
    Evaluate {
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// Fixed loci of one-parameter subgroups up to a height.
    FixedPoints {
        #[arg(long)]
        height: Option<u32>,
    },
    /// Invariant monomials up to a degree bound.
    Invariants {
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Curve checks and the linearization verdict.
    Classify,
    /// A built-in example; --list prints the names.
    Example {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Run a job file `{"kind": ..., "payload": ...}`.
    Run,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(s)
        }
    }
}

fn with_payload(kind: JobKind, cli: &Cli, set: impl FnOnce(&mut Value)) -> Result<JobSpec, CliError> {
    let mut job = io::job_from_payload(kind, &read_input(&cli.input)?)?;
    set(&mut job.payload);
    Ok(job)
}

fn parse_u(text: &str) -> Result<Value, CliError> {
    let parts: Result<Vec<String>, _> = text
        .split(',')
        .map(|p| p.trim().parse::<num_bigint::BigInt>().map(|x| x.to_string()))
        .collect();
    parts.map(|p| json!(p)).map_err(|_| CliError::Schema {
        pointer: "/payload/u".into(),
        message: format!("--u expects comma-separated integers, got {text:?}"),
    })
}

fn job(cli: &Cli) -> Result<Option<JobSpec>, CliError> {
    Ok(Some(match &cli.command {
        Command::Present => with_payload(JobKind::Present, cli, |_| ())?,
        Command::Classify => with_payload(JobKind::Classify, cli, |_| ())?,
        Command::Run => io::parse_job(&read_input(&cli.input)?)?,
        Command::Evaluate { u } => {
            let u = u.as_deref().map(parse_u).transpose()?;
            with_payload(JobKind::Evaluate, cli, |p| {
                if let Some(u) = u {
                    p["u"] = u;
                }
            })?
        }
        Command::FixedPoints { height } => with_payload(JobKind::FixedPoints, cli, |p| {
            if let Some(h) = height {
                p["height"] = json!(h);
            }
        })?,
        Command::Invariants { bound } => with_payload(JobKind::Invariants, cli, |p| {
            if let Some(b) = bound {
                p["bound"] = json!(b);
            }
        })?,
        Command::Example { list: true, .. } => {
            for n in io::builtin_names() {
                println!("{n}");
            }
            return Ok(None);
        }
        Command::Example { name, .. } => {
            let payload = match name {
                Some(n) => json!({ "name": n }),
                None => serde_json::from_str(&read_input(&cli.input)?)
                    .map_err(|e| CliError::Schema { pointer: String::new(), message: e.to_string() })?,
            };
            JobSpec { kind: JobKind::Example, payload }
        }
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = job(&cli).and_then(|j| j.map(|j| io::run(&j)).transpose());
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            print!("{}", report.json_string());
            if !cli.quiet {
                eprint!("{}", report.text);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("plain JSON"));
            if !cli.quiet {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
