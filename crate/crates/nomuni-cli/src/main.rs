use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nomuni::pattern::UnifyOutcome;
use nomuni::solve::{solve_with, SolveOptions, SolveReport};
use nomuni::text::{format_solution, parse_problem, Format};
use rayon::prelude::*;
use serde_json::{json, Value};

const SOLVABLE: u8 = 0;
const UNSOLVABLE: u8 = 1;
const INPUT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "nomuni", version, about = "Nominal unification through higher-order patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a problem file, or every file of a directory with --batch.
    Solve(SolveArgs),
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    /// Problem file.
    #[arg(required_unless_present = "batch")]
    file: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Print the translated pattern problem.
    #[arg(long)]
    emit_pattern: bool,

    /// Print the rules applied by the pattern unifier.
    #[arg(long)]
    trace: bool,

    /// Print solutions without checking them against the problem.
    #[arg(long)]
    no_verify: bool,

    /// Atom list order, comma separated. Atoms left out follow in order of occurrence.
    #[arg(long, value_delimiter = ',')]
    atoms: Option<Vec<String>>,

    /// Solve every file in this directory, in parallel.
    #[arg(long, conflicts_with = "file")]
    batch: Option<PathBuf>,

    /// First counter value for fresh variable names.
    #[arg(long, env = "NOMUNI_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// What one file produced: its rendering and exit code.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

fn solve_file(path: &Path, args: &SolveArgs) -> Outcome {
    let error = |msg: String| Outcome {
        text: format!("error: {msg}"),
        json: json!({ "status": "error", "error": msg }),
        code: INPUT_ERROR,
    };
    let src = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return error(format!("{}: {e}", path.display())),
    };
    let problem = match parse_problem(&src) {
        Ok(p) => p,
        Err(e) => return error(e.to_string()),
    };
    let opts = SolveOptions {
        atoms: args.atoms.clone(),
        seed: args.seed,
        trace: args.trace,
        verify: !args.no_verify,
    };
    match solve_with(&problem, &opts) {
        Ok(report) => render(&report, args),
        Err(e) => error(e.to_string()),
    }
}

fn render(r: &SolveReport, args: &SolveArgs) -> Outcome {
    let mut text = Vec::new();
    let mut json = json!({});
    if args.emit_pattern {
        text.push(format!("atoms: {}", r.atoms));
        text.push("pattern:".to_string());
        let eqs: Vec<String> = r.pattern.equations.iter().map(|(t, u)| format!("{t} = {u}")).collect();
        text.extend(eqs.iter().map(|e| format!("  {e}")));
        json["atoms"] = json!(r.atoms.atoms().iter().map(|a| &a.name).collect::<Vec<_>>());
        json["pattern"] = json!(eqs);
    }
    if args.trace {
        text.push("trace:".to_string());
        let lines: Vec<String> = r.trace.iter().map(|l| l.to_string()).collect();
        text.extend(lines.iter().map(|l| format!("  {l}")));
        json["trace"] = json!(lines);
    }
    let code = match (&r.outcome, &r.solution) {
        (UnifyOutcome::Failure(f), _) => {
            text.push(format!("unsolvable: {f}"));
            json["status"] = json!("unsolvable");
            json["failure"] = json!(f.to_string());
            UNSOLVABLE
        }
        (UnifyOutcome::Unifier(_), Some(sol)) => {
            text.push(format_solution(sol, Format::Text));
            if !r.verified {
                text.push("warning: solution not verified".to_string());
            }
            json["status"] = json!("solvable");
            json["verified"] = json!(r.verified);
            json["solution"] = serde_json::from_str(&format_solution(sol, Format::Json)).expect("valid JSON");
            SOLVABLE
        }
        (UnifyOutcome::Unifier(_), None) => unreachable!("a unifier always reads back"),
    };
    Outcome {
        text: text.join("\n"),
        json,
        code,
    }
}

fn batch_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn main() -> ExitCode {
    let Command::Solve(args) = Cli::parse().command;
    let json = args.format == OutputFormat::Json;
    let Some(dir) = &args.batch else {
        let out = solve_file(args.file.as_deref().expect("clap requires FILE"), &args);
        if json {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("valid JSON"));
        } else if out.code == INPUT_ERROR {
            eprintln!("{}", out.text);
        } else {
            println!("{}", out.text);
        }
        return ExitCode::from(out.code);
    };
    let files = match batch_files(dir) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {}: {e}", dir.display());
            return ExitCode::from(INPUT_ERROR);
        }
    };
    let outs: Vec<Outcome> = files.par_iter().map(|f| solve_file(f, &args)).collect();
    if json {
        let all: Vec<Value> = files
            .iter()
            .zip(&outs)
            .map(|(f, o)| {
                let mut v = o.json.clone();
                v["file"] = json!(f.display().to_string());
                v
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&all).expect("valid JSON"));
    } else {
        for (f, o) in files.iter().zip(&outs) {
            println!("== {}\n{}", f.display(), o.text);
        }
    }
    ExitCode::from(outs.iter().map(|o| o.code).max().unwrap_or(SOLVABLE))
}
