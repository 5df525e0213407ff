use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use unidiag::error::Error;
use unidiag::normalize::{PresentationJson, RingPresentation};
use unidiag::pipeline::{run, Outcome, Problem, Run, RunOptions, Task, Verdict};

mod summary;

/// Split and unitary-diagonalization decisions for normal matrices over
/// power series rings.
#[derive(Parser, Debug)]
#[command(name = "unidiag", version)]
struct Args {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// `split` or `diagonalize`; overrides the problem file.
    #[arg(long)]
    task: Option<Task>,
    /// Truncation order N of the series output.
    #[arg(long)]
    order: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Presentation of the integral closure to use instead of computing it.
    #[arg(long)]
    presentation: Option<PathBuf>,
    /// Which minimal prime of the Vieta ideal to use.
    #[arg(long)]
    prime_index: Option<usize>,
    /// Where to write the JSON report (default: stdout).
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Maximal number of normalization steps.
    #[arg(long)]
    normalize_budget: Option<usize>,
}

const INPUT_ERROR: u8 = 2;
const RESOURCE_ERROR: u8 = 3;
const INTERNAL_ERROR: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } | Error::UnsupportedSize(_) | Error::ShapePosition(_) => RESOURCE_ERROR,
        Error::Internal(_) | Error::Verification(_) | Error::IncompatibleTowers | Error::Degenerate(_) => INTERNAL_ERROR,
        _ => INPUT_ERROR,
    }
}

fn load(args: &Args) -> Result<(Problem, RunOptions), (u8, String)> {
    let input_err = |m: String| (INPUT_ERROR, m);
    let src = fs::read_to_string(&args.input).map_err(|e| input_err(format!("{}: {e}", args.input.display())))?;
    let problem = Problem::from_json(&src).map_err(|e| input_err(format!("{}: {e}", args.input.display())))?;
    let mut opts = RunOptions::from_problem(&problem).map_err(|e| (exit_code(&e), e.to_string()))?;
    if let Some(t) = args.task {
        opts.task = t;
    }
    if let Some(n) = args.order {
        opts.order = n;
    }
    if let Some(s) = args.seed {
        opts.seed = s;
    }
    if let Some(k) = args.prime_index {
        opts.prime_index = Some(k);
    }
    if let Some(b) = args.normalize_budget {
        opts.budget = b;
    }
    if let Some(path) = &args.presentation {
        let src = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
        let pj: PresentationJson = serde_json::from_str(&src)
            .map_err(|e| input_err(format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column())))?;
        opts.presentation = Some(RingPresentation::from_json(&pj).map_err(|e| input_err(e.to_string()))?);
    }
    Ok((problem, opts))
}

fn verdict_code(r: &Run) -> u8 {
    match &r.outcome {
        Outcome::Split(c) => u8::from(!c.verdict),
        Outcome::Diagonalize(d) => u8::from(d.verdict != Verdict::Diagonalizable),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (problem, opts) = match load(&args) {
        Ok(x) => x,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(code);
        }
    };
    let result = match run(&problem, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let json = result.report.to_json();
    match &args.json_out {
        Some(path) => {
            if let Err(e) = fs::write(path, &json) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(INPUT_ERROR);
            }
        }
        None => print!("{json}"),
    }
    eprint!("{}", summary::render(&result));
    ExitCode::from(verdict_code(&result))
}
