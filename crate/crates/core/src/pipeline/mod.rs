//! End-to-end runs: the split decision and the unitary diagonalization of a
//! normal matrix over the completed local ring at the origin.

pub mod diag;
pub mod input;
pub mod report;
pub mod split;

pub use diag::{diagonalize, matrix_series, verify_diagonalization, DiagOptions, DiagonalizationResult, FractionPair, HermitianForm, Membership, QuotientRing, Verdict};
pub use input::{parse_entry, parse_problem, ParsedProblem, Problem, Task};
pub use report::Report;
pub use split::{decide_split, vieta_ideal, SplitCertificate, SplitOptions, Timings};

use crate::error::{Error, Result};
use crate::normalize::{RingPresentation, DEFAULT_BUDGET};
use crate::poly::charpoly::minimal_poly;
use crate::series::DEFAULT_ORDER;
use report::{certificate_json, diag_json, split_stages, verdict_name, StageJson};

/// Fully resolved run parameters.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub task: Task,
    pub order: u32,
    pub seed: u64,
    pub prime_index: Option<usize>,
    pub presentation: Option<RingPresentation>,
    pub budget: usize,
}

impl RunOptions {
    /// Parameters taken from the problem file, with defaults.
    pub fn from_problem(p: &Problem) -> Result<RunOptions> {
        let presentation = p.presentation.as_ref().map(RingPresentation::from_json).transpose()?;
        Ok(RunOptions {
            task: p.task.unwrap_or(Task::Split),
            order: p.order.unwrap_or(DEFAULT_ORDER),
            seed: p.seed.unwrap_or(0),
            prime_index: p.prime_index,
            presentation,
            budget: DEFAULT_BUDGET,
        })
    }

    fn split(&self) -> SplitOptions {
        SplitOptions {
            seed: self.seed,
            prime_index: self.prime_index,
            presentation: self.presentation.clone(),
            budget: self.budget,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Split(SplitCertificate),
    Diagonalize(DiagonalizationResult),
}

#[derive(Clone, Debug)]
pub struct Run {
    pub report: Report,
    pub outcome: Outcome,
    pub timings: Timings,
}

impl Run {
    /// True for "splits" and "diagonalizable".
    pub fn positive(&self) -> bool {
        match &self.outcome {
            Outcome::Split(c) => c.verdict,
            Outcome::Diagonalize(r) => r.verdict == Verdict::Diagonalizable,
        }
    }
}

pub fn run(problem: &Problem, opts: &RunOptions) -> Result<Run> {
    let parsed = parse_problem(problem)?;
    match opts.task {
        Task::Split => run_split(&parsed, opts),
        Task::Diagonalize => run_diagonalize(&parsed, opts),
    }
}

fn coefficient_strings(c: &SplitCertificate) -> Vec<String> {
    c.coeffs.iter().map(|x| x.to_string()).collect()
}

fn run_split(parsed: &ParsedProblem, opts: &RunOptions) -> Result<Run> {
    let mut timings = Timings::default();
    if !timings.run("normality", || Ok(parsed.matrix.is_normal()))? {
        return Err(Error::NotNormal);
    }
    let coeffs = timings.run("minimal", || split::rational_coefficients(&minimal_poly(&parsed.matrix)?))?;
    let cert = decide_split(&coeffs, &parsed.variety, &opts.split())?;
    timings.0.extend(cert.timings.0.iter().cloned());
    let report = Report {
        task: Task::Split.name().into(),
        seed: opts.seed,
        order: opts.order,
        verdict: if cert.verdict { "split" } else { "not_split" }.into(),
        reason: None,
        matrix_used: "A".into(),
        minimal_polynomial: coefficient_strings(&cert),
        stages: split_stages(&cert),
        certificate: certificate_json(&cert),
        diagonalization: None,
    };
    Ok(Run { report, outcome: Outcome::Split(cert), timings })
}

fn run_diagonalize(parsed: &ParsedProblem, opts: &RunOptions) -> Result<Run> {
    let a = parsed.gaussian_matrix()?;
    let result = diagonalize(&a, &parsed.variety, &DiagOptions { split: opts.split(), order: opts.order })?;
    let cert = &result.certificate;
    let mut stages = split_stages(cert);
    if !result.projections.is_empty() {
        let summary = match &result.verdict {
            Verdict::NotDiagonalizable(r) => r.clone(),
            _ => "all projection entries are local".into(),
        };
        stages.push(StageJson { stage: "membership".into(), summary });
    }
    if let Some(u) = &result.u {
        stages.push(StageJson { stage: "columns".into(), summary: format!("{:?}", result.selected) });
        stages.push(StageJson {
            stage: "verify".into(),
            summary: format!("U*U = I and AU = UD modulo degree {}, size {}", result.order + 1, u.rows()),
        });
    }
    let report = Report {
        task: Task::Diagonalize.name().into(),
        seed: opts.seed,
        order: opts.order,
        verdict: verdict_name(&result.verdict).into(),
        reason: match &result.verdict {
            Verdict::NotDiagonalizable(r) => Some(r.clone()),
            Verdict::SplitFails => Some("the minimal polynomial does not split".into()),
            Verdict::Diagonalizable => None,
        },
        matrix_used: result.form.to_string(),
        minimal_polynomial: coefficient_strings(cert),
        stages,
        certificate: certificate_json(cert),
        diagonalization: diag_json(&result),
    };
    let timings = result.timings.clone();
    Ok(Run { report, outcome: Outcome::Diagonalize(result), timings })
}
