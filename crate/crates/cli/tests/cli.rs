use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use unidiag::pipeline::Report;

fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn unidiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unidiag")).args(args).output().expect("binary runs")
}

fn run_problem(name: &str, extra: &[&str]) -> Output {
    let input = problems_dir().join(name);
    let mut args = vec!["--input", input.to_str().unwrap()];
    args.extend_from_slice(extra);
    unidiag(&args)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("unidiag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(out: &Output) -> Report {
    Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).expect("stdout is a report")
}

#[test]
fn rellich_does_not_split() {
    let out = run_problem("rellich.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r.verdict, "not_split");
    assert_eq!(r.certificate.jacobian_rank, 1);
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(summary.contains("Jacobian rank 1 of 2"), "{summary}");
}

#[test]
fn blow_up_diagonalizes() {
    let out = run_problem("rellich_blowup.json", &["--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.verdict, "diagonalizable");
    let diag = r.diagonalization.expect("diagonalization section");
    assert_eq!(diag.d.len(), 2);
    assert!(diag.d.iter().all(|s| s.order == 4));
}

#[test]
fn task_flag_overrides_the_problem_file() {
    let out = run_problem("rellich_blowup.json", &["--task", "split"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.task, "split");
    assert_eq!(r.verdict, "split");
    assert!(r.diagonalization.is_none());
}

#[test]
fn adam_is_rejected_at_membership() {
    let out = run_problem("adam.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r.verdict, "not_diagonalizable");
    assert!(r.reason.unwrap().contains("not in the local ring"));
}

#[test]
fn malformed_entry_is_an_input_error() {
    let path = scratch("malformed.json");
    std::fs::write(&path, r#"{"variables": ["x1", "x2"], "matrix": [["x1", "x1+*x2"], ["x2", "x1"]]}"#).unwrap();
    let out = unidiag(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("matrix entry (1, 2)"), "{err}");
}

#[test]
fn non_normal_matrix_is_an_input_error() {
    let path = scratch("jordan.json");
    std::fs::write(&path, r#"{"variables": ["x1"], "matrix": [["0", "x1"], ["0", "0"]]}"#).unwrap();
    let out = unidiag(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = unidiag(&["--input", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_is_a_resource_error() {
    let out = run_problem("hyperbolic.json", &["--normalize-budget", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn report_round_trips_byte_for_byte() {
    for name in ["rellich.json", "rellich_blowup.json", "adam.json", "rotation.json", "diagonal.json"] {
        let out = run_problem(name, &[]);
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(Report::from_json(&text).unwrap().to_json(), text, "{name}");
    }
}

#[test]
fn runs_are_deterministic() {
    for name in ["rellich.json", "rellich_blowup.json", "hyperbolic.json", "adam.json", "rotation.json"] {
        let a = run_problem(name, &["--seed", "11"]);
        let b = run_problem(name, &["--seed", "11"]);
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn json_out_matches_stdout() {
    let path = scratch("rotation-report.json");
    let out = run_problem("rotation.json", &["--json-out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, run_problem("rotation.json", &[]).stdout);
}

#[test]
fn supplied_presentation_is_used() {
    let computed = report(&run_problem("rellich_blowup.json", &["--task", "split"]));
    let path = scratch("presentation.json");
    std::fs::write(&path, serde_json::to_string(&computed.certificate.presentation).unwrap()).unwrap();
    let out = run_problem("rellich_blowup.json", &["--task", "split", "--presentation", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out).certificate.presentation, computed.certificate.presentation);
}

#[test]
fn wrong_presentation_is_rejected() {
    let path = scratch("wrong-presentation.json");
    let bogus = r#"{"base": ["x1", "x2"], "roots": ["y1", "y2"], "closure": [], "relations": ["y1-x1", "y2-x2"], "fractions": []}"#;
    std::fs::write(&path, bogus).unwrap();
    let out = run_problem("rellich_blowup.json", &["--task", "split", "--presentation", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_range_prime_index_is_an_input_error() {
    let out = run_problem("rellich.json", &["--prime-index", "9"]);
    assert_eq!(out.status.code(), Some(2));
}
