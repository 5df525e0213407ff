//! One PASS/FAIL line per acceptance criterion, with the time limit each
//! criterion is held to.

mod support;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use support::problems::{self, ADAM, BLOWUP, BLOWUP_CLOSURE, BLOWUP_MAXIMAL, HYPERBOLIC, HYPERBOLIC_CLOSURE, RELLICH, ROTATION};
use support::props;
use unidiag::groebner::Ideal;
use unidiag::pipeline::{
    matrix_series, parse_problem, run, verify_diagonalization, DiagonalizationResult, FractionPair, Outcome, Problem,
    QuotientRing, Report, Run, RunOptions, SplitCertificate, Task, Verdict,
};
use unidiag::poly::{MultiPoly, VarSet};
use unidiag::scalar::{rat, AlgebraicScalar, GaussianRational, Rational};
use unidiag::series::TruncatedSeries;

type Checked = Result<String, String>;

fn problem(src: &str) -> Result<Problem, String> {
    Problem::from_json(src).map_err(|e| e.to_string())
}

fn execute(src: &str, task: Option<Task>, order: Option<u32>) -> Result<Run, String> {
    let p = problem(src)?;
    let mut opts = RunOptions::from_problem(&p).map_err(|e| e.to_string())?;
    if let Some(t) = task {
        opts.task = t;
    }
    if let Some(n) = order {
        opts.order = n;
    }
    run(&p, &opts).map_err(|e| e.to_string())
}

fn split_of(r: &Run) -> Result<&SplitCertificate, String> {
    match &r.outcome {
        Outcome::Split(c) => Ok(c),
        Outcome::Diagonalize(_) => Err("expected a split run".into()),
    }
}

fn diag_of(r: &Run) -> Result<&DiagonalizationResult, String> {
    match &r.outcome {
        Outcome::Diagonalize(d) => Ok(d),
        Outcome::Split(_) => Err("expected a diagonalization run".into()),
    }
}

fn ideal_in(v: &Arc<VarSet>, gens: &[&str]) -> Result<Ideal<Rational>, String> {
    let polys = gens.iter().map(|s| MultiPoly::parse(s, v).map_err(|e| format!("{s}: {e}"))).collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(v, polys))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gpoly(v: &Arc<VarSet>, s: &str) -> Result<MultiPoly<GaussianRational>, String> {
    MultiPoly::parse(s, v).map_err(|e| format!("{s}: {e}"))
}

fn pair(v: &Arc<VarSet>, num: &str, den: &str) -> Result<FractionPair, String> {
    Ok(FractionPair { num: gpoly(v, num)?, den: gpoly(v, den)? })
}

fn rellich() -> Checked {
    let r = execute(RELLICH, Some(Task::Split), None)?;
    let c = split_of(&r)?;
    ensure(!c.verdict, "the minimal polynomial was reported to split")?;
    ensure(c.rank == 1, format!("Jacobian rank {} instead of 1", c.rank))?;
    Ok(format!("not split, Jacobian rank {} of {}", c.rank, c.needed))
}

fn blowup_split() -> Checked {
    let r = execute(BLOWUP, Some(Task::Split), None)?;
    let c = split_of(&r)?;
    let pv = c.presentation.vars().clone();
    let golden = ideal_in(&pv, &BLOWUP_CLOSURE)?;
    ensure(c.presentation.relations.same_as(&golden), "Q' differs from the 6-generator closure")?;
    let mv = c.maximal.ideal.vars().clone();
    let maximal = ideal_in(&mv, &BLOWUP_MAXIMAL)?;
    ensure(c.maximal.ideal.same_as(&maximal), "the maximal ideal differs from <x2, x1, y2, y1, w^2+2w-1>")?;
    ensure(c.verdict && c.rank == 3, format!("Jacobian rank {} instead of 3", c.rank))?;
    Ok(format!("split, Q' and n match, Jacobian rank {} of {}", c.rank, c.needed))
}

fn hyperbolic() -> Checked {
    let r = execute(HYPERBOLIC, Some(Task::Split), None)?;
    let c = split_of(&r)?;
    ensure(!c.verdict, "the minimal polynomial was reported to split")?;
    ensure(c.rank == 1, format!("Jacobian rank {} instead of 1", c.rank))?;
    let pv = c.presentation.vars().clone();
    let golden = ideal_in(&pv, &HYPERBOLIC_CLOSURE)?;
    ensure(c.presentation.relations.same_as(&golden), "Q' differs from the 10-generator closure")?;
    Ok(format!("not split, Q' matches, Jacobian rank {} of {}", c.rank, c.needed))
}

fn adam() -> Checked {
    let r = execute(ADAM, Some(Task::Diagonalize), None)?;
    let d = diag_of(&r)?;
    let reason = match &d.verdict {
        Verdict::NotDiagonalizable(reason) => reason.clone(),
        v => return Err(format!("verdict {v:?}")),
    };
    ensure(d.certificate.verdict && !d.projections.is_empty(), "did not reach the membership step")?;
    let ring = QuotientRing::new(&d.certificate.presentation);
    let v = ring.vars().clone();
    let den = "x1^2+x2^2";
    let expected = [["x1^2", "x1*x2"], ["x1*x2", "x2^2"]];
    let pi = &d.projections[0].matrix;
    for (i, row) in expected.iter().enumerate() {
        for (j, num) in row.iter().enumerate() {
            let want = pair(&v, num, den)?;
            ensure(ring.equal(pi.get(i, j), &want), format!("projection 1 entry ({}, {}) is {}", i + 1, j + 1, pi.get(i, j)))?;
        }
    }
    Ok(format!("not diagonalizable ({reason}); projection 1 matches"))
}

fn rotation() -> Checked {
    let half = |re: i64, im: i64| GaussianRational::new(rat(re, 2), rat(im, 2));
    let expected = [[half(1, 0), half(0, -1)], [half(0, 1), half(1, 0)]];
    for n in [1u32, 2, 3, 5, 8] {
        let r = execute(ROTATION, Some(Task::Diagonalize), Some(n))?;
        let d = diag_of(&r)?;
        ensure(d.verdict == Verdict::Diagonalizable, format!("N = {n}: verdict {:?}", d.verdict))?;
        let ring = QuotientRing::new(&d.certificate.presentation);
        let pi = &d.projections[0].matrix;
        for (i, row) in expected.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                ensure(*pi.get(i, j) == ring.constant(c.clone()), format!("projection 1 entry ({}, {}) is {}", i + 1, j + 1, pi.get(i, j)))?;
            }
        }
        let sv = d.d[0].vars().clone();
        for (k, s) in d.d.iter().enumerate() {
            let want = TruncatedSeries::var(&sv, k, n);
            ensure(s.order() == n && s.sub(&want).is_zero(), format!("N = {n}: D[{}] = {s}", k + 1))?;
        }
    }
    Ok("projection 1 exact, D = diag(x1, x2) at N = 1, 2, 3, 5, 8".into())
}

fn blowup_diagonalization() -> Checked {
    const N: u32 = 6;
    let r = execute(BLOWUP, Some(Task::Diagonalize), Some(N))?;
    let d = diag_of(&r)?;
    ensure(d.verdict == Verdict::Diagonalizable, format!("verdict {:?}", d.verdict))?;
    let u = d.u.as_ref().ok_or("no U")?;

    // eigenvalues x2(x1 + 1 ± sqrt(2x1^2 + 2)) from the residue field tower
    let sv = d.d[0].vars().clone();
    let k = |r: i64| AlgebraicScalar::rational(rat(r, 1));
    let x1 = TruncatedSeries::var(&sv, 0, N);
    let x2 = TruncatedSeries::var(&sv, 1, N);
    let one = TruncatedSeries::constant(&sv, k(1), N);
    let radicand = x1.mul(&x1).scale(&k(2)).add(&one.scale(&k(2)));
    let (root, _) = radicand.sqrt_unit(&d.certificate.maximal.tower).map_err(|e| e.to_string())?;
    ensure(root.mul(&root).sub(&radicand).is_zero(), "oracle square root does not square back")?;
    let base = x1.add(&one);
    let expected = [x2.mul(&base.add(&root)), x2.mul(&base.sub(&root))];
    let mut unmatched: Vec<&TruncatedSeries> = expected.iter().collect();
    for (i, s) in d.d.iter().enumerate() {
        let pos = unmatched
            .iter()
            .position(|e| s.sub(e).is_zero())
            .ok_or_else(|| format!("D[{}] = {} matches no oracle eigenvalue", i + 1, s.abbreviated(6)))?;
        unmatched.remove(pos);
    }

    // U*U = I and ÃU = UD modulo m^(N+1), on Ã expanded independently
    let parsed = parse_problem(&problem(BLOWUP)?).map_err(|e| e.to_string())?;
    let a = matrix_series(&parsed.gaussian_matrix().map_err(|e| e.to_string())?, &sv, N).map_err(|e| e.to_string())?;
    verify_diagonalization(&a, u, &d.d).map_err(|e| e.to_string())?;

    // the (1, 1) entry of the projections
    let ring = QuotientRing::new(&d.certificate.presentation);
    let v = ring.vars().clone();
    let paper = pair(&v, "w_0_1*x1-w_0_1+3*x1^2+1", "4*x1^2+4")?;
    ensure(ring.equal(d.projections[0].matrix.get(0, 0), &paper), format!("projection 1 entry (1, 1) is {}", d.projections[0].matrix.get(0, 0)))?;
    let paper2 = pair(&v, "-w_0_1*x1+w_0_1+x1^2+3", "4*x1^2+4")?;
    ensure(ring.equal(d.projections[1].matrix.get(0, 0), &paper2), format!("projection 2 entry (1, 1) is {}", d.projections[1].matrix.get(0, 0)))?;
    Ok(format!("D matches the oracle at N = {N}, U verified, projections match"))
}

fn property_suites() -> Checked {
    let mut failures = Vec::new();
    for (name, check) in props::ALL {
        if let Err(e) = check() {
            failures.push(format!("{name}: {e}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} suites, {} cases each", props::ALL.len(), props::CASES))
    } else {
        Err(failures.join("; "))
    }
}

fn determinism() -> Checked {
    for (name, src) in problems::ALL {
        let first = execute(src, None, None)?.report.to_json();
        let second = execute(src, None, None)?.report.to_json();
        ensure(first == second, format!("{name}: reports differ between runs"))?;
        let again = Report::from_json(&first).map_err(|e| format!("{name}: {e}"))?.to_json();
        ensure(first == again, format!("{name}: report does not re-serialize byte for byte"))?;
    }
    Ok(format!("{} examples, identical reports", problems::ALL.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Checked,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "Rellich split failure", limit: secs(10), check: rellich },
        Criterion { id: 2, name: "blow-up split", limit: secs(60), check: blowup_split },
        Criterion { id: 3, name: "hyperbolic 3x3", limit: secs(120), check: hyperbolic },
        Criterion { id: 4, name: "adam is not unitarily diagonalizable", limit: secs(30), check: adam },
        Criterion { id: 5, name: "rotation example", limit: secs(10), check: rotation },
        Criterion { id: 6, name: "blow-up diagonalization at N = 6", limit: secs(120), check: blowup_diagonalization },
        Criterion { id: 7, name: "property suites", limit: None, check: property_suites },
        Criterion { id: 8, name: "determinism", limit: None, check: determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(c.check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        let limit = c.limit.map(|l| format!("limit {l:?}")).unwrap_or_else(|| "no time limit".into());
        match result {
            Ok(detail) => println!("criterion {} PASS  {} ({:.2?}, {limit}): {detail}", c.id, c.name, elapsed),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {} ({:.2?}, {limit}): {why}", c.id, c.name, elapsed);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
