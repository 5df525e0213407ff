use std::fmt::Write;

use unidiag::groebner::Ideal;
use unidiag::pipeline::report::ideal_strings;
use unidiag::pipeline::{Outcome, Run, SplitCertificate, Verdict};
use unidiag::scalar::Field;

const SERIES_TERMS: usize = 6;

fn sorted<C: Field>(i: &Ideal<C>) -> String {
    let mut g = ideal_strings(i);
    g.sort();
    format!("⟨{}⟩", g.join(", "))
}

fn certificate(out: &mut String, c: &SplitCertificate) {
    for (k, coeff) in c.coeffs.iter().enumerate() {
        let _ = writeln!(out, "  c{} = {coeff}", k + 1);
    }
    let _ = writeln!(out, "Q  = {}  (prime {} of {})", sorted(&c.q), c.prime_index, c.primes.len());
    let _ = writeln!(out, "Q' = {}  ({} closure variables)", sorted(&c.presentation.relations), c.presentation.closure_count());
    let _ = writeln!(out, "n  = {}", sorted(&c.maximal.ideal));
    for (name, poly, (lo, hi)) in c.maximal.tower.describe() {
        let _ = writeln!(out, "     {name}: {poly} = 0, root in [{lo}, {hi}]");
    }
    let _ = writeln!(out, "Jacobian rank {} of {}", c.rank, c.needed);
}

/// Human-readable account of a run.
pub fn render(r: &Run) -> String {
    let mut out = String::new();
    let rep = &r.report;
    let _ = writeln!(out, "task {}: {}", rep.task, rep.verdict);
    if let Some(reason) = &rep.reason {
        let _ = writeln!(out, "  {reason}");
    }
    let _ = writeln!(out, "seed {}, order {}, split test on {}", rep.seed, rep.order, rep.matrix_used);
    match &r.outcome {
        Outcome::Split(c) => certificate(&mut out, c),
        Outcome::Diagonalize(d) => {
            certificate(&mut out, &d.certificate);
            if let Some(u) = &d.u {
                for i in 0..u.rows() {
                    for j in 0..u.cols() {
                        let _ = writeln!(out, "U[{},{}] = {}", i + 1, j + 1, u.get(i, j).abbreviated(SERIES_TERMS));
                    }
                }
                for (i, s) in d.d.iter().enumerate() {
                    let _ = writeln!(out, "D[{}] = {}", i + 1, s.abbreviated(SERIES_TERMS));
                }
            } else if d.verdict != Verdict::SplitFails {
                for p in &d.projections {
                    let _ = writeln!(out, "projection for {}:", p.root);
                    for row in p.matrix.to_rows() {
                        let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                        let _ = writeln!(out, "  [{}]", cells.join(", "));
                    }
                }
            }
        }
    }
    let times: Vec<String> = r.timings.0.iter().map(|(s, t)| format!("{s} {:.1} ms", t.as_secs_f64() * 1e3)).collect();
    let _ = writeln!(out, "timings: {}", times.join(", "));
    out
}
