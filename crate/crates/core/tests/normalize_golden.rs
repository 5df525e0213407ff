use std::sync::Arc;

use unidiag::groebner::Ideal;
use unidiag::normalize::{fractions_consistent, normalize, verify_presentation, RingPresentation, DEFAULT_BUDGET};
use unidiag::poly::{Block, MultiPoly, VarSet};
use unidiag::scalar::Rational;

fn ideal(v: &Arc<VarSet>, gens: &[&str]) -> Ideal<Rational> {
    Ideal::new(v, gens.iter().map(|s| MultiPoly::parse(s, v).unwrap()))
}

fn same_under_names(p: &RingPresentation, golden_vars: &Arc<VarSet>, golden: &[&str]) -> bool {
    let g = ideal(golden_vars, golden);
    match p.relations.remap(golden_vars) {
        Ok(r) => r.same_as(&g),
        Err(_) => false,
    }
}

#[test]
fn blow_up_closure() {
    let v = VarSet::new([("y1", Block::Root), ("y2", Block::Root), ("x1", Block::Base), ("x2", Block::Base)]).unwrap();
    let q = ideal(&v, &["2*x1*x2-y1-y2+2*x2", "y1^2+6*y1*y2+y2^2-8*y1*x2-8*y2*x2+16*x2^2"]);
    let p = normalize(&q, DEFAULT_BUDGET).unwrap();
    let gv = VarSet::new([("w_0_1", Block::Closure), ("y1", Block::Root), ("y2", Block::Root), ("x1", Block::Base), ("x2", Block::Base)]).unwrap();
    assert!(same_under_names(&p, &gv, &[
        "2*x1*x2-y1-y2+2*x2",
        "y1^2+6*y1*y2+y2^2-8*y1*x2-8*y2*x2+16*x2^2",
        "w_0_1*x2+y2",
        "2*w_0_1*y2+y1*x1+5*y2*x1-3*y1+y2+8*x2",
        "2*w_0_1*y1-y1*x1-y2*x1+3*y1+3*y2-8*x2",
        "w_0_1^2+2*w_0_1*x1+2*w_0_1-x1^2+2*x1-1",
    ]));
    assert!(fractions_consistent(&p).unwrap());
    assert!(verify_presentation(&p).unwrap());
}

#[test]
fn hyperbolic_closure() {
    let v = VarSet::new([("y1", Block::Root), ("y2", Block::Root), ("y3", Block::Root), ("x1", Block::Base), ("x2", Block::Base)]).unwrap();
    let q = ideal(&v, &["y1+y2+y3", "y1*y2+y1*y3+y2*y3+3*x1^2+3*x2^2", "y1*y2*y3-2*x1^3"]);
    let p = normalize(&q, DEFAULT_BUDGET).unwrap();
    let gv = VarSet::new([("w_0_0", Block::Closure), ("w_0_1", Block::Closure), ("y1", Block::Root), ("y2", Block::Root), ("y3", Block::Root), ("x1", Block::Base), ("x2", Block::Base)]).unwrap();
    assert!(same_under_names(&p, &gv, &[
        "y1+y2+y3",
        "y2^2+y2*y3+y3^2-3*x1^2-3*x2^2",
        "w_0_1*x2-y2*y3-y2*x1-y3*x1-x1^2",
        "w_0_1*y2+w_0_1*y3-w_0_1*x1-3*x1*x2",
        "w_0_0*x2-y3^2+y3*x1+2*x1^2",
        "w_0_0*y3+w_0_0*x1-3*y3*x2",
        "w_0_0*y2+w_0_0*x1-w_0_1*y3+2*w_0_1*x1",
        "w_0_1^2+3*y2*y3-3*x1^2",
        "w_0_0*w_0_1-3*y2*y3-3*y3*x1",
        "w_0_0^2-3*y3^2+6*y3*x1",
    ]));
    assert!(fractions_consistent(&p).unwrap());
}

#[test]
fn supplied_hyperbolic_presentation_verifies() {
    let gv = VarSet::new([("w_0_0", Block::Closure), ("w_0_1", Block::Closure), ("y1", Block::Root), ("y2", Block::Root), ("y3", Block::Root), ("x1", Block::Base), ("x2", Block::Base)]).unwrap();
    let q = ideal(&gv, &[
        "y1+y2+y3",
        "y2^2+y2*y3+y3^2-3*x1^2-3*x2^2",
        "w_0_1*x2-y2*y3-y2*x1-y3*x1-x1^2",
        "w_0_1*y2+w_0_1*y3-w_0_1*x1-3*x1*x2",
        "w_0_0*x2-y3^2+y3*x1+2*x1^2",
        "w_0_0*y3+w_0_0*x1-3*y3*x2",
        "w_0_0*y2+w_0_0*x1-w_0_1*y3+2*w_0_1*x1",
        "w_0_1^2+3*y2*y3-3*x1^2",
        "w_0_0*w_0_1-3*y2*y3-3*y3*x1",
        "w_0_0^2-3*y3^2+6*y3*x1",
    ]);
    assert!(verify_presentation(&RingPresentation::new(q)).unwrap());
}
