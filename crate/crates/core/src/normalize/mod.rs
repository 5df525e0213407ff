//! Integral closure of an affine domain `k[x, y]/Q`, presented as
//! `k[x, y, w]/Q′` together with the fraction each `w` stands for.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::ideal::combinations;
use crate::groebner::{Ideal, MonomialOrder};
use crate::poly::matrix::{determinant, jacobian};
use crate::poly::multipoly::mono_divides;
use crate::poly::{Block, Matrix, MultiPoly, VarSet};
use crate::scalar::{Field, Rational};

pub const DEFAULT_BUDGET: usize = 32;

type Poly = MultiPoly<Rational>;

/// A closure variable and the fraction `numerator / denominator` it
/// represents, both written in the ring of the stage that introduced it.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub var: String,
    pub numerator: Poly,
    pub denominator: Poly,
}

#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub relations: Ideal<Rational>,
    pub fractions: Vec<Fraction>,
}

impl RingPresentation {
    pub fn new(relations: Ideal<Rational>) -> Self {
        RingPresentation { relations, fractions: Vec::new() }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.relations.vars()
    }

    /// Number of closure variables `e`.
    pub fn closure_count(&self) -> usize {
        self.vars().indices_of(Block::Closure).len()
    }

    /// Variables that are not base coordinates.
    pub fn fiber_vars(&self) -> Vec<usize> {
        let v = self.vars();
        (0..v.len()).filter(|&i| v.block(i) != Block::Base).collect()
    }

    /// Reduced degrevlex generators of `Q′`.
    pub fn generators(&self) -> Vec<Poly> {
        self.relations.gb(MonomialOrder::DegRevLex).to_vec()
    }

    pub fn to_json(&self) -> PresentationJson {
        let v = self.vars();
        let names = |b| v.indices_of(b).iter().map(|&i| v.name(i).to_string()).collect();
        PresentationJson {
            base: names(Block::Base),
            roots: names(Block::Root),
            closure: names(Block::Closure),
            relations: self.generators().iter().map(|g| g.to_string()).collect(),
            fractions: self
                .fractions
                .iter()
                .map(|f| FractionJson {
                    var: f.var.clone(),
                    numerator: f.numerator.to_string(),
                    denominator: f.denominator.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let vars = VarSet::new(
            j.closure
                .iter()
                .map(|n| (n.as_str(), Block::Closure))
                .chain(j.roots.iter().map(|n| (n.as_str(), Block::Root)))
                .chain(j.base.iter().map(|n| (n.as_str(), Block::Base))),
        )?;
        let relations = j.relations.iter().map(|s| MultiPoly::parse(s, &vars)).collect::<Result<Vec<_>>>()?;
        let fractions = j
            .fractions
            .iter()
            .map(|f| {
                Ok(Fraction {
                    var: f.var.clone(),
                    numerator: MultiPoly::parse(&f.numerator, &vars)?,
                    denominator: MultiPoly::parse(&f.denominator, &vars)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RingPresentation { relations: Ideal::new(&vars, relations), fractions })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionJson {
    pub var: String,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub base: Vec<String>,
    pub roots: Vec<String>,
    #[serde(default)]
    pub closure: Vec<String>,
    pub relations: Vec<String>,
    #[serde(default)]
    pub fractions: Vec<FractionJson>,
}

/// `c × c` minors of the Jacobian of `gens` with respect to `vars`.
fn minors(gens: &[Poly], vars: &[usize], c: usize) -> Vec<Poly> {
    let jac = jacobian(gens, vars);
    let mut out = Vec::new();
    if c == 0 {
        return out;
    }
    for rows in combinations(gens.len(), c) {
        for cols in combinations(vars.len(), c) {
            let sub = Matrix::from_fn(c, c, |i, j| jac.get(rows[i], cols[j]).clone());
            let d = determinant(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn add_reduced(q: &Ideal<Rational>, extra: Vec<Poly>) -> Ideal<Rational> {
    let mut kept: Vec<Poly> = Vec::new();
    for p in extra {
        let r = q.normal_form(&p);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(MonomialOrder::DegRevLex);
        if !kept.contains(&r) {
            kept.push(r);
        }
    }
    q.with(kept)
}

/// Radical of the Jacobian ideal at the height of `Q`: an ideal whose zero
/// set contains the non-normal locus.
pub fn singular_test_ideal(p: &RingPresentation) -> Result<Ideal<Rational>> {
    let q = &p.relations;
    let n = q.vars().len() as i64;
    let codim = (n - q.dimension()) as usize;
    let all: Vec<usize> = (0..q.vars().len()).collect();
    let ms = minors(q.gens(), &all, codim);
    test_ideal_from(q, ms)
}

/// Like [`singular_test_ideal`] but using only the minors with respect to
/// the fiber variables, which cut out the ramification locus over the base.
pub fn ramification_test_ideal(p: &RingPresentation) -> Result<Ideal<Rational>> {
    let fiber = p.fiber_vars();
    let gens = p.generators();
    let ms = minors(&gens, &fiber, fiber.len());
    test_ideal_from(&p.relations, ms)
}

fn test_ideal_from(q: &Ideal<Rational>, ms: Vec<Poly>) -> Result<Ideal<Rational>> {
    if ms.iter().all(|m| q.contains(m)) {
        return Err(Error::Degenerate("Jacobian ideal vanishes modulo the relations".into()));
    }
    Ok(add_reduced(q, ms).radical())
}

/// Picks the smallest basis element of `T` that is not in `Q`.
fn nonzerodivisor(q: &Ideal<Rational>, t: &Ideal<Rational>) -> Result<Poly> {
    t.gb(MonomialOrder::DegRevLex)
        .iter()
        .find(|g| !q.contains(g))
        .cloned()
        .ok_or_else(|| Error::Degenerate("test ideal has no nonzerodivisor".into()))
}

/// Numerators `u` with `u/d ∈ Hom(T, T)` not already in the ring.
fn endomorphism_numerators(q: &Ideal<Rational>, t: &Ideal<Rational>, d: &Poly) -> Vec<Poly> {
    let t_gens: Vec<Poly> =
        t.gb(MonomialOrder::DegRevLex).iter().filter(|g| !q.contains(g)).cloned().collect();
    let dt = q.with(t_gens.iter().map(|g| g.mul(d)));
    let hom = dt.colon(&Ideal::new(q.vars(), t_gens));
    let qd = q.with([d.clone()]);
    let q_lms: Vec<Vec<u32>> = q
        .gb(MonomialOrder::DegRevLex)
        .iter()
        .map(|g| g.leading_monomial(MonomialOrder::DegRevLex).expect("nonzero"))
        .collect();
    // basis of the colon ideal in the quotient ring: leading terms standard for Q
    hom.gb(MonomialOrder::DegRevLex)
        .iter()
        .filter(|u| {
            let lm = u.leading_monomial(MonomialOrder::DegRevLex).expect("nonzero");
            !q_lms.iter().any(|m| mono_divides(m, &lm))
        })
        .map(|u| qd.normal_form(u))
        .filter(|r| !r.is_zero())
        .collect()
}

/// One step of the Grauert–Remmert loop. Returns the enlarged presentation
/// and whether anything was adjoined.
pub fn endomorphism_step(
    p: &RingPresentation,
    t: &Ideal<Rational>,
    iteration: usize,
) -> Result<(RingPresentation, bool)> {
    let q = &p.relations;
    if t.is_unit() {
        return Ok((p.clone(), false));
    }
    let d = nonzerodivisor(q, t)?;
    let hs = endomorphism_numerators(q, t, &d);
    if hs.is_empty() {
        return Ok((p.clone(), false));
    }
    let old = q.vars().clone();
    let names: Vec<String> = (0..hs.len()).map(|j| format!("w_{iteration}_{j}")).collect();
    for n in &names {
        if old.index(n).is_some() {
            return Err(Error::Internal(format!("closure variable {n} already present")));
        }
    }
    let ext = old.prepend(names.iter().map(|n| (n.as_str(), Block::Closure)))?;
    let d_ext = d.remap(&ext)?;
    let mut gens: Vec<Poly> = q.gens().iter().map(|g| g.remap(&ext)).collect::<Result<_>>()?;
    for (j, h) in hs.iter().enumerate() {
        gens.push(d_ext.mul(&MultiPoly::var(&ext, j)).sub(&h.remap(&ext)?));
    }
    let mut rel = Ideal::new(&ext, gens).saturate(&d_ext);
    let mut fractions: Vec<Fraction> = p
        .fractions
        .iter()
        .map(|f| {
            Ok(Fraction {
                var: f.var.clone(),
                numerator: f.numerator.remap(&ext)?,
                denominator: f.denominator.remap(&ext)?,
            })
        })
        .collect::<Result<_>>()?;
    for (j, h) in hs.iter().enumerate() {
        fractions.push(Fraction { var: names[j].clone(), numerator: h.remap(&ext)?, denominator: d_ext.clone() });
    }

    // drop closure variables that are linear in the others
    let mut eliminated: Vec<String> = Vec::new();
    loop {
        let vars = rel.vars().clone();
        let gb = rel.gb(MonomialOrder::DegRevLex);
        let hit = names.iter().filter(|n| !eliminated.contains(n)).find_map(|n| {
            let w = vars.index(n)?;
            gb.iter().find(|g| {
                let lm = g.leading_monomial(MonomialOrder::DegRevLex).expect("nonzero");
                lm[w] == 1 && lm.iter().sum::<u32>() == 1 && g.degree_in(w) == 1
            }).map(|g| (n.clone(), w, g.clone()))
        });
        let Some((name, w, g)) = hit else { break };
        let lc = g.leading_coeff(MonomialOrder::DegRevLex);
        let value = MultiPoly::var(&vars, w).sub(&g.scale(&lc.inv().ok_or(Error::DivisionByZero)?));
        let keep: Vec<usize> = (0..vars.len()).filter(|&i| i != w).collect();
        let smaller = vars.select(&keep);
        let sub = |p: &Poly| -> Result<Poly> { p.substitute(&[(w, value.clone())], &vars).remap(&smaller) };
        let new_gens: Vec<Poly> = gb.iter().filter(|x| **x != g).map(sub).collect::<Result<_>>()?;
        rel = Ideal::new(&smaller, new_gens).reduced();
        fractions.retain(|f| f.var != name);
        for f in &mut fractions {
            f.numerator = sub(&f.numerator)?;
            f.denominator = sub(&f.denominator)?;
        }
        eliminated.push(name);
    }
    let changed = eliminated.len() < names.len() || **rel.vars() != *old;
    Ok((RingPresentation { relations: rel.reduced(), fractions }, changed))
}

/// Integral closure of `k[vars]/Q` for a prime `Q`, iterating
/// endomorphism rings of the radical of the Jacobian ideal.
pub fn normalize(q: &Ideal<Rational>, budget: usize) -> Result<RingPresentation> {
    let mut p = RingPresentation::new(q.reduced());
    let mut t = singular_test_ideal(&p)?;
    for iteration in 0..budget {
        let (next, changed) = endomorphism_step(&p, &t, iteration)?;
        if !changed {
            return Ok(next);
        }
        // the non-normal locus of the new ring lies over the old one
        let ext: Vec<Poly> = t.gens().iter().map(|g| g.remap(next.vars())).collect::<Result<_>>()?;
        t = next.relations.with(ext).radical();
        p = next;
    }
    Err(Error::Budget { stage: "normalize".into(), steps: budget })
}

/// Every fiber variable satisfies a monic equation over the base.
fn is_integral(p: &RingPresentation) -> bool {
    let v = p.vars();
    let base = v.indices_of(Block::Base);
    p.fiber_vars().into_iter().all(|y| {
        let elim: Vec<usize> = (0..v.len()).filter(|i| *i != y && !base.contains(i)).collect();
        p.relations.eliminate(&elim).gens().iter().any(|g| {
            let coeffs = g.to_univariate(y);
            coeffs.len() > 1 && coeffs.last().expect("nonempty").is_constant()
        })
    })
}

/// Checks integrality over the base and normality of a presentation.
pub fn verify_presentation(p: &RingPresentation) -> Result<bool> {
    if p.relations.is_unit() || !is_integral(p) {
        return Ok(false);
    }
    let t = ramification_test_ideal(p)?;
    let (_, changed) = endomorphism_step(p, &t, usize::MAX)?;
    Ok(!changed)
}

/// `den·w − num ∈ Q′` for every recorded fraction.
pub fn fractions_consistent(p: &RingPresentation) -> Result<bool> {
    for f in &p.fractions {
        let w = MultiPoly::var_named(p.vars(), &f.var);
        let rel = f.denominator.remap(p.vars())?.mul(&w).sub(&f.numerator.remap(p.vars())?);
        if !p.relations.contains(&rel) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[(&str, Block)]) -> Arc<VarSet> {
        VarSet::new(names.iter().cloned()).unwrap()
    }

    fn ideal(v: &Arc<VarSet>, gens: &[&str]) -> Ideal<Rational> {
        Ideal::new(v, gens.iter().map(|s| MultiPoly::parse(s, v).unwrap()))
    }

    #[test]
    fn smooth_curve_is_normal() {
        let v = ring(&[("y", Block::Root), ("x", Block::Base)]);
        let q = ideal(&v, &["y-x^2"]);
        let t = singular_test_ideal(&RingPresentation::new(q.clone())).unwrap();
        assert!(t.is_unit());
        let p = normalize(&q, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.closure_count(), 0);
    }

    #[test]
    fn cusp_gains_one_closure_variable() {
        let v = ring(&[("y", Block::Root), ("x", Block::Base)]);
        let q = ideal(&v, &["y^2-x^3"]);
        let t = singular_test_ideal(&RingPresentation::new(q.clone())).unwrap();
        assert!(t.same_as(&ideal(&v, &["x", "y"])));
        assert!(!verify_presentation(&RingPresentation::new(q.clone())).unwrap());
        let p = normalize(&q, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.closure_count(), 1);
        assert!(fractions_consistent(&p).unwrap());
        let w = p.vars().name(0).to_string();
        // w = ±y/x up to a ring element; w² − x or (w−c)² − x must hold
        let pv = p.vars();
        let expected = ideal(pv, &[&format!("{w}*x-y"), &format!("{w}*y-x^2"), &format!("{w}^2-x")]);
        let flipped = ideal(pv, &[&format!("{w}*x+y"), &format!("{w}*y+x^2"), &format!("{w}^2-x")]);
        assert!(p.relations.same_as(&expected) || p.relations.same_as(&flipped), "{}", p.relations);
        assert!(verify_presentation(&p).unwrap());
    }

    #[test]
    fn normal_presentation_is_fixed() {
        let v = ring(&[("y1", Block::Root), ("y2", Block::Root), ("x1", Block::Base), ("x2", Block::Base)]);
        let q = ideal(&v, &["y1+y2-2*x1-2*x2", "y1*y2+x1^2-2*x1*x2+x2^2"]);
        let p = normalize(&q, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.closure_count(), 0);
        assert!(p.relations.same_as(&q));
        assert!(verify_presentation(&p).unwrap());
    }

    #[test]
    fn budget_is_reported() {
        let v = ring(&[("y", Block::Root), ("x", Block::Base)]);
        let q = ideal(&v, &["y^2-x^3"]);
        assert!(matches!(normalize(&q, 0), Err(Error::Budget { .. })));
    }
}
