//! Deciding whether the minimal polynomial splits over the completed local
//! ring at the origin.

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::groebner::primes::{contracts_into_origin, maximal_ideals_at_origin, minimal_primes_finite, MaximalIdeal};
use crate::groebner::Ideal;
use crate::normalize::{normalize, verify_presentation, RingPresentation, DEFAULT_BUDGET};
use crate::poly::charpoly::MinimalPoly;
use crate::poly::{jacobian, Block, MultiPoly, RationalFunction, VarSet};
use crate::scalar::{Field, Rational};

type Poly = MultiPoly<Rational>;

#[derive(Clone, Debug)]
pub struct SplitOptions {
    pub seed: u64,
    pub prime_index: Option<usize>,
    pub presentation: Option<RingPresentation>,
    pub budget: usize,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions { seed: 0, prime_index: None, presentation: None, budget: DEFAULT_BUDGET }
    }
}

/// Wall-clock time spent in each stage.
#[derive(Clone, Debug, Default)]
pub struct Timings(pub Vec<(String, Duration)>);

impl Timings {
    pub fn run<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f();
        self.0.push((stage.to_string(), start.elapsed()));
        out
    }
}

#[derive(Clone, Debug)]
pub struct SplitCertificate {
    pub verdict: bool,
    /// `c₁, …, c_d` of the minimal polynomial.
    pub coeffs: Vec<RationalFunction<Rational>>,
    pub vieta: Ideal<Rational>,
    /// Minimal primes of the Vieta ideal contracting into the origin.
    pub primes: Vec<Ideal<Rational>>,
    pub prime_index: usize,
    pub q: Ideal<Rational>,
    pub presentation: RingPresentation,
    /// Number of maximal ideals of the closure above the origin.
    pub maximal_count: usize,
    pub maximal: MaximalIdeal,
    pub rank: usize,
    pub needed: usize,
    pub timings: Timings,
}

impl SplitCertificate {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }
}

/// Coefficients of a minimal polynomial that must lie in `ℚ(x)`.
pub fn rational_coefficients<C: Field>(mu: &MinimalPoly<C>) -> Result<Vec<RationalFunction<Rational>>> {
    let to_q = |p: &MultiPoly<C>| {
        p.try_map_coeffs(|c| c.as_gaussian().filter(|g| g.is_real()).map(|g| g.re))
            .ok_or_else(|| Error::Unsupported(format!("minimal polynomial coefficient {p} is not over ℚ")))
    };
    mu.coeffs.iter().map(|c| RationalFunction::new(to_q(c.num())?, to_q(c.den())?)).collect()
}

pub fn root_names(d: usize) -> Vec<String> {
    (1..=d).map(|k| format!("y{k}")).collect()
}

/// `⟨e_k(y)·G_k − (−1)^k F_k⟩ + I(X)` in `ℚ[y, x]`.
pub fn vieta_ideal(coeffs: &[RationalFunction<Rational>], variety: &Ideal<Rational>) -> Result<Ideal<Rational>> {
    let base = variety.vars();
    let names = root_names(coeffs.len());
    let ring = VarSet::new(
        names
            .iter()
            .map(|n| (n.clone(), Block::Root))
            .chain(base.names().iter().map(|n| (n.clone(), Block::Base))),
    )?;
    // elementary symmetric polynomials by e ← e·(1 + y t)
    let mut e: Vec<Poly> = vec![MultiPoly::one(&ring)];
    for k in 0..coeffs.len() {
        let y = MultiPoly::var(&ring, k);
        let mut next = e.clone();
        next.push(MultiPoly::zero(&ring));
        for j in 1..next.len() {
            next[j] = next[j].add(&e[j - 1].mul(&y));
        }
        e = next;
    }
    let mut gens = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        let k1 = k + 1;
        if c.den().constant_term().is_zero() {
            return Err(Error::NotLocal(format!("coefficient {c} of the minimal polynomial")));
        }
        let f = c.num().remap(&ring)?;
        let g = c.den().remap(&ring)?;
        let f = if k1 % 2 == 1 { f.neg() } else { f };
        gens.push(e[k1].mul(&g).sub(&f));
    }
    for g in variety.gens() {
        gens.push(g.remap(&ring)?);
    }
    Ok(Ideal::new(&ring, gens))
}

fn base_indices(v: &Arc<VarSet>) -> Vec<usize> {
    v.indices_of(Block::Base)
}

fn supplied_presentation(p: &RingPresentation, q: &Ideal<Rational>) -> Result<RingPresentation> {
    let qv = q.vars();
    let pv = p.vars();
    for i in 0..qv.len() {
        match pv.index(qv.name(i)) {
            Some(j) if pv.block(j) == qv.block(i) => {}
            _ => return Err(Error::Inconsistent(format!("supplied presentation lacks variable {}", qv.name(i)))),
        }
    }
    if pv.len() != qv.len() + p.closure_count() {
        return Err(Error::Inconsistent("supplied presentation has unexpected variables".into()));
    }
    let closure = pv.indices_of(Block::Closure);
    let contracted = p.relations.eliminate(&closure).remap(qv)?;
    if !contracted.same_as(q) {
        return Err(Error::Inconsistent("supplied presentation does not contract to the chosen prime".into()));
    }
    if !verify_presentation(p)? {
        return Err(Error::Inconsistent("supplied presentation is not integrally closed".into()));
    }
    Ok(p.clone())
}

/// Runs the split test for `μ = tᵈ + Σ c_k tᵈ⁻ᵏ` on `X`.
pub fn decide_split(
    coeffs: &[RationalFunction<Rational>],
    variety: &Ideal<Rational>,
    opts: &SplitOptions,
) -> Result<SplitCertificate> {
    let mut timings = Timings::default();
    let vieta = timings.run("vieta", || vieta_ideal(coeffs, variety))?;
    let base = base_indices(vieta.vars());
    let primes = timings.run("primes", || {
        let all = minimal_primes_finite(&vieta, &base, opts.seed)?;
        Ok(all.into_iter().filter(|p| contracts_into_origin(p, &base)).collect::<Vec<_>>())
    })?;
    if primes.is_empty() {
        return Err(Error::NoPrime);
    }
    let prime_index = opts.prime_index.unwrap_or(0);
    let q = primes
        .get(prime_index)
        .cloned()
        .ok_or_else(|| Error::Inconsistent(format!("prime index {prime_index} out of range ({} primes)", primes.len())))?;
    let presentation = timings.run("normalize", || match &opts.presentation {
        Some(p) => supplied_presentation(p, &q),
        None => normalize(&q, opts.budget),
    })?;
    let pbase = base_indices(presentation.vars());
    let maximals = timings.run("maximal", || maximal_ideals_at_origin(&presentation.relations, &pbase, opts.seed))?;
    let maximal = maximals
        .first()
        .cloned()
        .ok_or_else(|| Error::Internal("no maximal ideal of the closure lies over the origin".into()))?;
    let fiber = presentation.fiber_vars();
    let rank = timings.run("jacobian", || {
        let jac = jacobian(&presentation.generators(), &fiber);
        maximal.rank_mod(&jac)
    })?;
    let needed = fiber.len();
    Ok(SplitCertificate {
        verdict: rank == needed,
        coeffs: coeffs.to_vec(),
        vieta,
        primes,
        prime_index,
        q,
        presentation,
        maximal_count: maximals.len(),
        maximal,
        rank,
        needed,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::charpoly::minimal_poly;
    use crate::poly::Matrix;

    fn base() -> Arc<VarSet> {
        VarSet::of_block(&["x1", "x2"], Block::Base).unwrap()
    }

    fn coeffs_of(rows: &[&[&str]]) -> Vec<RationalFunction<Rational>> {
        let v = base();
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| RationalFunction::from_poly(MultiPoly::<Rational>::parse(s, &v).unwrap())).collect())
                .collect(),
        )
        .unwrap();
        rational_coefficients(&minimal_poly(&m).unwrap()).unwrap()
    }

    fn ideal(v: &Arc<VarSet>, gens: &[&str]) -> Ideal<Rational> {
        Ideal::new(v, gens.iter().map(|s| MultiPoly::parse(s, v).unwrap()))
    }

    #[test]
    fn vieta_of_rellich() {
        let c = coeffs_of(&[&["2*x1", "x1+x2"], &["x1+x2", "2*x2"]]);
        let j = vieta_ideal(&c, &Ideal::zero(&base())).unwrap();
        let expected = ideal(j.vars(), &["y1+y2-2*x1-2*x2", "y1*y2+x1^2-2*x1*x2+x2^2"]);
        assert!(j.same_as(&expected));
    }

    #[test]
    fn linear_minimal_polynomial() {
        let c = coeffs_of(&[&["x1", "0"], &["0", "x1"]]);
        let j = vieta_ideal(&c, &Ideal::zero(&base())).unwrap();
        assert!(j.same_as(&ideal(j.vars(), &["y1-x1"])));
        let cert = decide_split(&c, &Ideal::zero(&base()), &SplitOptions::default()).unwrap();
        assert!(cert.verdict);
        assert_eq!((cert.rank, cert.needed), (1, 1));
    }

    #[test]
    fn rellich_does_not_split() {
        let c = coeffs_of(&[&["2*x1", "x1+x2"], &["x1+x2", "2*x2"]]);
        let cert = decide_split(&c, &Ideal::zero(&base()), &SplitOptions::default()).unwrap();
        assert!(!cert.verdict);
        assert_eq!(cert.rank, 1);
        assert_eq!(cert.presentation.closure_count(), 0);
    }

    #[test]
    fn out_of_range_prime_index() {
        let c = coeffs_of(&[&["x1", "0"], &["0", "x2"]]);
        let opts = SplitOptions { prime_index: Some(5), ..SplitOptions::default() };
        assert!(matches!(decide_split(&c, &Ideal::zero(&base()), &opts), Err(Error::Inconsistent(_))));
    }
}
