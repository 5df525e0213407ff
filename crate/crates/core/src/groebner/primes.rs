//! Minimal primes of ideals finite over a base ring, maximal ideals above
//! the origin, and ranks modulo a maximal ideal.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::buchberger::groebner_basis;
use super::factor::{factor_over_q, factor_univariate};
use super::ideal::{leading_coefficient_product, Ideal};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::poly::gcd::{div_exact, gcd, primitive_part};
use crate::poly::matrix::rank_and_pivots;
use crate::poly::multipoly::mono_divides;
use crate::poly::{upoly, Block, Matrix, MultiPoly, VarSet};
use crate::scalar::{AlgebraicScalar, Field, Rational, Tower};

pub const SHAPE_ATTEMPTS: usize = 8;

type Poly = MultiPoly<Rational>;

/// Number of standard monomials of a zero-dimensional monomial ideal given
/// by its generators; `None` when the quotient is infinite.
fn count_standard(lms: &[Vec<u32>], nv: usize) -> Option<usize> {
    let mut bounds = vec![0u32; nv];
    for i in 0..nv {
        let pure = lms
            .iter()
            .filter(|m| m.iter().enumerate().all(|(j, &e)| j == i || e == 0) && m[i] > 0)
            .map(|m| m[i])
            .min()?;
        bounds[i] = pure;
    }
    let mut count = 0;
    let mut cur = vec![0u32; nv];
    loop {
        if !lms.iter().any(|m| mono_divides(m, &cur)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == nv {
                return Some(count);
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// Vector-space dimension of `I·k(params)[main]`.
fn fiber_degree(ideal: &Ideal<Rational>, main: &[usize], params: &[usize]) -> Option<usize> {
    let vars = ideal.vars();
    let mut perm: Vec<usize> = main.to_vec();
    perm.extend(params.iter().copied());
    let pv = vars.select(&perm);
    let gens: Vec<Poly> = ideal.gens().iter().map(|g| g.remap(&pv).expect("names")).collect();
    let ord = MonomialOrder::Block(main.len());
    let lms: Vec<Vec<u32>> = groebner_basis(&gens, ord)
        .iter()
        .map(|g| g.leading_monomial(ord).expect("nonzero")[..main.len()].to_vec())
        .collect();
    count_standard(&lms, main.len())
}

/// Generator of `(I + ⟨T − ℓ⟩)·k(params)[T] ∩ k(params)[T]` in a ring with
/// the extra variable `T` prepended.
fn eliminant(
    ideal: &Ideal<Rational>,
    form: &Poly,
    params: &[usize],
) -> (Arc<VarSet>, Poly) {
    let vars = ideal.vars();
    let tname = vars.fresh("_T");
    let ext = vars.prepend([(tname.as_str(), Block::Aux)]).expect("fresh");
    let t = MultiPoly::var(&ext, 0);
    let ext_ideal = ideal
        .remap(&ext)
        .expect("subset")
        .with([t.sub(&form.remap(&ext).expect("subset"))]);
    let elim: Vec<usize> = (1..ext.len()).filter(|i| !params.contains(&(i - 1))).collect();
    let e = ext_ideal.eliminate(&elim);
    let mut g: Option<Poly> = None;
    for p in e.gens().iter().filter(|p| p.degree_in(0) > 0) {
        g = Some(match g {
            None => p.clone(),
            Some(q) => gcd(&q, p),
        });
    }
    let g = g.map(|g| primitive_part(&g, 0)).unwrap_or_else(|| MultiPoly::one(&ext));
    (ext, g)
}

fn random_form(vars: &Arc<VarSet>, main: &[usize], rng: &mut ChaCha8Rng) -> Poly {
    let mut f = MultiPoly::zero(vars);
    for &v in main {
        let c: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        f = f.add(&MultiPoly::var(vars, v).scale(&Rational::from_integer(c.into())));
    }
    f
}

/// Candidate separating forms: single variables (last first), then seeded
/// random combinations.
fn candidate_forms(vars: &Arc<VarSet>, main: &[usize], seed: u64) -> Vec<Poly> {
    let mut out: Vec<Poly> = main.iter().rev().map(|&v| MultiPoly::var(vars, v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SHAPE_ATTEMPTS {
        out.push(random_form(vars, main, &mut rng));
    }
    out
}

/// Squarefree eliminants over `k(params)` adjoined to `ideal`.
fn radical_over(ideal: &Ideal<Rational>, main: &[usize], params: &[usize]) -> Ideal<Rational> {
    let mut extra = Vec::new();
    for &v in main {
        let (ext, p) = eliminant(ideal, &MultiPoly::var(ideal.vars(), v), params);
        if p.degree_in(0) == 0 {
            continue;
        }
        let d = gcd(&p, &p.derivative(0));
        if d.degree_in(0) > 0 {
            let sq = primitive_part(&div_exact(&p, &d).expect("gcd divides"), 0);
            let back = sq.substitute(&[(0, MultiPoly::var(&ext, v + 1))], &ext);
            extra.push(back.remap(ideal.vars()).expect("T substituted"));
        }
    }
    ideal.with(extra).reduced()
}

/// Serialization used to order primes: the lex reduced basis, generators by
/// descending leading term, each printed with ascending terms.
pub fn prime_key(p: &Ideal<Rational>) -> String {
    let gb = p.gb(MonomialOrder::Lex);
    let parts: Vec<String> =
        gb.iter().rev().map(|g| g.format_with(MonomialOrder::Lex, true)).collect();
    parts.join(",")
}

/// The minimal primes of an ideal whose quotient is finite over `k[base]`
/// (more precisely, over a maximal independent subset of `base`), sorted by
/// [`prime_key`].
pub fn minimal_primes_finite(
    ideal: &Ideal<Rational>,
    base: &[usize],
    seed: u64,
) -> Result<Vec<Ideal<Rational>>> {
    if ideal.is_unit() {
        return Ok(Vec::new());
    }
    let vars = ideal.vars().clone();
    let params = ideal.max_independent_set(base);
    let main: Vec<usize> = (0..vars.len()).filter(|i| !params.contains(i)).collect();
    if main.is_empty() {
        return Ok(vec![ideal.clone()]);
    }
    let rad = radical_over(ideal, &main, &params);
    let degree = fiber_degree(&rad, &main, &params)
        .ok_or_else(|| Error::Internal("ideal is not finite over its parameters".into()))?;

    let mut chosen: Option<(Arc<VarSet>, Poly, Poly)> = None;
    for form in candidate_forms(&vars, &main, seed) {
        let (ext, p) = eliminant(&rad, &form, &params);
        if p.degree_in(0) as usize == degree {
            chosen = Some((ext, p, form));
            break;
        }
    }
    let (ext, elim, form) = chosen.ok_or(Error::ShapePosition(SHAPE_ATTEMPTS))?;

    let (_, factors) = factor_over_q(&elim)?;
    let mut primes = Vec::new();
    for (f, _) in factors {
        if f.degree_in(0) == 0 {
            continue;
        }
        let at_form = f.substitute(&[(0, form.remap(&ext).expect("subset"))], &ext);
        let comp = rad.with([at_form.remap(&vars).expect("T substituted")]);
        let h = leading_coefficient_product(&comp, &main, &params);
        let prime = if h.is_constant() { comp.reduced() } else { comp.saturate(&h) };
        if !prime.is_unit() {
            primes.push(prime);
        }
    }
    primes.sort_by_cached_key(prime_key);
    Ok(primes)
}

/// `P ∩ k[base] ⊆ ⟨base⟩`.
pub fn contracts_into_origin(p: &Ideal<Rational>, base: &[usize]) -> bool {
    let elim: Vec<usize> = (0..p.vars().len()).filter(|i| !base.contains(i)).collect();
    p.eliminate(&elim).gens().iter().all(|g| g.constant_term().is_zero())
}

/// A maximal ideal with an explicit real embedding of its residue field.
#[derive(Clone, Debug)]
pub struct MaximalIdeal {
    pub ideal: Ideal<Rational>,
    pub tower: Tower,
    /// Residue of every ring variable, indexed like the variable set.
    pub residues: Vec<AlgebraicScalar>,
}

impl MaximalIdeal {
    /// Image of a polynomial in `κ(𝔫)`.
    pub fn residue<C: Field>(&self, p: &MultiPoly<C>) -> Result<AlgebraicScalar> {
        let p = p.remap(self.ideal.vars())?;
        let mut acc = AlgebraicScalar::zero();
        for (m, c) in p.terms() {
            let g = c
                .as_gaussian()
                .ok_or_else(|| Error::Unsupported(format!("coefficient {c} outside ℚ(i)")))?;
            let mut t = AlgebraicScalar::from(g);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&self.residues[i].pow(e))?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Rank of a polynomial matrix after reduction into `κ(𝔫)`.
    pub fn rank_mod<C: Field>(&self, m: &Matrix<MultiPoly<C>>) -> Result<usize> {
        let red = m.try_map(|p| self.residue(p))?;
        Ok(rank_and_pivots(&red).0)
    }

    pub fn contains<C: Field>(&self, p: &MultiPoly<C>) -> Result<bool> {
        Ok(self.residue(p)?.is_zero())
    }
}

fn largest_root_interval(p: &[Rational]) -> Option<(Rational, Rational)> {
    upoly::isolate_real_roots(p).into_iter().last()
}

/// Maximal ideals of a ring presented by `ideal` lying above the origin of
/// the `base` variables. Each residue field is embedded through the largest
/// real root of its defining polynomial.
pub fn maximal_ideals_at_origin(
    ideal: &Ideal<Rational>,
    base: &[usize],
    seed: u64,
) -> Result<Vec<MaximalIdeal>> {
    let vars = ideal.vars().clone();
    let fiber_idx: Vec<usize> = (0..vars.len()).filter(|i| !base.contains(i)).collect();
    let fvars = vars.select(&fiber_idx);
    let zero = Rational::zero();
    let at_origin: Vec<(usize, Rational)> = base.iter().map(|&i| (i, zero.clone())).collect();
    let fiber = Ideal::new(
        &fvars,
        ideal
            .gens()
            .iter()
            .map(|g| g.eval_vars(&at_origin).remap(&fvars).expect("base variables removed")),
    );
    if fiber.is_unit() {
        return Ok(Vec::new());
    }
    let rad = fiber.radical();
    let all: Vec<usize> = (0..fvars.len()).collect();
    let degree = fiber_degree(&rad, &all, &[])
        .ok_or_else(|| Error::Internal("fiber over the origin is not finite".into()))?;

    let mut chosen = None;
    for (k, form) in candidate_forms(&fvars, &all, seed).into_iter().enumerate() {
        let (ext, p) = eliminant(&rad, &form, &[]);
        if p.degree_in(0) as usize == degree {
            chosen = Some((k, ext, p, form));
            break;
        }
    }
    let (k, ext, elim, form) = chosen.ok_or(Error::ShapePosition(SHAPE_ATTEMPTS))?;
    let gen_name = if k < fvars.len() { fvars.name(fvars.len() - 1 - k).to_string() } else { "a".into() };
    let uni: Vec<Rational> = elim.to_univariate(0).iter().map(|c| c.constant_term()).collect();

    let mut out = Vec::new();
    for (f, _) in factor_univariate(&uni)? {
        let fpoly = MultiPoly::from_univariate(
            &ext,
            0,
            &f.iter().map(|c| MultiPoly::constant(&ext, c.clone())).collect::<Vec<_>>(),
        );
        let (tower, root) = if f.len() == 2 {
            (Tower::base(), AlgebraicScalar::rational(f[0].neg().div(&f[1]).expect("nonzero")))
        } else {
            let (lo, hi) = largest_root_interval(&f).ok_or_else(|| {
                Error::NoRealEmbedding(format!("residue field defined by {fpoly}"))
            })?;
            let coeffs: Vec<AlgebraicScalar> = f.iter().cloned().map(AlgebraicScalar::rational).collect();
            let t = Tower::base().adjoin(&gen_name, &coeffs, lo, hi)?;
            let g = t.generator();
            (t, g)
        };
        // shape position: lex basis with T last gives v − h_v(T)
        let mut order: Vec<usize> = (1..ext.len()).collect();
        order.push(0);
        let lv = ext.select(&order);
        let comp: Vec<Poly> = rad
            .gens()
            .iter()
            .map(|g| g.remap(&lv).expect("names"))
            .chain([
                MultiPoly::var(&lv, lv.len() - 1).sub(&form.remap(&lv).expect("names")),
                fpoly.remap(&lv).expect("names"),
            ])
            .collect();
        let gb = groebner_basis(&comp, MonomialOrder::Lex);
        let tpos = lv.len() - 1;
        let mut fiber_res: Vec<Option<AlgebraicScalar>> = vec![None; fvars.len()];
        for g in &gb {
            let lm = g.leading_monomial(MonomialOrder::Lex).expect("nonzero");
            let Some(v) = (0..tpos).find(|&i| lm[i] > 0) else { continue };
            if lm[v] != 1 || lm.iter().enumerate().any(|(i, &e)| i != v && e > 0) {
                return Err(Error::Internal(format!("maximal ideal not in shape position: {g}")));
            }
            let lc = g.leading_coeff(MonomialOrder::Lex);
            let tail = g.sub(&MultiPoly::monomial(&lv, lm.clone(), lc.clone()));
            // v = −tail(T)/lc
            let mut val = AlgebraicScalar::zero();
            for (m, c) in tail.terms() {
                let term = AlgebraicScalar::rational(c.clone()).try_mul(&root.pow(m[tpos]))?;
                val = val.try_add(&term)?;
            }
            let scale = AlgebraicScalar::rational(lc.neg().inv().expect("nonzero"));
            fiber_res[v] = Some(val.try_mul(&scale)?);
        }
        let mut residues = vec![AlgebraicScalar::zero(); vars.len()];
        for (j, &i) in fiber_idx.iter().enumerate() {
            residues[i] = fiber_res[j]
                .clone()
                .ok_or_else(|| Error::Internal(format!("no residue for {}", fvars.name(j))))?;
        }
        let max_ideal = {
            let at_form = fpoly.substitute(&[(0, form.remap(&ext).expect("subset"))], &ext);
            let mut gens: Vec<Poly> = base.iter().map(|&i| MultiPoly::var(&vars, i)).collect();
            gens.extend(rad.gens().iter().map(|g| g.remap(&vars).expect("subset")));
            gens.push(at_form.remap(&vars).expect("T substituted"));
            Ideal::new(&vars, gens).reduced()
        };
        out.push(MaximalIdeal { ideal: max_ideal, tower, residues });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: &[(&str, Block)]) -> Arc<VarSet> {
        VarSet::new(spec.iter().cloned()).unwrap()
    }

    fn ideal(v: &Arc<VarSet>, gens: &[&str]) -> Ideal<Rational> {
        Ideal::new(v, gens.iter().map(|s| MultiPoly::parse(s, v).unwrap()))
    }

    #[test]
    fn vieta_primes_of_split_polynomials() {
        let v = ring(&[("y1", Block::Root), ("y2", Block::Root), ("x1", Block::Base), ("x2", Block::Base)]);
        let j = ideal(&v, &["y1+y2-x1-x2", "y1*y2-x1*x2"]);
        let ps = minimal_primes_finite(&j, &[2, 3], 1).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(ps[0].same_as(&ideal(&v, &["y1-x1", "y2-x2"])), "{}", ps[0]);

        let j = ideal(&v, &["y1+y2-x1^2-x2^2", "y1*y2"]);
        let ps = minimal_primes_finite(&j, &[2, 3], 1).unwrap();
        assert!(ps[0].same_as(&ideal(&v, &["y1-x1^2-x2^2", "y2"])), "{}", ps[0]);
    }

    #[test]
    fn irreducible_vieta_ideal_is_its_own_prime() {
        let v = ring(&[("y1", Block::Root), ("y2", Block::Root), ("x1", Block::Base), ("x2", Block::Base)]);
        let j = ideal(&v, &["y1+y2-2*x1-2*x2", "y1*y2+x1^2-2*x1*x2+x2^2"]);
        let ps = minimal_primes_finite(&j, &[2, 3], 1).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].same_as(&j));
    }

    #[test]
    fn nilpotent_fiber() {
        let v = ring(&[("y1", Block::Root), ("y2", Block::Root)]);
        let j = ideal(&v, &["y1+y2", "y1*y2"]);
        let ps = minimal_primes_finite(&j, &[], 1).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].same_as(&ideal(&v, &["y1", "y2"])));
    }

    #[test]
    fn maximal_ideal_with_quadratic_residue_field() {
        let v = ring(&[("y", Block::Root), ("x", Block::Base)]);
        let i = ideal(&v, &["x", "y^2-2"]);
        let ms = maximal_ideals_at_origin(&i, &[1], 1).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].tower.degree(), 2);
        let y = MultiPoly::<Rational>::parse("y^2", &v).unwrap();
        assert_eq!(ms[0].residue(&y).unwrap(), AlgebraicScalar::from_i64(2));
        let i = ideal(&v, &["x", "y"]);
        let ms = maximal_ideals_at_origin(&i, &[1], 1).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].tower.depth(), 0);
    }
}
