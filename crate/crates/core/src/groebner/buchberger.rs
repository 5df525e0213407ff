//! Buchberger's algorithm with the Gebauer–Möller criteria and the normal
//! selection strategy.

use std::cmp::Ordering;
use std::sync::Arc;

use super::order::MonomialOrder;
use crate::poly::multipoly::{mono_divides, mono_lcm, mono_mul, Monomial};
use crate::poly::{MultiPoly, VarSet};
use crate::scalar::Field;

/// Polynomial as a term list sorted in descending order.
#[derive(Clone, Debug)]
pub(crate) struct GPoly<C: Field> {
    pub terms: Vec<(Monomial, C)>,
}

impl<C: Field> GPoly<C> {
    pub fn from_multi(p: &MultiPoly<C>, ord: MonomialOrder) -> Self {
        GPoly {
            terms: p.sorted_terms(ord).into_iter().map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn to_multi(&self, vars: &Arc<VarSet>) -> MultiPoly<C> {
        MultiPoly::from_terms(vars, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &C {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn scale(&mut self, c: &C) {
        for t in &mut self.terms {
            t.1 = t.1.mul(c);
        }
    }

    /// `self − c·m·g`, merging sorted term lists.
    fn sub_mul(&self, g: &GPoly<C>, m: &[u32], c: &C, ord: MonomialOrder) -> GPoly<C> {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| mono_mul(&g.terms[k].0, m);
        let mut gj = if g.terms.is_empty() { None } else { Some(shifted(0)) };
        while i < self.terms.len() || gj.is_some() {
            let take = match (&self.terms.get(i), &gj) {
                (Some(a), Some(b)) => ord.cmp(&a.0, b),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match take {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let mono = gj.take().expect("term");
                    out.push((mono, g.terms[j].1.mul(c).neg()));
                    j += 1;
                    gj = if j < g.terms.len() { Some(shifted(j)) } else { None };
                }
                Ordering::Equal => {
                    let v = self.terms[i].1.sub(&g.terms[j].1.mul(c));
                    let mono = gj.take().expect("term");
                    if !v.is_zero() {
                        out.push((mono, v));
                    }
                    i += 1;
                    j += 1;
                    gj = if j < g.terms.len() { Some(shifted(j)) } else { None };
                }
            }
        }
        GPoly { terms: out }
    }
}

/// Extra data carried through reductions: the cofactor of one designated
/// input generator.
pub(crate) trait Payload<C: Field>: Clone {
    fn sub_mul(&self, other: &Self, m: &[u32], c: &C) -> Self;
    fn scale(&self, c: &C) -> Self;
}

impl<C: Field> Payload<C> for () {
    fn sub_mul(&self, _: &Self, _: &[u32], _: &C) -> Self {}
    fn scale(&self, _: &C) -> Self {}
}

impl<C: Field> Payload<C> for MultiPoly<C> {
    fn sub_mul(&self, other: &Self, m: &[u32], c: &C) -> Self {
        self.sub(&other.mul_monomial(m, c))
    }
    fn scale(&self, c: &C) -> Self {
        MultiPoly::scale(self, c)
    }
}

#[derive(Clone)]
pub(crate) struct Elem<C: Field, P: Payload<C>> {
    pub poly: GPoly<C>,
    pub payload: P,
}

/// Fully reduces `p` modulo `basis` (only elements flagged active).
pub(crate) fn reduce<C: Field, P: Payload<C>>(
    p: &Elem<C, P>,
    basis: &[Elem<C, P>],
    active: &[bool],
    ord: MonomialOrder,
) -> Elem<C, P> {
    let mut rest = p.poly.clone();
    let mut payload = p.payload.clone();
    let mut done: Vec<(Monomial, C)> = Vec::new();
    while !rest.is_zero() {
        let (m, c) = rest.terms[0].clone();
        let found = basis
            .iter()
            .enumerate()
            .find(|(k, g)| active[*k] && mono_divides(g.poly.lm(), &m));
        match found {
            Some((_, g)) => {
                let q = crate::poly::multipoly::mono_div(&m, g.poly.lm());
                let f = c.mul(&g.poly.lc().inv().expect("nonzero"));
                rest = rest.sub_mul(&g.poly, &q, &f, ord);
                payload = payload.sub_mul(&g.payload, &q, &f);
            }
            None => {
                done.push((m, c));
                rest.terms.remove(0);
            }
        }
    }
    Elem { poly: GPoly { terms: done }, payload }
}

fn spoly<C: Field, P: Payload<C>>(f: &Elem<C, P>, g: &Elem<C, P>, ord: MonomialOrder) -> Elem<C, P> {
    let l = mono_lcm(f.poly.lm(), g.poly.lm());
    let mf = crate::poly::multipoly::mono_div(&l, f.poly.lm());
    let mg = crate::poly::multipoly::mono_div(&l, g.poly.lm());
    let cf = f.poly.lc().inv().expect("nonzero");
    let cg = g.poly.lc().inv().expect("nonzero");
    // cf·mf·f − cg·mg·g
    let zero = GPoly { terms: Vec::new() };
    let a = zero.sub_mul(&f.poly, &mf, &cf.neg(), ord);
    let pa = f.payload.scale(&C::zero()).sub_mul(&f.payload, &mf, &cf.neg());
    Elem { poly: a.sub_mul(&g.poly, &mg, &cg, ord), payload: pa.sub_mul(&g.payload, &mg, &cg) }
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Reduced Gröbner basis, sorted by ascending leading monomial.
pub(crate) fn groebner<C: Field, P: Payload<C>>(
    input: Vec<Elem<C, P>>,
    ord: MonomialOrder,
) -> Vec<Elem<C, P>> {
    let mut polys: Vec<Elem<C, P>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();

    let insert = |h: Elem<C, P>,
                      polys: &mut Vec<Elem<C, P>>,
                      active: &mut Vec<bool>,
                      pairs: &mut Vec<(usize, usize, Monomial)>| {
        let hi = polys.len();
        let lh = h.poly.lm().clone();
        let mut cands: Vec<usize> = (0..hi).filter(|&k| active[k]).collect();
        let mut keep: Vec<usize> = Vec::new();
        while let Some(g1) = cands.pop() {
            let l1 = mono_lcm(&lh, polys[g1].poly.lm());
            let redundant = cands
                .iter()
                .chain(keep.iter())
                .any(|&g2| mono_divides(&mono_lcm(&lh, polys[g2].poly.lm()), &l1));
            if coprime(&lh, polys[g1].poly.lm()) || !redundant {
                keep.push(g1);
            }
        }
        pairs.retain(|(a, b, l)| {
            let la = polys[*a].poly.lm();
            let lb = polys[*b].poly.lm();
            !(mono_divides(&lh, l) && mono_lcm(la, &lh) != *l && mono_lcm(&lh, lb) != *l)
        });
        keep.sort_unstable();
        for g in keep {
            if !coprime(&lh, polys[g].poly.lm()) {
                pairs.push((g, hi, mono_lcm(&lh, polys[g].poly.lm())));
            }
        }
        for k in 0..hi {
            if active[k] && mono_divides(&lh, polys[k].poly.lm()) {
                active[k] = false;
            }
        }
        polys.push(h);
        active.push(true);
    };

    for e in input {
        if e.poly.is_zero() {
            continue;
        }
        let r = reduce(&e, &polys, &active, ord);
        if r.poly.is_zero() {
            continue;
        }
        insert(r, &mut polys, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                ord.cmp(&pairs[a].2, &pairs[b].2)
                    .then_with(|| (pairs[a].0, pairs[a].1).cmp(&(pairs[b].0, pairs[b].1)))
            })
            .expect("nonempty");
        let (i, j, _) = pairs.swap_remove(best);
        let s = spoly(&polys[i], &polys[j], ord);
        let mut r = reduce(&s, &polys, &active, ord);
        if r.poly.is_zero() {
            continue;
        }
        let inv = r.poly.lc().inv().expect("nonzero");
        r.poly.scale(&inv);
        r.payload = r.payload.scale(&inv);
        insert(r, &mut polys, &mut active, &mut pairs);
    }

    // minimal basis, then interreduce
    let mut basis: Vec<Elem<C, P>> = Vec::new();
    for (k, p) in polys.into_iter().enumerate() {
        if active[k] {
            basis.push(p);
        }
    }
    basis.sort_by(|a, b| ord.cmp(a.poly.lm(), b.poly.lm()));
    let mut minimal: Vec<Elem<C, P>> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|q| mono_divides(q.poly.lm(), p.poly.lm())) {
            minimal.push(p);
        }
    }
    let n = minimal.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut act = vec![true; n];
        act[k] = false;
        let mut r = reduce(&minimal[k], &minimal, &act, ord);
        let inv = r.poly.lc().inv().expect("nonzero");
        r.poly.scale(&inv);
        r.payload = r.payload.scale(&inv);
        out.push(r);
    }
    out
}

pub fn groebner_basis<C: Field>(gens: &[MultiPoly<C>], ord: MonomialOrder) -> Vec<MultiPoly<C>> {
    let Some(first) = gens.first() else { return Vec::new() };
    let vars = first.vars().clone();
    let input = gens
        .iter()
        .map(|g| Elem { poly: GPoly::from_multi(g, ord), payload: () })
        .collect();
    groebner(input, ord).into_iter().map(|e| e.poly.to_multi(&vars)).collect()
}

/// Remainder of `p` modulo a Gröbner basis.
pub fn normal_form<C: Field>(p: &MultiPoly<C>, gb: &[MultiPoly<C>], ord: MonomialOrder) -> MultiPoly<C> {
    let basis: Vec<Elem<C, ()>> =
        gb.iter().map(|g| Elem { poly: GPoly::from_multi(g, ord), payload: () }).collect();
    let active = vec![true; basis.len()];
    let e = Elem { poly: GPoly::from_multi(p, ord), payload: () };
    reduce(&e, &basis, &active, ord).poly.to_multi(p.vars())
}

/// Gröbner basis of `⟨g⟩ + ⟨others⟩` where every element records its
/// cofactor with respect to `g` (contributions of `others` are dropped).
pub fn groebner_with_cofactor<C: Field>(
    g: &MultiPoly<C>,
    others: &[MultiPoly<C>],
    ord: MonomialOrder,
) -> Vec<(MultiPoly<C>, MultiPoly<C>)> {
    let vars = g.vars().clone();
    let mut input = vec![Elem { poly: GPoly::from_multi(g, ord), payload: MultiPoly::one(&vars) }];
    for o in others {
        input.push(Elem { poly: GPoly::from_multi(o, ord), payload: MultiPoly::zero(&vars) });
    }
    groebner(input, ord)
        .into_iter()
        .map(|e| (e.poly.to_multi(&vars), e.payload))
        .collect()
}

/// Reduces `p` by a tracked basis, returning `(remainder, cofactor)` with
/// `p − cofactor·g − remainder ∈ ⟨others⟩`.
pub fn reduce_with_cofactor<C: Field>(
    p: &MultiPoly<C>,
    basis: &[(MultiPoly<C>, MultiPoly<C>)],
    ord: MonomialOrder,
) -> (MultiPoly<C>, MultiPoly<C>) {
    let vars = p.vars().clone();
    let b: Vec<Elem<C, MultiPoly<C>>> = basis
        .iter()
        .map(|(q, c)| Elem { poly: GPoly::from_multi(q, ord), payload: c.clone() })
        .collect();
    let active = vec![true; b.len()];
    let e = Elem { poly: GPoly::from_multi(p, ord), payload: MultiPoly::zero(&vars) };
    let r = reduce(&e, &b, &active, ord);
    // reduce() computed rest = p − Σ f·m·g, payload = −Σ f·m·cof
    (r.poly.to_multi(&vars), r.payload.neg())
}
