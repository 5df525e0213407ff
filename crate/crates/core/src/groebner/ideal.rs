//! Polynomial ideals with cached Gröbner bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::buchberger::{groebner_basis, normal_form};
use super::order::MonomialOrder;
use crate::error::Result;
use crate::poly::gcd::{div_exact, gcd, lcm, normalize, primitive_part};
use crate::poly::{Block, MultiPoly, VarSet};
use crate::scalar::Field;

pub struct Ideal<C: Field> {
    vars: Arc<VarSet>,
    gens: Vec<MultiPoly<C>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<MultiPoly<C>>>>>,
}

impl<C: Field> Clone for Ideal<C> {
    fn clone(&self) -> Self {
        Ideal {
            vars: self.vars.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl<C: Field> fmt::Debug for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl<C: Field> fmt::Display for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "⟨{}⟩", g.join(", "))
    }
}

impl<C: Field> Ideal<C> {
    pub fn new(vars: &Arc<VarSet>, gens: impl IntoIterator<Item = MultiPoly<C>>) -> Self {
        let gens: Vec<MultiPoly<C>> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.remap(vars).expect("generator outside the ring"))
            .collect();
        Ideal { vars: vars.clone(), gens, cache: Mutex::new(HashMap::new()) }
    }

    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Self::new(vars, [])
    }

    pub fn unit(vars: &Arc<VarSet>) -> Self {
        Self::new(vars, [MultiPoly::one(vars)])
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn gens(&self) -> &[MultiPoly<C>] {
        &self.gens
    }

    /// Reduced Gröbner basis, sorted by ascending leading monomial.
    pub fn gb(&self, ord: MonomialOrder) -> Arc<Vec<MultiPoly<C>>> {
        if let Some(g) = self.cache.lock().expect("cache lock").get(&ord) {
            return g.clone();
        }
        let g = Arc::new(groebner_basis(&self.gens, ord));
        self.cache.lock().expect("cache lock").insert(ord, g.clone());
        g
    }

    /// Ideal generated by its own reduced degrevlex basis.
    pub fn reduced(&self) -> Self {
        let g = self.gb(MonomialOrder::DegRevLex);
        let out = Ideal::new(&self.vars, g.iter().cloned());
        out.cache.lock().expect("cache lock").insert(MonomialOrder::DegRevLex, g);
        out
    }

    pub fn normal_form_in(&self, p: &MultiPoly<C>, ord: MonomialOrder) -> MultiPoly<C> {
        normal_form(&p.remap(&self.vars).expect("polynomial outside the ring"), &self.gb(ord), ord)
    }

    pub fn normal_form(&self, p: &MultiPoly<C>) -> MultiPoly<C> {
        self.normal_form_in(p, MonomialOrder::DegRevLex)
    }

    pub fn contains(&self, p: &MultiPoly<C>) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal<C>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality by double inclusion.
    pub fn same_as(&self, other: &Ideal<C>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.gb(MonomialOrder::DegRevLex).iter().any(|g| g.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn with(&self, extra: impl IntoIterator<Item = MultiPoly<C>>) -> Self {
        Ideal::new(&self.vars, self.gens.iter().cloned().chain(extra))
    }

    pub fn sum(&self, other: &Ideal<C>) -> Self {
        self.with(other.gens.iter().cloned())
    }

    pub fn product(&self, other: &Ideal<C>) -> Self {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(&b.remap(&self.vars).expect("same ring")));
            }
        }
        Ideal::new(&self.vars, g)
    }

    /// The same ideal in a larger (or reordered) variable set.
    pub fn remap(&self, target: &Arc<VarSet>) -> Result<Self> {
        let g = self.gens.iter().map(|p| p.remap(target)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, g))
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Ideal<D> {
        Ideal::new(&self.vars, self.gens.iter().map(|g| g.map_coeffs(&f)))
    }

    /// `I ∩ k[remaining variables]`, expressed in the same ring.
    pub fn eliminate(&self, elim: &[usize]) -> Self {
        if elim.is_empty() {
            return self.clone();
        }
        let mut perm: Vec<usize> = elim.to_vec();
        perm.extend((0..self.vars.len()).filter(|i| !elim.contains(i)));
        let pv = self.vars.select(&perm);
        let gens: Vec<MultiPoly<C>> =
            self.gens.iter().map(|g| g.remap(&pv).expect("same names")).collect();
        let gb = groebner_basis(&gens, MonomialOrder::Block(elim.len()));
        let kept = gb
            .into_iter()
            .filter(|g| (0..elim.len()).all(|i| g.degree_in(i) == 0))
            .map(|g| g.remap(&self.vars).expect("same names"));
        Ideal::new(&self.vars, kept)
    }

    /// Intersection via `t·I + (1−t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal<C>) -> Self {
        if self.is_unit() {
            return other.remap(&self.vars).expect("same ring");
        }
        if other.is_unit() {
            return self.clone();
        }
        let tname = self.vars.fresh("_t");
        let ext = self.vars.prepend([(tname.as_str(), Block::Aux)]).expect("fresh name");
        let t = MultiPoly::var(&ext, 0);
        let one_minus_t = MultiPoly::one(&ext).sub(&t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&g.remap(&ext).expect("subset")));
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&g.remap(&ext).expect("subset")));
        }
        let gb = groebner_basis(&gens, MonomialOrder::Block(1));
        let kept = gb
            .into_iter()
            .filter(|g| g.degree_in(0) == 0)
            .map(|g| g.remap(&self.vars).expect("t eliminated"));
        Ideal::new(&self.vars, kept).reduced()
    }

    /// `(I : f) = (I ∩ ⟨f⟩)/f`.
    pub fn quotient_poly(&self, f: &MultiPoly<C>) -> Self {
        let f = f.remap(&self.vars).expect("same ring");
        if f.is_zero() {
            return Ideal::unit(&self.vars);
        }
        if f.is_constant() {
            return self.clone();
        }
        let meet = self.intersect(&Ideal::new(&self.vars, [f.clone()]));
        let q = meet.gens.iter().map(|g| div_exact(g, &f).expect("intersection lies in ⟨f⟩"));
        Ideal::new(&self.vars, q).reduced()
    }

    /// `(I : J)`, intersected over the generators of `J`.
    pub fn colon(&self, other: &Ideal<C>) -> Self {
        let mut acc: Option<Ideal<C>> = None;
        for g in &other.gens {
            let q = self.quotient_poly(g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.vars))
    }

    /// `(I : f^∞)`, iterating colons until the basis stabilizes.
    pub fn saturate(&self, f: &MultiPoly<C>) -> Self {
        let mut cur = self.reduced();
        loop {
            let next = cur.quotient_poly(f);
            if *next.gb(MonomialOrder::DegRevLex) == *cur.gb(MonomialOrder::DegRevLex) {
                return cur;
            }
            cur = next;
        }
    }

    /// `(I : J^∞)`.
    pub fn saturate_ideal(&self, other: &Ideal<C>) -> Self {
        let mut cur = self.reduced();
        loop {
            let next = cur.colon(other);
            if *next.gb(MonomialOrder::DegRevLex) == *cur.gb(MonomialOrder::DegRevLex) {
                return cur;
            }
            cur = next;
        }
    }

    /// True when no degrevlex leading monomial lives purely in `set`; this
    /// implies independence.
    fn lm_independent(&self, set: &[usize]) -> bool {
        let gb = self.gb(MonomialOrder::DegRevLex);
        !gb.iter().any(|g| {
            let lm = g.leading_monomial(MonomialOrder::DegRevLex).expect("nonzero");
            lm.iter().enumerate().all(|(i, &e)| e == 0 || set.contains(&i))
        })
    }

    /// `I ∩ k[set] = 0`.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        if self.lm_independent(set) {
            return true;
        }
        let elim: Vec<usize> = (0..self.vars.len()).filter(|i| !set.contains(i)).collect();
        self.eliminate(&elim).gens.iter().all(|g| g.is_zero())
    }

    /// A maximal independent set of largest size. Candidates are tried as
    /// combinations of `preference` (then the remaining variables) in order.
    pub fn max_independent_set(&self, preference: &[usize]) -> Vec<usize> {
        if self.is_unit() {
            return Vec::new();
        }
        let dim = self.dimension() as usize;
        let mut order: Vec<usize> = preference.to_vec();
        order.extend((0..self.vars.len()).filter(|i| !preference.contains(i)));
        for combo in combinations(order.len(), dim) {
            let set: Vec<usize> = combo.iter().map(|&k| order[k]).collect();
            if self.is_independent(&set) {
                let mut s = set;
                s.sort_unstable();
                return s;
            }
        }
        unreachable!("a set of size dim is independent")
    }

    /// Krull dimension (−1 for the unit ideal).
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.vars.len();
        for size in (0..=n).rev() {
            if combinations(n, size).iter().any(|c| self.lm_independent(c)) {
                return size as i64;
            }
        }
        0
    }

    /// Generator of `I·k(U)[v]`: the primitive gcd of the elements of
    /// `I ∩ k[U, v]`.
    fn eliminant_over(&self, v: usize, params: &[usize]) -> Option<MultiPoly<C>> {
        let elim: Vec<usize> =
            (0..self.vars.len()).filter(|i| *i != v && !params.contains(i)).collect();
        let e = self.eliminate(&elim);
        let mut g: Option<MultiPoly<C>> = None;
        for p in e.gens.iter().filter(|p| p.degree_in(v) > 0) {
            g = Some(match g {
                None => p.clone(),
                Some(q) => gcd(&q, p),
            });
        }
        g.map(|g| primitive_part(&g, v))
    }

    /// Radical, by adjoining squarefree eliminants over a maximal
    /// independent set and recursing on the discarded locus.
    pub fn radical(&self) -> Self {
        if self.is_unit() {
            return Ideal::unit(&self.vars);
        }
        if self.is_zero() {
            return self.clone();
        }
        let params = self.max_independent_set(&[]);
        let others: Vec<usize> = (0..self.vars.len()).filter(|i| !params.contains(i)).collect();
        let mut extra = Vec::new();
        for &v in &others {
            let Some(p) = self.eliminant_over(v, &params) else { continue };
            let d = gcd(&p, &p.derivative(v));
            if d.degree_in(v) > 0 {
                extra.push(primitive_part(&div_exact(&p, &d).expect("gcd divides"), v));
            }
        }
        let enlarged = self.with(extra).reduced();
        if params.is_empty() {
            return enlarged;
        }
        let h = leading_coefficient_product(&enlarged, &others, &params);
        if h.is_constant() {
            return enlarged;
        }
        let main = enlarged.saturate(&h);
        let rest = self.with([h]).radical();
        main.intersect(&rest)
    }
}

/// Squarefree lcm of the `k[params]` leading coefficients of a block basis
/// with the `main` variables eliminated first.
pub fn leading_coefficient_product<C: Field>(
    ideal: &Ideal<C>,
    main: &[usize],
    params: &[usize],
) -> MultiPoly<C> {
    let vars = ideal.vars();
    let mut perm: Vec<usize> = main.to_vec();
    perm.extend(params.iter().copied());
    perm.extend((0..vars.len()).filter(|i| !main.contains(i) && !params.contains(i)));
    let pv = vars.select(&perm);
    let ord = MonomialOrder::Block(main.len());
    let gens: Vec<MultiPoly<C>> = ideal.gens().iter().map(|g| g.remap(&pv).expect("names")).collect();
    let gb = groebner_basis(&gens, ord);
    let k = main.len();
    let mut h = MultiPoly::one(&pv);
    for g in &gb {
        let lm = g.leading_monomial(ord).expect("nonzero");
        let head = &lm[..k];
        let coeff = MultiPoly::from_terms(
            &pv,
            g.terms().filter(|(m, _)| &m[..k] == head).map(|(m, c)| {
                let mut m2 = m.clone();
                m2[..k].iter_mut().for_each(|e| *e = 0);
                (m2, c.clone())
            }),
        );
        if !coeff.is_constant() {
            h = lcm(&h, &crate::poly::gcd::squarefree_part(&coeff));
        }
    }
    normalize(&h).remap(vars).expect("names")
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn ring(names: &[&str]) -> Arc<VarSet> {
        VarSet::of_block(names, Block::Base).unwrap()
    }

    fn ideal(v: &Arc<VarSet>, gens: &[&str]) -> Ideal<Rational> {
        Ideal::new(v, gens.iter().map(|s| MultiPoly::parse(s, v).unwrap()))
    }

    #[test]
    fn colon_and_intersection() {
        let v = ring(&["x", "y"]);
        let i = ideal(&v, &["x*y"]);
        assert!(i.quotient_poly(&MultiPoly::parse("x", &v).unwrap()).same_as(&ideal(&v, &["y"])));
        assert!(i.colon(&Ideal::unit(&v)).same_as(&i));
        let meet = ideal(&v, &["x"]).intersect(&ideal(&v, &["y"]));
        assert!(meet.same_as(&ideal(&v, &["x*y"])));
    }

    #[test]
    fn elimination() {
        let v = ring(&["y", "x1"]);
        assert!(ideal(&v, &["y-x1"]).eliminate(&[0]).is_zero());
        assert!(ideal(&v, &["y", "y-x1"]).eliminate(&[0]).same_as(&ideal(&v, &["x1"])));
    }

    #[test]
    fn saturation() {
        let v = ring(&["x", "y"]);
        let i = ideal(&v, &["x^3*y", "x^2*y^2"]);
        assert!(i.saturate(&MultiPoly::parse("x", &v).unwrap()).same_as(&ideal(&v, &["y"])));
    }

    #[test]
    fn radicals() {
        let v = ring(&["x", "y"]);
        assert!(ideal(&v, &["x^2", "y^3"]).radical().same_as(&ideal(&v, &["x", "y"])));
        assert!(ideal(&v, &["y^2-x^3"]).radical().same_as(&ideal(&v, &["y^2-x^3"])));
        assert!(ideal(&v, &["x^2*y", "x*y^2"]).radical().same_as(&ideal(&v, &["x*y"])));
        let r = ideal(&v, &["y^2", "x*y"]).radical();
        assert!(r.same_as(&ideal(&v, &["y"])), "{r}");
        let w = ring(&["y1", "y2"]);
        assert!(ideal(&w, &["y1+y2", "y1*y2"]).radical().same_as(&ideal(&w, &["y1", "y2"])));
    }

    #[test]
    fn dimensions() {
        let v = ring(&["x", "y", "z"]);
        assert_eq!(ideal(&v, &["x*y", "z"]).dimension(), 1);
        assert_eq!(ideal(&v, &["1"]).dimension(), -1);
        assert_eq!(Ideal::<Rational>::zero(&v).dimension(), 3);
    }
}
