use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::varset::VarSet;
use crate::error::{Error, Result};
use crate::expr::{self, ExprValue};
use crate::groebner::order::MonomialOrder;
use crate::scalar::tower::format_term;
use crate::scalar::{Field, GaussianRational};

pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial with exponent-vector keys.
#[derive(Clone, Debug)]
pub struct MultiPoly<C: Field> {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

pub fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

impl<C: Field> MultiPoly<C> {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<VarSet>, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, C::one())
    }

    pub fn var_named(vars: &Arc<VarSet>, name: &str) -> Self {
        Self::var(vars, vars.index(name).unwrap_or_else(|| panic!("unknown variable {name}")))
    }

    pub fn monomial(vars: &Arc<VarSet>, exps: Monomial, c: C) -> Self {
        debug_assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&vec![0; self.nvars()]).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff(&self, m: &[u32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| mono_degree(m)).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) {
        assert!(same_vars(&self.vars, &other.vars), "variable sets differ");
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same_vars(&self.vars, &other.vars) {
            return Err(Error::VarsetMismatch);
        }
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !same_vars(&self.vars, &other.vars) {
            return Err(Error::VarsetMismatch);
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &[u32], s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (mono_mul(m, mono), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c.mul(&C::from_i64(m[i] as i64)));
        }
        out
    }

    pub fn conj(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<D: Field>(&self, f: impl Fn(&C) -> Option<D>) -> Option<MultiPoly<D>> {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Some(out)
    }

    /// Simultaneous substitution; unbound variables are kept. Bindings must
    /// live in `target`, which must contain every unbound variable that
    /// occurs.
    pub fn substitute(&self, bindings: &[(usize, MultiPoly<C>)], target: &Arc<VarSet>) -> Self {
        let mut images: Vec<Option<MultiPoly<C>>> = vec![None; self.nvars()];
        for (i, p) in bindings {
            assert!(same_vars(p.vars(), target), "binding outside target ring");
            images[*i] = Some(p.clone());
        }
        for (i, img) in images.iter_mut().enumerate() {
            if img.is_none() && self.degree_in(i) > 0 {
                let j = target
                    .index(self.vars.name(i))
                    .unwrap_or_else(|| panic!("variable {} missing from target", self.vars.name(i)));
                *img = Some(MultiPoly::var(target, j));
            }
        }
        let mut powers: Vec<Vec<MultiPoly<C>>> = images
            .iter()
            .map(|_| vec![MultiPoly::one(target)])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = images[i].as_ref().expect("image");
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty").mul(base);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitutes constants for the listed variables, staying in the same
    /// ring.
    pub fn eval_vars(&self, values: &[(usize, C)]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut c2 = c.clone();
            for (i, v) in values {
                if m2[*i] > 0 {
                    c2 = c2.mul(&v.pow(m2[*i]));
                    m2[*i] = 0;
                }
            }
            out.add_term(m2, c2);
        }
        out
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-expresses the polynomial over another variable set by name.
    pub fn remap(&self, target: &Arc<VarSet>) -> Result<Self> {
        if same_vars(&self.vars, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.nvars());
        for i in 0..self.nvars() {
            map.push(target.index(self.vars.name(i)));
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; target.len()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => m2[j] = e,
                    None => {
                        return Err(Error::Inconsistent(format!(
                            "variable `{}` is not available",
                            self.vars.name(i)
                        )))
                    }
                }
            }
            out.add_term(m2, c.clone());
        }
        Ok(out)
    }

    /// Coefficients with respect to variable `i`, lowest power first.
    pub fn to_univariate(&self, i: usize) -> Vec<MultiPoly<C>> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(&self.vars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let k = m[i] as usize;
            let mut m2 = m.clone();
            m2[i] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    pub fn from_univariate(vars: &Arc<VarSet>, i: usize, coeffs: &[MultiPoly<C>]) -> Self {
        let mut out = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2[i] += k as u32;
                out.add_term(m2, a.clone());
            }
        }
        out
    }

    /// Terms sorted in descending order.
    pub fn sorted_terms(&self, ord: MonomialOrder) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<(&Monomial, &C)> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn leading(&self, ord: MonomialOrder) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, ord: MonomialOrder) -> Option<Monomial> {
        self.leading(ord).map(|(m, _)| m.clone())
    }

    pub fn leading_coeff(&self, ord: MonomialOrder) -> C {
        self.leading(ord).map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    /// Scaled so the leading coefficient under `ord` is one.
    pub fn monic(&self, ord: MonomialOrder) -> Self {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Drops every term of total degree above `n`.
    pub fn truncate(&self, n: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| mono_degree(m) <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Printed with terms in the given order (descending unless `ascending`).
    pub fn format_with(&self, ord: MonomialOrder, ascending: bool) -> String {
        let mut terms = self.sorted_terms(ord);
        if ascending {
            terms.reverse();
        }
        let mut s = String::new();
        for (m, c) in terms {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars.name(i).to_string()
                    } else {
                        format!("{}^{e}", self.vars.name(i))
                    }
                })
                .collect();
            format_term(&mut s, &c.to_string(), c.is_compound(), &mono.join("*"));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Parses a polynomial in the shared grammar. Names not in `vars` are
    /// looked up with `constant`.
    pub fn parse_with(
        src: &str,
        vars: &Arc<VarSet>,
        constant: &dyn Fn(&str) -> Option<C>,
    ) -> Result<Self> {
        let e = expr::parse(src)?;
        let v = e.eval::<PolyValue<C>>(&|name| {
            if let Some(i) = vars.index(name) {
                Some(PolyValue::Poly(MultiPoly::var(vars, i)))
            } else {
                constant(name).map(PolyValue::Const)
            }
        })?;
        Ok(v.into_poly(vars))
    }

    pub fn parse(src: &str, vars: &Arc<VarSet>) -> Result<Self> {
        Self::parse_with(src, vars, &|_| None)
    }
}

impl<C: Field> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(MonomialOrder::DegRevLex, false))
    }
}

enum PolyValue<C: Field> {
    Const(C),
    Poly(MultiPoly<C>),
}

impl<C: Field> Clone for PolyValue<C> {
    fn clone(&self) -> Self {
        match self {
            PolyValue::Const(c) => PolyValue::Const(c.clone()),
            PolyValue::Poly(p) => PolyValue::Poly(p.clone()),
        }
    }
}

impl<C: Field> PolyValue<C> {
    fn into_poly(self, vars: &Arc<VarSet>) -> MultiPoly<C> {
        match self {
            PolyValue::Const(c) => MultiPoly::constant(vars, c),
            PolyValue::Poly(p) => p,
        }
    }

    fn binop(
        &self,
        o: &Self,
        fc: impl Fn(&C, &C) -> C,
        fp: impl Fn(&MultiPoly<C>, &MultiPoly<C>) -> MultiPoly<C>,
    ) -> Self {
        match (self, o) {
            (PolyValue::Const(a), PolyValue::Const(b)) => PolyValue::Const(fc(a, b)),
            (PolyValue::Poly(a), PolyValue::Poly(b)) => PolyValue::Poly(fp(a, b)),
            (PolyValue::Poly(a), PolyValue::Const(b)) => {
                PolyValue::Poly(fp(a, &MultiPoly::constant(a.vars(), b.clone())))
            }
            (PolyValue::Const(a), PolyValue::Poly(b)) => {
                PolyValue::Poly(fp(&MultiPoly::constant(b.vars(), a.clone()), b))
            }
        }
    }
}

impl<C: Field> ExprValue for PolyValue<C> {
    fn constant(g: &GaussianRational) -> Self {
        PolyValue::Const(C::from_gaussian(g))
    }
    fn e_add(&self, o: &Self) -> Self {
        self.binop(o, |a, b| a.add(b), |a, b| a.add(b))
    }
    fn e_sub(&self, o: &Self) -> Self {
        self.binop(o, |a, b| a.sub(b), |a, b| a.sub(b))
    }
    fn e_mul(&self, o: &Self) -> Self {
        self.binop(o, |a, b| a.mul(b), |a, b| a.mul(b))
    }
    fn e_neg(&self) -> Self {
        match self {
            PolyValue::Const(c) => PolyValue::Const(c.neg()),
            PolyValue::Poly(p) => PolyValue::Poly(p.neg()),
        }
    }
}

impl<T: Field> ExprValue for T {
    fn constant(g: &GaussianRational) -> Self {
        T::from_gaussian(g)
    }
    fn e_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn e_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn e_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn e_neg(&self) -> Self {
        self.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::varset::Block;
    use crate::scalar::Rational;

    type P = MultiPoly<Rational>;

    fn vs() -> Arc<VarSet> {
        VarSet::new([("t", Block::Aux), ("x1", Block::Base), ("x2", Block::Base)]).unwrap()
    }

    #[test]
    fn product_of_linear_factors() {
        let v = vs();
        let a = P::parse("t-x1", &v).unwrap();
        let b = P::parse("t-x2", &v).unwrap();
        assert_eq!(a.mul(&b), P::parse("t^2-(x1+x2)*t+x1*x2", &v).unwrap());
        let c = P::parse("(x1-x2)*(x1+x2)", &v).unwrap();
        assert_eq!(c.to_string(), "x1^2-x2^2");
        assert_eq!(a.add(&P::zero(&v)), a);
    }

    #[test]
    fn substitution() {
        let v = vs();
        let p = P::parse("2*x1", &v).unwrap();
        let img = P::parse("x1*x2", &v).unwrap();
        assert_eq!(p.substitute(&[(1, img)], &v).to_string(), "2*x1*x2");
        let q = P::parse("x1^2+x2^2+1", &v).unwrap();
        let z = P::zero(&v);
        assert!(q.substitute(&[(1, z.clone()), (2, z)], &v).is_one());
        assert_eq!(q.substitute(&[], &v), q);
    }

    #[test]
    fn display_roundtrip() {
        let v = vs();
        let p = P::parse("-x1^2*t + 3/2*x2 - 1", &v).unwrap();
        let s = p.to_string();
        assert_eq!(P::parse(&s, &v).unwrap(), p);
        assert_eq!(s, "-t*x1^2+3/2*x2-1");
    }

    #[test]
    fn gaussian_coefficients_print_and_parse() {
        let v = vs();
        type G = MultiPoly<GaussianRational>;
        let p = G::parse("(1+i)*x1 - i*x2 + 1/2*i", &v).unwrap();
        let s = p.to_string();
        assert_eq!(G::parse(&s, &v).unwrap(), p);
    }
}
