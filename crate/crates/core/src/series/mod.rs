//! Multivariate power series truncated by total degree, with unit
//! inversion, square roots of positive units and Newton–Hensel lifting.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Matrix, MultiPoly, VarSet};
use crate::scalar::sqrt::sqrt_positive;
use crate::scalar::{AlgebraicScalar, Field, Sign, Tower};

pub const DEFAULT_ORDER: u32 = 8;

type Scalar = AlgebraicScalar;

/// A power series known modulo `𝔪^{order+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    poly: MultiPoly<Scalar>,
    order: u32,
}

impl TruncatedSeries {
    pub fn new(poly: MultiPoly<Scalar>, order: u32) -> Self {
        TruncatedSeries { poly: poly.truncate(order), order }
    }

    pub fn zero(vars: &Arc<VarSet>, order: u32) -> Self {
        TruncatedSeries { poly: MultiPoly::zero(vars), order }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Scalar, order: u32) -> Self {
        TruncatedSeries { poly: MultiPoly::constant(vars, c), order }
    }

    pub fn var(vars: &Arc<VarSet>, i: usize, order: u32) -> Self {
        Self::new(MultiPoly::var(vars, i), order)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.poly.vars()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn poly(&self) -> &MultiPoly<Scalar> {
        &self.poly
    }

    pub fn constant_term(&self) -> Scalar {
        self.poly.constant_term()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Truncation to a lower order.
    pub fn with_order(&self, order: u32) -> Self {
        Self::new(self.poly.clone(), order.min(self.order))
    }

    /// The same terms regarded at a higher order (only valid for exact
    /// polynomials).
    pub fn extend_order(&self, order: u32) -> Self {
        TruncatedSeries { poly: self.poly.clone(), order }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        Self::new(self.poly.add(&o.poly), n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        Self::new(self.poly.sub(&o.poly), n)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { poly: self.poly.neg(), order: self.order }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        let a = self.poly.truncate(n);
        let b = o.poly.truncate(n);
        let mut out = MultiPoly::zero(self.vars());
        for (m1, c1) in a.terms() {
            let d1: u32 = m1.iter().sum();
            for (m2, c2) in b.terms() {
                if d1 + m2.iter().sum::<u32>() > n {
                    continue;
                }
                let m: Vec<u32> = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
                out.add_term(m, c1.mul(c2));
            }
        }
        TruncatedSeries { poly: out, order: n }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TruncatedSeries { poly: self.poly.scale(c), order: self.order }
    }

    pub fn conj(&self) -> Self {
        TruncatedSeries { poly: self.poly.conj(), order: self.order }
    }

    pub fn is_real(&self) -> bool {
        self.poly.conj() == self.poly
    }

    /// `f⁻¹` by Newton iteration `g ← g·(2 − f·g)`, doubling precision.
    pub fn invert_unit(&self) -> Result<Self> {
        let c = self.constant_term();
        let inv0 = c.inv().ok_or(Error::NonUnit)?;
        let vars = self.vars().clone();
        let mut g = Self::constant(&vars, inv0, 0);
        let mut prec = 0;
        let two = Self::constant(&vars, Scalar::from_i64(2), self.order);
        while prec < self.order {
            prec = (2 * prec + 1).min(self.order);
            let f = self.with_order(prec);
            let g_ext = g.extend_order(prec);
            g = g_ext.mul(&two.with_order(prec).sub(&f.mul(&g_ext)));
        }
        Ok(g.extend_order(self.order).with_order(self.order))
    }

    /// The square root with positive constant term of a real unit with
    /// positive constant term, adjoining a square root to `tower` when the
    /// constant term is not a square there.
    pub fn sqrt_unit(&self, tower: &Tower) -> Result<(Self, Tower)> {
        if !self.is_real() {
            return Err(Error::NotReal(format!("series {self}")));
        }
        let c = self.constant_term();
        if c.sign_of_real()? != Sign::Positive {
            return Err(Error::NotReal(format!("square root of series with constant term {c}")));
        }
        let (s0, tower) = sqrt_positive(&c, tower)?;
        let vars = self.vars().clone();
        let half = Scalar::rational(crate::scalar::rat(1, 2));
        let mut g = Self::constant(&vars, s0, 0);
        let mut prec = 0;
        while prec < self.order {
            prec = (2 * prec + 1).min(self.order);
            let f = self.with_order(prec);
            let g_ext = g.extend_order(prec);
            g = g_ext.add(&f.mul(&g_ext.invert_unit()?)).scale(&half);
        }
        Ok((g.extend_order(self.order).with_order(self.order), tower))
    }

    /// Terms ordered by total degree, then by exponent vector descending.
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, Scalar)> {
        let mut t: Vec<(Vec<u32>, Scalar)> = self.poly.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        t.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| b.0.cmp(&a.0))
        });
        t
    }

    /// Display limited to the first `max_terms` terms.
    pub fn abbreviated(&self, max_terms: usize) -> String {
        let terms = self.sorted_terms();
        let vars = self.vars();
        let shown: Vec<(Vec<u32>, Scalar)> = terms.iter().take(max_terms).cloned().collect();
        let p = MultiPoly::from_terms(vars, shown);
        let mut s = if p.is_zero() { "0".to_string() } else { format_ascending(&p, &terms[..terms.len().min(max_terms)]) };
        if terms.len() > max_terms {
            s.push_str(" + …");
        }
        s.push_str(&format!(" + O({})", self.order + 1));
        s
    }
}

fn format_ascending(p: &MultiPoly<Scalar>, order: &[(Vec<u32>, Scalar)]) -> String {
    let vars = p.vars();
    let mut out = String::new();
    for (k, (m, c)) in order.iter().enumerate() {
        let term = MultiPoly::monomial(vars, m.clone(), c.clone()).to_string();
        if k > 0 && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    out
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", format_ascending(&self.poly, &terms))
        }
    }
}

impl crate::poly::RingElem for TruncatedSeries {
    fn add(&self, o: &Self) -> Self {
        TruncatedSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TruncatedSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TruncatedSeries::mul(self, o)
    }
    fn neg(&self) -> Self {
        TruncatedSeries::neg(self)
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.vars(), self.order)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.vars(), Scalar::one(), self.order)
    }
    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
    }
    fn conj(&self) -> Self {
        TruncatedSeries::conj(self)
    }
}

/// Evaluates a polynomial in the ring variables at series values. `values`
/// holds one series per ring variable.
pub fn eval_at_series(p: &MultiPoly<Scalar>, values: &[TruncatedSeries], vars: &Arc<VarSet>, order: u32) -> TruncatedSeries {
    let mut powers: Vec<Vec<TruncatedSeries>> = values
        .iter()
        .map(|v| vec![TruncatedSeries::constant(vars, Scalar::one(), order), v.with_order(order)])
        .collect();
    let mut acc = TruncatedSeries::zero(vars, order);
    for (m, c) in p.terms() {
        let mut t = TruncatedSeries::constant(vars, c.clone(), order);
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().expect("nonempty").mul(&powers[i][1]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][e as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}

/// Solves `M·x = b` over the series ring; pivots are chosen among entries
/// with nonzero constant term.
pub fn solve_series(m: &Matrix<TruncatedSeries>, b: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    let n = m.rows();
    let mut a = m.to_rows();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !a[i][k].constant_term().is_zero())
            .ok_or(Error::RankDeficient { rank: k, needed: n })?;
        a.swap(k, p);
        rhs.swap(k, p);
        let inv = a[k][k].invert_unit()?;
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].mul(&inv);
            for j in k..n {
                let t = f.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&t);
            }
            let t = f.mul(&rhs[k]);
            rhs[i] = rhs[i].sub(&t);
        }
    }
    Ok((0..n).map(|i| rhs[i].mul(&a[i][i].invert_unit().expect("unit pivot"))).collect())
}

/// Rows forming the lexicographically first maximal-rank subset.
pub fn independent_rows(m: &Matrix<Scalar>) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = 0;
    for i in 0..m.rows() {
        let mut rows: Vec<Vec<Scalar>> = chosen.iter().map(|&r| m.row(r)).collect();
        rows.push(m.row(i));
        let r = crate::poly::matrix::rank_and_pivots(&Matrix::from_rows(rows).expect("rectangular")).0;
        if r > rank {
            chosen.push(i);
            rank = r;
        }
    }
    chosen
}

/// Series solution `s(x)` of `g(x, s(x)) = 0` with `s(0) = start`.
///
/// `unknowns` and `base` index the ring variables of the generators;
/// `series_vars` is the variable set of the base block.
pub fn newton_hensel_lift(
    gens: &[MultiPoly<Scalar>],
    unknowns: &[usize],
    base: &[usize],
    series_vars: &Arc<VarSet>,
    start: &[Scalar],
    order: u32,
) -> Result<Vec<TruncatedSeries>> {
    let k = unknowns.len();
    let nv = gens.first().map(|g| g.nvars()).unwrap_or(0);
    let mut point = vec![Scalar::zero(); nv];
    for (j, &u) in unknowns.iter().enumerate() {
        point[u] = start[j].clone();
    }
    for g in gens {
        if !g.eval(&point).is_zero() {
            return Err(Error::Inconsistent(format!("{g} does not vanish at the start point")));
        }
    }
    let jac = crate::poly::matrix::jacobian(gens, unknowns);
    let jac0 = jac.map(|e| e.eval(&point));
    let rows = independent_rows(&jac0);
    if rows.len() < k {
        return Err(Error::RankDeficient { rank: rows.len(), needed: k });
    }
    let sel: Vec<MultiPoly<Scalar>> = rows.iter().map(|&i| gens[i].clone()).collect();
    let sel_jac: Vec<Vec<MultiPoly<Scalar>>> = rows.iter().map(|&i| jac.row(i)).collect();

    let values_at = |s: &[TruncatedSeries], prec: u32| -> Vec<TruncatedSeries> {
        let mut vals: Vec<TruncatedSeries> = (0..nv).map(|_| TruncatedSeries::zero(series_vars, prec)).collect();
        for (j, &b) in base.iter().enumerate() {
            vals[b] = TruncatedSeries::var(series_vars, j, prec);
        }
        for (j, &u) in unknowns.iter().enumerate() {
            vals[u] = s[j].extend_order(prec).with_order(prec);
        }
        vals
    };

    let mut s: Vec<TruncatedSeries> =
        start.iter().map(|c| TruncatedSeries::constant(series_vars, c.clone(), 0)).collect();
    let mut prec = 0;
    while prec < order {
        prec = (2 * prec + 1).min(order);
        let vals = values_at(&s, prec);
        let f: Vec<TruncatedSeries> = sel.iter().map(|g| eval_at_series(g, &vals, series_vars, prec)).collect();
        let jm = Matrix::from_fn(k, k, |i, j| eval_at_series(&sel_jac[i][j], &vals, series_vars, prec));
        let delta = solve_series(&jm, &f)?;
        s = (0..k).map(|j| vals[unknowns[j]].sub(&delta[j])).collect();
    }
    let s: Vec<TruncatedSeries> = s.into_iter().map(|x| x.extend_order(order).with_order(order)).collect();
    let vals = values_at(&s, order);
    for g in gens {
        let r = eval_at_series(g, &vals, series_vars, order);
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!("residual {r} of {g} after lifting")));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Block;
    use crate::scalar::{rat, Rational};

    fn base() -> Arc<VarSet> {
        VarSet::of_block(&["x1", "x2"], Block::Base).unwrap()
    }

    fn series(s: &str, n: u32) -> TruncatedSeries {
        let v = base();
        let p = MultiPoly::<Rational>::parse(s, &v).unwrap();
        TruncatedSeries::new(p.map_coeffs(|c| Scalar::rational(c.clone())), n)
    }

    #[test]
    fn products_truncate() {
        assert_eq!(series("1+x1", 4).mul(&series("1-x1", 4)), series("1-x1^2", 4));
        assert!(series("x1", 1).mul(&series("x2", 1)).is_zero());
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(series("1-x1", 3).invert_unit().unwrap(), series("1+x1+x1^2+x1^3", 3));
        assert_eq!(series("4*(x1^2+1)", 2).invert_unit().unwrap(), series("1/4-1/4*x1^2", 2));
        assert_eq!(series("x1", 2).invert_unit(), Err(Error::NonUnit));
    }

    #[test]
    fn square_roots() {
        let t = Tower::base();
        assert_eq!(series("1+2*x1+x1^2", 5).sqrt_unit(&t).unwrap().0, series("1+x1", 5));
        let (g, _) = series("1+x1", 3).sqrt_unit(&t).unwrap();
        assert_eq!(g, series("1+1/2*x1-1/8*x1^2+1/16*x1^3", 3));
        let (g, t2) = series("2*x1^2+2", 2).sqrt_unit(&t).unwrap();
        assert_eq!(t2.depth(), 1);
        assert_eq!(g.mul(&g), series("2*x1^2+2", 2));
        assert_eq!(g.constant_term().sign_of_real().unwrap(), Sign::Positive);
        let half = Scalar::rational(rat(1, 2));
        assert_eq!(g.poly().coeff(&[2, 0]), g.constant_term().mul(&half));
    }

    #[test]
    fn lifting_a_square_root() {
        let v = VarSet::new([("y", Block::Root), ("x1", Block::Base)]).unwrap();
        let sv = VarSet::of_block(&["x1"], Block::Base).unwrap();
        let g = MultiPoly::<Rational>::parse("y^2-1-x1", &v).unwrap().map_coeffs(|c| Scalar::rational(c.clone()));
        let s = newton_hensel_lift(&[g], &[0], &[1], &sv, &[Scalar::one()], 2).unwrap();
        let expected = MultiPoly::<Rational>::parse("1+1/2*x1-1/8*x1^2", &sv).unwrap();
        assert_eq!(s[0], TruncatedSeries::new(expected.map_coeffs(|c| Scalar::rational(c.clone())), 2));

        let lin = MultiPoly::<Rational>::parse("y-x1", &v).unwrap().map_coeffs(|c| Scalar::rational(c.clone()));
        let s = newton_hensel_lift(&[lin], &[0], &[1], &sv, &[Scalar::zero()], 6).unwrap();
        assert_eq!(s[0], TruncatedSeries::var(&sv, 0, 6));
    }
}
