//! Multivariate gcd by recursive primitive remainder sequences.

use super::multipoly::MultiPoly;
use crate::groebner::order::MonomialOrder;
use crate::scalar::Field;

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn div_exact<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> Option<MultiPoly<C>> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let ord = MonomialOrder::Lex;
    let (lb, cb) = b.leading(ord).map(|(m, c)| (m.clone(), c.clone()))?;
    let cb_inv = cb.inv().expect("nonzero");
    let mut r = a.clone();
    let mut q = MultiPoly::zero(a.vars());
    while let Some((lr, cr)) = r.leading(ord).map(|(m, c)| (m.clone(), c.clone())) {
        if !super::multipoly::mono_divides(&lb, &lr) {
            return None;
        }
        let m = super::multipoly::mono_div(&lr, &lb);
        let c = cr.mul(&cb_inv);
        q.add_term(m.clone(), c.clone());
        r = r.sub(&b.mul_monomial(&m, &c));
    }
    Some(q)
}

/// Normalised so the lex-leading coefficient is one.
pub fn normalize<C: Field>(a: &MultiPoly<C>) -> MultiPoly<C> {
    a.monic(MonomialOrder::Lex)
}

fn main_var<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> Option<usize> {
    (0..a.nvars()).rev().find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
}

/// Content of `a` with respect to variable `v`.
pub fn content<C: Field>(a: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let mut g = MultiPoly::zero(a.vars());
    for c in a.to_univariate(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

/// Primitive part with respect to variable `v`.
pub fn primitive_part<C: Field>(a: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    if a.is_zero() {
        return a.clone();
    }
    let c = content(a, v);
    normalize(&div_exact(a, &c).expect("content divides"))
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
pub fn pseudo_rem<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let db = b.degree_in(v);
    let bu = b.to_univariate(v);
    let lcb = bu.last().expect("nonzero").clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let ru = r.to_univariate(v);
        let dr = ru.len() - 1;
        let lcr = ru.last().expect("nonzero").clone();
        let mut shift = vec![0; a.nvars()];
        shift[v] = (dr as u32) - db;
        let t = b.mul(&lcr).mul_monomial(&shift, &C::one());
        r = r.mul(&lcb).sub(&t);
    }
    r
}

const COPRIME_PROBES: i64 = 6;

fn univariate_degree_of_gcd<C: Field>(a: &[C], b: &[C]) -> usize {
    fn trim<C: Field>(p: &mut Vec<C>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let inv = r1.last().expect("nonzero").inv().expect("nonzero");
        while r0.len() >= r1.len() {
            let c = r0.last().expect("nonzero").mul(&inv);
            let shift = r0.len() - r1.len();
            for (i, x) in r1.iter().enumerate() {
                r0[i + shift] = r0[i + shift].sub(&c.mul(x));
            }
            trim(&mut r0);
            if r0.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    r0.len().saturating_sub(1)
}

/// True when some specialization of the variables other than `v`, keeping
/// the leading coefficient of `a` nonzero, leaves coprime images.
fn coprime_image<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>, v: usize) -> bool {
    let others: Vec<usize> = (0..a.nvars()).filter(|&i| i != v && (a.degree_in(i) > 0 || b.degree_in(i) > 0)).collect();
    if others.is_empty() {
        return false;
    }
    (0..COPRIME_PROBES).any(|attempt| {
        let point: Vec<(usize, C)> =
            others.iter().enumerate().map(|(j, &i)| (i, C::from_i64((3 * j as i64 + 5 * attempt) % 11 - 4))).collect();
        let ua: Vec<C> = a.to_univariate(v).iter().map(|c| c.eval_vars(&point).constant_term()).collect();
        if ua.last().is_none_or(|c| c.is_zero()) {
            return false;
        }
        let ub: Vec<C> = b.to_univariate(v).iter().map(|c| c.eval_vars(&point).constant_term()).collect();
        univariate_degree_of_gcd(&ua, &ub) == 0
    })
}

/// Greatest common divisor, lex-normalised (zero only when both are zero).
pub fn gcd<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let v = match main_var(a, b) {
        None => return MultiPoly::one(a.vars()),
        Some(v) => v,
    };
    if a.degree_in(v) == 0 {
        return gcd(a, &content(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let g_cont = gcd(&ca, &cb);
    if coprime_image(a, b, v) {
        return normalize(&g_cont);
    }
    let mut r0 = normalize(&div_exact(a, &ca).expect("content divides"));
    let mut r1 = normalize(&div_exact(b, &cb).expect("content divides"));
    if r0.degree_in(v) < r1.degree_in(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return normalize(&g_cont);
        }
        r0 = r1;
        r1 = primitive_part(&r, v);
    }
    normalize(&g_cont.mul(&primitive_part(&r1, v)))
}

pub fn lcm<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.vars());
    }
    let g = gcd(a, b);
    normalize(&div_exact(&a.mul(b), &g).expect("gcd divides"))
}

/// Squarefree part, one variable at a time: with `v` of least positive
/// degree, `sqf(a) = sqf(cont_v a) · pp/gcd(pp, ∂pp/∂v)`.
pub fn squarefree_part<C: Field>(a: &MultiPoly<C>) -> MultiPoly<C> {
    let p = normalize(a);
    let Some(v) = (0..p.nvars()).filter(|&i| p.degree_in(i) > 0).min_by_key(|&i| p.degree_in(i)) else {
        return p;
    };
    let cont = content(&p, v);
    let pp = div_exact(&p, &cont).expect("content divides");
    let g = gcd(&pp, &pp.derivative(v));
    let part = div_exact(&pp, &g).expect("gcd divides");
    normalize(&squarefree_part(&cont).mul(&part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::varset::{Block, VarSet};
    use crate::scalar::Rational;

    #[test]
    fn gcd_of_products() {
        let v = VarSet::of_block(&["x", "y", "z"], Block::Base).unwrap();
        let p = |s: &str| MultiPoly::<Rational>::parse(s, &v).unwrap();
        let g = p("x*y - z^2 + 1");
        let a = g.mul(&p("x + y + 3"));
        let b = g.mul(&p("x - z"));
        assert_eq!(gcd(&a, &b), normalize(&g));
        assert!(gcd(&p("x+1"), &p("y+1")).is_one());
        assert_eq!(div_exact(&a, &g).unwrap(), p("x+y+3"));
        assert!(div_exact(&p("x+1"), &p("x-1")).is_none());
        assert_eq!(squarefree_part(&p("(x+y)^3*(z-1)^2")), normalize(&p("(x+y)*(z-1)")));
    }

    #[test]
    fn coprime_images_and_unlucky_points() {
        let v = VarSet::of_block(&["x", "y", "z"], Block::Base).unwrap();
        let p = |s: &str| MultiPoly::<Rational>::parse(s, &v).unwrap();
        // both vanish at z = 0 when x = -4, the first probe
        let a = p("z^2 + x*z + 4*z");
        let b = p("z + y*z + x + 4");
        assert!(gcd(&a, &b).is_one());
        // a shared factor survives every probe
        let g = p("z - x*y + 2");
        assert_eq!(gcd(&a.mul(&g), &b.mul(&g)), normalize(&g));
    }

    #[test]
    fn squarefree_part_keeps_factors_free_of_the_chosen_variable() {
        let v = VarSet::of_block(&["x", "y", "z"], Block::Base).unwrap();
        let p = |s: &str| MultiPoly::<Rational>::parse(s, &v).unwrap();
        let f = p("(x^2+y)^2*(z-x)*(y+1)^3");
        assert_eq!(squarefree_part(&f), normalize(&p("(x^2+y)*(z-x)*(y+1)")));
        assert_eq!(squarefree_part(&p("3*(x-1)^2")), p("x-1"));
    }
}
