//! Dense univariate polynomials over a [`Field`], stored low degree first.

use num_traits::Signed;

use crate::scalar::{Field, Rational};

pub type UPoly<C> = Vec<C>;

pub fn trim<C: Field>(p: &mut UPoly<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree<C: Field>(p: &[C]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add<C: Field>(a: &[C], b: &[C]) -> UPoly<C> {
    let n = a.len().max(b.len());
    let mut out: Vec<C> = (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => C::zero(),
        })
        .collect();
    trim(&mut out);
    out
}

pub fn neg<C: Field>(a: &[C]) -> UPoly<C> {
    a.iter().map(|c| c.neg()).collect()
}

pub fn sub<C: Field>(a: &[C], b: &[C]) -> UPoly<C> {
    add(a, &neg(b))
}

pub fn scale<C: Field>(a: &[C], s: &C) -> UPoly<C> {
    let mut out: Vec<C> = a.iter().map(|c| c.mul(s)).collect();
    trim(&mut out);
    out
}

pub fn mul<C: Field>(a: &[C], b: &[C]) -> UPoly<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem<C: Field>(a: &[C], b: &[C]) -> (UPoly<C>, UPoly<C>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut r: Vec<C> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![C::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].mul(&lead_inv);
        for k in 0..=db {
            r[dr - db + k] = r[dr - db + k].sub(&c.mul(&b[k]));
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem<C: Field>(a: &[C], b: &[C]) -> UPoly<C> {
    divrem(a, b).1
}

pub fn monic<C: Field>(a: &[C]) -> UPoly<C> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(&a[..=d], &a[d].inv().expect("nonzero")),
    }
}

/// Monic greatest common divisor.
pub fn gcd<C: Field>(a: &[C], b: &[C]) -> UPoly<C> {
    let mut x: Vec<C> = a.to_vec();
    let mut y: Vec<C> = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn xgcd<C: Field>(a: &[C], b: &[C]) -> (UPoly<C>, UPoly<C>, UPoly<C>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![C::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![C::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match degree(&r0) {
        None => (Vec::new(), s0, t0),
        Some(d) => {
            let inv = r0[d].inv().expect("nonzero");
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative<C: Field>(a: &[C]) -> UPoly<C> {
    let mut out: Vec<C> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.mul(&C::from_i64(k as i64)))
        .collect();
    trim(&mut out);
    out
}

pub fn eval<C: Field>(a: &[C], x: &C) -> C {
    a.iter().rev().fold(C::zero(), |acc, c| acc.mul(x).add(c))
}

/// Sturm sequence of a squarefree rational polynomial.
fn sturm_chain(p: &[Rational]) -> Vec<UPoly<Rational>> {
    let mut chain = vec![p.to_vec(), derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            return chain;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            return chain;
        }
        chain.push(neg(&r));
    }
}

fn sign_changes(chain: &[UPoly<Rational>], x: &Rational) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|q| {
            let v = eval(q, x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn count_real_roots(p: &[Rational], lo: &Rational, hi: &Rational) -> usize {
    let sq = squarefree_part(p);
    let chain = sturm_chain(&sq);
    sign_changes(&chain, lo).saturating_sub(sign_changes(&chain, hi))
}

pub fn squarefree_part<C: Field>(p: &[C]) -> UPoly<C> {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        return monic(p);
    }
    monic(&divrem(p, &g).0)
}

/// Cauchy bound: every root has absolute value below the returned value.
pub fn root_bound(p: &[Rational]) -> Rational {
    let d = degree(p).expect("nonzero polynomial");
    let lead = p[d].abs();
    let m = p[..d]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::from_integer(1.into())
}

/// Isolating intervals `(lo, hi]` for the distinct real roots, ascending.
/// Endpoints are never roots.
pub fn isolate_real_roots(p: &[Rational]) -> Vec<(Rational, Rational)> {
    let sq = squarefree_part(p);
    if degree(&sq).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(&sq);
    let b = root_bound(&sq);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = Rational::from_integer(2.into());
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && !eval(&sq, &hi).is_zero() {
            out.push((lo, hi));
            continue;
        }
        let mut mid = (&lo + &hi) / &two;
        // keep endpoints off the roots
        while eval(&sq, &mid).is_zero() {
            mid = (&mid + &hi) / &two;
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&k| rat_int(k)).collect()
    }

    #[test]
    fn gcd_and_xgcd() {
        let a = q(&[-1, 0, 1]); // x^2-1
        let b = q(&[1, 1]); // x+1
        assert_eq!(gcd(&a, &b), q(&[1, 1]));
        let (g, s, t) = xgcd(&q(&[1, 0, 1]), &q(&[0, 1]));
        assert_eq!(g, q(&[1]));
        assert_eq!(add(&mul(&s, &q(&[1, 0, 1])), &mul(&t, &q(&[0, 1]))), q(&[1]));
    }

    #[test]
    fn isolates_roots_of_w_polynomial() {
        // w^2 + 2w - 1 has roots -1 ± sqrt(2)
        let roots = isolate_real_roots(&q(&[-1, 2, 1]));
        assert_eq!(roots.len(), 2);
        let (lo, hi) = &roots[1];
        assert!(*lo < rat(42, 100) && *hi > rat(41, 100));
        assert_eq!(count_real_roots(&q(&[-1, 2, 1]), lo, hi), 1);
    }
}
