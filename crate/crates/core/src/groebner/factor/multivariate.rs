//! Multivariate factorization over ℚ: monic transform, evaluation at small
//! integers, Hensel lifting in the shifted variables and recombination by
//! trial division.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::zassenhaus::{self, combinations};
use crate::error::{Error, Result};
use crate::poly::gcd::{content, div_exact, normalize};
use crate::poly::multipoly::Monomial;
use crate::poly::{upoly, MultiPoly};
use crate::scalar::{Field, Rational};

const EVAL_ATTEMPTS: usize = 64;

type SPoly = BTreeMap<Monomial, Vec<Rational>>;

fn s_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn s_add_to(acc: &mut SPoly, m: Monomial, p: &[Rational]) {
    let e = acc.entry(m.clone()).or_default();
    *e = upoly::add(e, p);
    if e.is_empty() {
        acc.remove(&m);
    }
}

/// Product truncated at total s-degree `bound`.
fn s_mul(a: &SPoly, b: &SPoly, bound: u32) -> SPoly {
    let mut out = SPoly::new();
    for (ma, pa) in a {
        let da = s_degree(ma);
        for (mb, pb) in b {
            if da + s_degree(mb) > bound {
                continue;
            }
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            s_add_to(&mut out, m, &upoly::mul(pa, pb));
        }
    }
    out
}

/// Splits `p` into (z-coefficients) indexed by exponents of the other
/// variables `others`.
fn to_spoly(p: &MultiPoly<Rational>, z: usize, others: &[usize]) -> SPoly {
    let mut out = SPoly::new();
    for (m, c) in p.terms() {
        let key: Monomial = others.iter().map(|&i| m[i]).collect();
        let mut u = vec![Rational::from_integer(0.into()); m[z] as usize + 1];
        u[m[z] as usize] = c.clone();
        s_add_to(&mut out, key, &u);
    }
    out
}

fn from_spoly(s: &SPoly, like: &MultiPoly<Rational>, z: usize, others: &[usize]) -> MultiPoly<Rational> {
    let n = like.nvars();
    let mut out = MultiPoly::zero(like.vars());
    for (key, u) in s {
        for (k, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut m = vec![0u32; n];
            m[z] = k as u32;
            for (j, &i) in others.iter().enumerate() {
                m[i] = key[j];
            }
            out.add_term(m, c.clone());
        }
    }
    out
}

fn shift(p: &MultiPoly<Rational>, others: &[usize], a: &[i64], sign: i64) -> MultiPoly<Rational> {
    let vars = p.vars().clone();
    let bindings: Vec<(usize, MultiPoly<Rational>)> = others
        .iter()
        .zip(a)
        .map(|(&i, &ai)| {
            let v = MultiPoly::var(&vars, i);
            (i, v.add(&MultiPoly::constant(&vars, Rational::from_integer((sign * ai).into()))))
        })
        .collect();
    p.substitute(&bindings, &vars)
}

/// Univariate image of `b | a` at a fixed point of the other variables;
/// false means `b` cannot divide `a`.
fn divides_at_probe(a: &MultiPoly<Rational>, b: &MultiPoly<Rational>, z: usize, others: &[usize]) -> bool {
    let point: Vec<(usize, Rational)> =
        others.iter().enumerate().map(|(j, &i)| (i, Rational::from_integer((2 * j as i64 + 3).into()))).collect();
    let image = |p: &MultiPoly<Rational>| -> Vec<Rational> {
        p.to_univariate(z).iter().map(|c| c.eval_vars(&point).constant_term()).collect()
    };
    let (ua, ub) = (image(a), image(b));
    if upoly::degree(&ub).is_none() {
        return true;
    }
    upoly::rem(&ua, &ub).is_empty()
}

/// Irreducible factors of a squarefree polynomial in at least one variable.
pub fn factor_squarefree(f: &MultiPoly<Rational>) -> Result<Vec<MultiPoly<Rational>>> {
    let support = f.support();
    if support.is_empty() {
        return Ok(Vec::new());
    }
    if support.len() == 1 {
        let z = support[0];
        let u: Vec<Rational> = f.to_univariate(z).iter().map(|c| c.constant_term()).collect();
        let zs = zassenhaus::factor_squarefree(&zassenhaus::primitive_integer(&u));
        return Ok(zs
            .into_iter()
            .map(|g| {
                let coeffs: Vec<MultiPoly<Rational>> = g
                    .into_iter()
                    .map(|c| MultiPoly::constant(f.vars(), Rational::from_integer(c)))
                    .collect();
                normalize(&MultiPoly::from_univariate(f.vars(), z, &coeffs))
            })
            .collect());
    }
    // main variable: smallest positive degree, ties to the lowest index
    let z = *support.iter().min_by_key(|&&i| (f.degree_in(i), i)).expect("nonempty");
    let cont = content(f, z);
    let mut out = Vec::new();
    let pp = if cont.is_constant() {
        f.clone()
    } else {
        out.extend(factor_squarefree(&cont)?);
        div_exact(f, &cont).expect("content divides")
    };
    out.extend(factor_primitive(&pp, z)?);
    Ok(out)
}

fn factor_primitive(f: &MultiPoly<Rational>, z: usize) -> Result<Vec<MultiPoly<Rational>>> {
    let n = f.degree_in(z) as usize;
    if n == 1 {
        return Ok(vec![normalize(f)]);
    }
    let vars = f.vars().clone();
    let others: Vec<usize> = f.support().into_iter().filter(|&i| i != z).collect();
    let coeffs = f.to_univariate(z);
    let lc = coeffs[n].clone();
    // f̃ = lc^(n−1)·f(z/lc)
    let mut mono_coeffs = Vec::with_capacity(n + 1);
    for (k, c) in coeffs.iter().enumerate() {
        if k == n {
            mono_coeffs.push(MultiPoly::one(&vars));
        } else {
            mono_coeffs.push(c.mul(&lc.pow((n - 1 - k) as u32)));
        }
    }
    let ft = MultiPoly::from_univariate(&vars, z, &mono_coeffs);
    let bound: u32 = ft
        .terms()
        .map(|(m, _)| others.iter().map(|&i| m[i]).sum::<u32>())
        .max()
        .unwrap_or(0);

    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    let mut point: Option<(Vec<i64>, Vec<Vec<Rational>>)> = None;
    for attempt in 0..EVAL_ATTEMPTS {
        let a: Vec<i64> = if attempt == 0 {
            vec![0; others.len()]
        } else {
            let r = 1 + (attempt as i64) / 4;
            others.iter().map(|_| rng.gen_range(-r..=r)).collect()
        };
        let vals: Vec<(usize, Rational)> =
            others.iter().zip(&a).map(|(&i, &ai)| (i, Rational::from_integer(ai.into()))).collect();
        let ev = ft.eval_vars(&vals);
        let u: Vec<Rational> = ev.to_univariate(z).iter().map(|c| c.constant_term()).collect();
        if upoly::gcd(&u, &upoly::derivative(&u)).len() != 1 {
            continue;
        }
        let zs = zassenhaus::factor_squarefree(&zassenhaus::primitive_integer(&u));
        let monic: Vec<Vec<Rational>> = zs
            .into_iter()
            .map(|g| upoly::monic(&g.into_iter().map(Rational::from_integer).collect::<Vec<_>>()))
            .collect();
        point = Some((a, monic));
        break;
    }
    let (a, uni) = point.ok_or_else(|| {
        Error::UnsupportedSize(format!("no squarefree evaluation point for {f}"))
    })?;
    if uni.len() == 1 {
        return Ok(vec![normalize(f)]);
    }

    let shifted = shift(&ft, &others, &a, 1);
    let target = to_spoly(&shifted, z, &others);
    let zero_key: Monomial = vec![0; others.len()];
    let r = uni.len();
    // b_i = (∏_{j≠i} g_j)^{-1} mod g_i
    let inverses: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let prod = (0..r)
                .filter(|&j| j != i)
                .fold(vec![Rational::from_integer(BigInt::from(1))], |acc, j| upoly::mul(&acc, &uni[j]));
            let (_, s, _) = upoly::xgcd(&prod, &uni[i]);
            s
        })
        .collect();
    let mut factors: Vec<SPoly> = uni
        .iter()
        .map(|g| {
            let mut s = SPoly::new();
            s.insert(zero_key.clone(), g.clone());
            s
        })
        .collect();
    for k in 1..=bound {
        let prod = factors.iter().skip(1).fold(factors[0].clone(), |acc, g| s_mul(&acc, g, k));
        let mut err = SPoly::new();
        for (m, p) in &target {
            if s_degree(m) == k {
                s_add_to(&mut err, m.clone(), p);
            }
        }
        for (m, p) in &prod {
            if s_degree(m) == k {
                s_add_to(&mut err, m.clone(), &upoly::neg(p));
            }
        }
        for (m, e) in err {
            for i in 0..r {
                let d = upoly::rem(&upoly::mul(&e, &inverses[i]), &uni[i]);
                if !d.is_empty() {
                    s_add_to(&mut factors[i], m.clone(), &d);
                }
            }
        }
    }

    // recombination
    let mut remaining: Vec<usize> = (0..r).collect();
    let mut rest = ft.clone();
    let mut found: Vec<MultiPoly<Rational>> = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = false;
        for combo in combinations(remaining.len(), size) {
            let prod = combo
                .iter()
                .skip(1)
                .fold(factors[remaining[combo[0]]].clone(), |acc, &k| s_mul(&acc, &factors[remaining[k]], bound));
            let cand = shift(&from_spoly(&prod, &ft, z, &others), &others, &a, -1);
            if !divides_at_probe(&rest, &cand, z, &others) {
                continue;
            }
            if let Some(q) = div_exact(&rest, &cand) {
                found.push(cand);
                rest = q;
                let chosen: Vec<usize> = combo.iter().map(|&k| remaining[k]).collect();
                remaining.retain(|x| !chosen.contains(x));
                hit = true;
                break;
            }
        }
        if !hit {
            size += 1;
        }
    }
    found.push(rest);

    // undo the monic transform: g(z, u) = pp_z(g̃(lc·z, u))
    let lcz = MultiPoly::var(&vars, z).mul(&lc);
    Ok(found
        .into_iter()
        .map(|g| {
            let back = g.substitute(&[(z, lcz.clone())], &vars);
            let c = content(&back, z);
            normalize(&div_exact(&back, &c).expect("content divides"))
        })
        .collect())
}
