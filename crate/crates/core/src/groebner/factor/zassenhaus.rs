//! Univariate factorization over ℤ: modular factorization, quadratic Hensel
//! lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp;
use crate::poly::upoly;
use crate::scalar::Rational;

pub type ZPoly = Vec<BigInt>;

const PRIMES_TRIED: usize = 6;

fn trim(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn smod(a: &BigInt, m: &BigInt) -> BigInt {
    let mut r = a.mod_floor(m);
    if &r * 2 > *m {
        r -= m;
    }
    r
}

fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut r: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut r);
    r
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut r: ZPoly = (0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect();
    trim(&mut r);
    r
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut r: ZPoly = (0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect();
    trim(&mut r);
    r
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = reduce(a, m);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
            }
        }
        q[k] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn to_modp(a: &[BigInt], p: u64) -> modp::PolyP {
    let pb = BigInt::from(p);
    let mut r: modp::PolyP = a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("small")).collect();
    modp::trim(&mut r);
    r
}

fn from_modp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Primitive integer multiple of a rational polynomial with positive
/// leading coefficient.
pub fn primitive_integer(p: &[Rational]) -> ZPoly {
    let l = crate::scalar::denominator_lcm(p.iter());
    let mut z: ZPoly = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    trim(&mut z);
    let g = z.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in &mut z {
            *c = &*c / &g;
        }
    }
    if z.last().is_some_and(|c| c.is_negative()) {
        for c in &mut z {
            *c = -&*c;
        }
    }
    z
}

fn to_rational(a: &[BigInt]) -> Vec<Rational> {
    a.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

fn primitive(a: &[BigInt]) -> ZPoly {
    primitive_integer(&to_rational(a))
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

/// Lifts `f ≡ g·h (mod p)` with `h` monic to a factorization modulo `m ≥ target`.
fn hensel_pair(f: &[BigInt], g: ZPoly, h: ZPoly, p: u64, target: &BigInt) -> (ZPoly, ZPoly, BigInt) {
    let (_, s, t) = modp::xgcd(&to_modp(&g, p), &to_modp(&h, p), p);
    let mut s = from_modp(&s);
    let mut t = from_modp(&t);
    let mut g = g;
    let mut h = h;
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = &m * &m;
        let e = reduce(&zsub(f, &zmul(&g, &h)), &m2);
        let (q, r) = zdivrem_monic(&zmul(&s, &e), &h, &m2);
        let g_new = reduce(&zadd(&zadd(&g, &zmul(&t, &e)), &zmul(&q, &g)), &m2);
        let h_new = reduce(&zadd(&h, &r), &m2);
        let b = reduce(&zsub(&zadd(&zmul(&s, &g_new), &zmul(&t, &h_new)), &[BigInt::one()]), &m2);
        let (c, d) = zdivrem_monic(&zmul(&s, &b), &h_new, &m2);
        s = reduce(&zsub(&s, &d), &m2);
        t = reduce(&zsub(&zsub(&t, &zmul(&t, &b)), &zmul(&c, &g_new)), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (g, h, m)
}

fn mignotte_target(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let maxc = f.iter().map(|c| c.abs()).max().expect("nonempty");
    let lc = f.last().expect("nonempty").abs();
    (BigInt::one() << (n + 1)) * BigInt::from(n + 1) * maxc * lc * 2
}

pub(super) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
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

fn exact_quotient(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = upoly::divrem(&to_rational(f), &to_rational(g));
    if !r.is_empty() {
        return None;
    }
    if q.iter().all(|c| c.is_integer()) {
        Some(q.iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

/// Irreducible factors of a squarefree primitive polynomial with positive
/// leading coefficient, sorted.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().expect("nonempty").clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<modp::PolyP>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_modp(f, p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        let fs = modp::factor_squarefree(&modp::monic(&fp, p), p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= PRIMES_TRIED || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("a good prime exists for squarefree input");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    let target = mignotte_target(f);
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut rest = f.to_vec();
    let mut modulus = BigInt::one();
    for i in 0..modular.len() - 1 {
        let h0 = from_modp(&modular[i]);
        let g0 = {
            let prod = modular[i + 1..].iter().fold(vec![1u64], |acc, q| modp::mul(&acc, q, p));
            let lcp = lc.mod_floor(&BigInt::from(p)).to_u64().expect("small");
            from_modp(&modp::scale(&prod, lcp, p))
        };
        let (g, h, m) = hensel_pair(&rest, g0, h0, p, &target);
        lifted.push(h);
        rest = g;
        modulus = m;
    }
    // the last factor is the monic normalization of what remains
    let lc_inv = lc.modinv(&modulus).expect("lc coprime to p");
    lifted.push(reduce(&rest.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &modulus));

    let mut f = f.to_vec();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = false;
        for combo in combinations(remaining.len(), size) {
            let lcf = f.last().expect("nonempty").clone();
            let mut cand = vec![lcf];
            for &k in &combo {
                cand = reduce(&zmul(&cand, &lifted[remaining[k]]), &modulus);
            }
            let cand: ZPoly = {
                let mut c: ZPoly = cand.iter().map(|c| smod(c, &modulus)).collect();
                trim(&mut c);
                primitive(&c)
            };
            if let Some(q) = exact_quotient(&f, &cand) {
                found.push(cand);
                f = primitive(&q);
                let chosen: Vec<usize> = combo.iter().map(|&k| remaining[k]).collect();
                remaining.retain(|r| !chosen.contains(r));
                hit = true;
                break;
            }
        }
        if !hit {
            size += 1;
        }
    }
    found.push(f);
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn factors_products() {
        let a = z(&[-2, 0, 1]);
        let b = z(&[1, 1, 1]);
        let c = z(&[3, 2]);
        let f = zmul(&zmul(&a, &b), &c);
        let fs = factor_squarefree(&f);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(z(&[1]), |acc, g| zmul(&acc, g));
        assert_eq!(prod, f);
    }

    #[test]
    fn swinnerton_dyer_like_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime
        let f = z(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f).len(), 1);
        assert_eq!(factor_squarefree(&z(&[-1, 2, 1])).len(), 1);
    }
}
