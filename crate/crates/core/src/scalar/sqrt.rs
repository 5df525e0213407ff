//! Exact square roots in towers, adjoining a new level when needed.

use num_bigint::BigInt;
use num_traits::Signed;

use super::field::{Field, Rational};
use super::tower::{AlgebraicScalar, Sign, Tower};
use crate::error::{Error, Result};

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// A square root of the real element `a` inside `t`, if one exists.
pub fn exact_sqrt(a: &AlgebraicScalar, t: &Tower) -> Result<Option<AlgebraicScalar>> {
    if a.is_zero() {
        return Ok(Some(AlgebraicScalar::zero()));
    }
    if t.depth() == 0 {
        let g = a.lift_to(t).ok_or(Error::IncompatibleTowers)?;
        return Ok(g
            .as_gaussian()
            .filter(|g| g.im.is_zero())
            .and_then(|g| rational_sqrt(&g.re))
            .map(AlgebraicScalar::rational));
    }
    if t.degree() != 2 {
        return Err(Error::Unsupported(format!(
            "square roots over a level of degree {}",
            t.degree()
        )));
    }
    let parent = t.parent();
    let m = t.min_poly();
    // α² + bα + e; β = α + b/2 satisfies β² = D
    let half_b = m[1].mul(&AlgebraicScalar::rational(Rational::new(1.into(), 2.into())));
    let disc = half_b.mul(&half_b).sub(&m[0]);
    let beta = t.generator().add(&half_b);
    let mut c = a.coeffs_in(t)?;
    c.resize(2, AlgebraicScalar::zero());
    let c1 = c[1].clone();
    let c0 = c[0].sub(&c1.mul(&half_b));
    let two = AlgebraicScalar::from_i64(2);
    let found = if c1.is_zero() {
        if let Some(u) = exact_sqrt(&c0, &parent)? {
            Some(u)
        } else {
            let q = c0.div(&disc).ok_or(Error::DivisionByZero)?;
            exact_sqrt(&q, &parent)?.map(|v| v.mul(&beta))
        }
    } else {
        let norm = c0.mul(&c0).sub(&disc.mul(&c1).mul(&c1));
        let mut out = None;
        if let Some(r) = exact_sqrt(&norm, &parent)? {
            for r in [r.clone(), r.neg()] {
                let u2 = c0.add(&r).div(&two).expect("nonzero");
                if u2.is_zero() {
                    continue;
                }
                if let Some(u) = exact_sqrt(&u2, &parent)? {
                    let v = c1.div(&two.mul(&u)).expect("nonzero");
                    out = Some(u.add(&v.mul(&beta)));
                    break;
                }
            }
        }
        out
    };
    if let Some(s) = &found {
        if s.mul(s) != *a {
            return Err(Error::Internal("square root check failed".into()));
        }
    }
    Ok(found)
}

fn scaled_isqrt(q: &Rational, round_up: bool) -> Rational {
    // √(n/d) = √(n·d)/d, evaluated with 20 extra binary digits
    let scale = BigInt::from(1u64 << 20);
    let m = q.numer() * q.denom() * &scale * &scale;
    let mut r = m.sqrt();
    if round_up {
        r += 1;
    }
    Rational::new(r, q.denom() * scale)
}

/// The positive square root of a positive real element, computed in `t` or
/// in a new level adjoined on top of `t`.
pub fn sqrt_positive(a: &AlgebraicScalar, t: &Tower) -> Result<(AlgebraicScalar, Tower)> {
    match a.sign_of_real()? {
        Sign::Positive => {}
        _ => return Err(Error::NotReal(format!("square root of non-positive {a}"))),
    }
    if let Some(s) = exact_sqrt(a, t)? {
        let s = if s.sign_of_real()? == Sign::Negative { s.neg() } else { s };
        return Ok((s, t.clone()));
    }
    let (lo, hi) = a.enclosure();
    let (lo, hi) = if lo.is_positive() {
        (lo, hi)
    } else {
        let mut width = &hi - &lo;
        loop {
            width /= Rational::from_integer(2.into());
            let (l, h) = a.enclosure_within(&width);
            if l.is_positive() {
                break (l, h);
            }
        }
    };
    let lo = scaled_isqrt(&lo, false);
    let hi = scaled_isqrt(&hi, true);
    let name = format!("r{}", t.depth() + 1);
    let poly = [a.neg(), AlgebraicScalar::zero(), AlgebraicScalar::one()];
    let nt = t.adjoin(&name, &poly, lo, hi)?;
    Ok((nt.generator(), nt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn w_tower() -> Tower {
        let mp = [-1, 2, 1].map(AlgebraicScalar::from_i64);
        Tower::base().adjoin("w", &mp, rat(41, 100), rat(42, 100)).unwrap()
    }

    #[test]
    fn two_is_square_in_w_field() {
        let t = w_tower();
        let (s, t2) = sqrt_positive(&AlgebraicScalar::from_i64(2), &t).unwrap();
        assert_eq!(t2.depth(), 1);
        assert_eq!(s.to_string(), "1+w");
    }

    #[test]
    fn rational_squares() {
        let (s, t) = sqrt_positive(&AlgebraicScalar::rational(rat(9, 4)), &Tower::base()).unwrap();
        assert_eq!(s, AlgebraicScalar::rational(rat(3, 2)));
        assert_eq!(t.depth(), 0);
    }

    #[test]
    fn adjoins_and_recognises_conjugate_root() {
        let t = w_tower();
        let w = t.generator();
        // 2 − √2 = 3 − (1+w)·… : here 1 − w = 2 − √2
        let a = AlgebraicScalar::one().sub(&w);
        let (r, t2) = sqrt_positive(&a, &t).unwrap();
        assert_eq!(t2.depth(), 2);
        assert_eq!(r.mul(&r), a);
        // 2 + √2 = 3 + w is a square once √(2 − √2) is present
        let b = AlgebraicScalar::from_i64(3).add(&w);
        let (s, t3) = sqrt_positive(&b, &t2).unwrap();
        assert_eq!(t3.depth(), 2);
        assert_eq!(s.mul(&s), b);
        assert_eq!(s.sign_of_real().unwrap(), Sign::Positive);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(sqrt_positive(&AlgebraicScalar::from_i64(-1), &Tower::base()).is_err());
        assert!(sqrt_positive(&AlgebraicScalar::rational(rat_int(0)), &Tower::base()).is_err());
    }
}
