//! Factorization over ℚ.

pub mod modp;
pub mod multivariate;
pub mod zassenhaus;

use crate::error::{Error, Result};
use crate::poly::gcd::{div_exact, normalize, squarefree_part};
use crate::poly::{upoly, MultiPoly};
use crate::scalar::{Field, GaussianRational, Rational};

pub const MAX_DEGREE: u32 = 24;
pub const MAX_VARIABLES: usize = 5;

/// Irreducibility test for a univariate rational polynomial.
pub fn is_irreducible_rational(p: &[Rational]) -> Result<bool> {
    let mut p = p.to_vec();
    upoly::trim(&mut p);
    let deg = match upoly::degree(&p) {
        None | Some(0) => return Ok(false),
        Some(d) => d,
    };
    if deg as u32 > MAX_DEGREE {
        return Err(Error::UnsupportedSize(format!("degree {deg} exceeds {MAX_DEGREE}")));
    }
    if upoly::gcd(&p, &upoly::derivative(&p)).len() != 1 {
        return Ok(false);
    }
    Ok(zassenhaus::factor_squarefree(&zassenhaus::primitive_integer(&p)).len() == 1)
}

/// Monic irreducible factors with multiplicities of a univariate rational
/// polynomial.
pub fn factor_univariate(p: &[Rational]) -> Result<Vec<(Vec<Rational>, u32)>> {
    let mut p = p.to_vec();
    upoly::trim(&mut p);
    match upoly::degree(&p) {
        None => return Err(Error::Internal("factoring the zero polynomial".into())),
        Some(d) if d as u32 > MAX_DEGREE => {
            return Err(Error::UnsupportedSize(format!("degree {d} exceeds {MAX_DEGREE}")))
        }
        _ => {}
    }
    let sqf = upoly::squarefree_part(&p);
    if sqf.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for g in zassenhaus::factor_squarefree(&zassenhaus::primitive_integer(&sqf)) {
        let g = upoly::monic(&g.into_iter().map(Rational::from_integer).collect::<Vec<_>>());
        let mut mult = 0;
        loop {
            let (q, r) = upoly::divrem(&p, &g);
            if !r.is_empty() {
                break;
            }
            p = q;
            mult += 1;
        }
        out.push((g, mult));
    }
    Ok(out)
}

/// `c` and the factors `f_i` with multiplicities `m_i` of `c·∏ f_i^{m_i}`.
pub type Factorization<C = Rational> = (C, Vec<(MultiPoly<C>, u32)>);

/// Complete factorization `p = c·∏ f_i^{m_i}` over ℚ. The factors are
/// lex-monic and sorted by total degree, then by printed form.
pub fn factor_over_q(p: &MultiPoly<Rational>) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::Internal("factoring the zero polynomial".into()));
    }
    if p.is_constant() {
        return Ok((p.constant_term(), Vec::new()));
    }
    let nv = p.support().len();
    if nv > MAX_VARIABLES {
        return Err(Error::UnsupportedSize(format!("{nv} variables exceed {MAX_VARIABLES}")));
    }
    if p.total_degree() > MAX_DEGREE {
        return Err(Error::UnsupportedSize(format!(
            "total degree {} exceeds {MAX_DEGREE}",
            p.total_degree()
        )));
    }
    let sqf = squarefree_part(p);
    let mut factors = multivariate::factor_squarefree(&sqf)?;
    factors.sort_by(|a, b| {
        a.total_degree().cmp(&b.total_degree()).then_with(|| a.to_string().cmp(&b.to_string()))
    });
    let mut rest = p.clone();
    let mut out = Vec::new();
    for f in factors {
        let f = normalize(&f);
        let mut mult = 0;
        while let Some(q) = div_exact(&rest, &f) {
            rest = q;
            mult += 1;
        }
        if mult == 0 {
            return Err(Error::Internal(format!("factor {f} does not divide {p}")));
        }
        out.push((f, mult));
    }
    if !rest.is_constant() {
        return Err(Error::Internal(format!("incomplete factorization of {p}: {rest}")));
    }
    Ok((rest.constant_term(), out))
}

/// Real part of a polynomial over ℚ(i) whose coefficients are all real.
pub fn rational_part(p: &MultiPoly<GaussianRational>) -> Result<MultiPoly<Rational>> {
    p.try_map_coeffs(|c| if c.is_real() { Some(c.re.clone()) } else { None })
        .ok_or_else(|| Error::Unsupported(format!("factoring with non-real coefficients: {p}")))
}

/// Factorization over ℚ of a polynomial with real Gaussian coefficients.
pub fn factor_gaussian(
    p: &MultiPoly<GaussianRational>,
) -> Result<Factorization<GaussianRational>> {
    let (c, fs) = factor_over_q(&rational_part(p)?)?;
    Ok((
        GaussianRational::real(c),
        fs.into_iter().map(|(f, m)| (f.map_coeffs(GaussianRational::from_rational), m)).collect(),
    ))
}
