//! Characteristic and minimal polynomials of matrices over function fields.

use std::sync::Arc;

use super::gcd::{div_exact, gcd, lcm};
use super::matrix::Matrix;
use super::multipoly::MultiPoly;
use super::ratfun::RationalFunction;
use super::varset::{Block, VarSet};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Coefficients `[c₀, …, cₙ]` (cₙ = 1) of det(t·I − B) by Faddeev–LeVerrier.
pub fn char_poly_coeffs<C: Field>(b: &Matrix<MultiPoly<C>>) -> Result<Vec<MultiPoly<C>>> {
    if !b.is_square() {
        return Err(Error::NonSquare { rows: b.rows(), cols: b.cols() });
    }
    let n = b.rows();
    let vars = b.get(0, 0).vars().clone();
    let ident = b.identity_like(n);
    let mut coeffs = vec![MultiPoly::zero(&vars); n + 1];
    coeffs[n] = MultiPoly::one(&vars);
    let mut m = Matrix::from_fn(n, n, |_, _| MultiPoly::zero(&vars));
    for k in 1..=n {
        m = b.mul(&m).add(&ident.scale(&coeffs[n - k + 1]));
        let tr = b.mul(&m).trace();
        let inv_k = C::from_i64(k as i64).inv().expect("characteristic zero");
        coeffs[n - k] = tr.scale(&inv_k.neg());
    }
    Ok(coeffs)
}

/// Variable set `[t] ++ vars`.
pub fn with_t(vars: &Arc<VarSet>) -> Result<(Arc<VarSet>, usize)> {
    let name = vars.fresh("t");
    Ok((vars.prepend([(name, Block::Aux)])?, 0))
}

/// χ_B as a polynomial in a fresh leading variable t.
pub fn char_poly<C: Field>(b: &Matrix<MultiPoly<C>>) -> Result<MultiPoly<C>> {
    let coeffs = char_poly_coeffs(b)?;
    let (tv, t) = with_t(coeffs[0].vars())?;
    let lifted: Vec<MultiPoly<C>> = coeffs.iter().map(|c| c.remap(&tv)).collect::<Result<_>>()?;
    Ok(MultiPoly::from_univariate(&tv, t, &lifted))
}

/// Monic squarefree minimal polynomial `μ = tᵈ + c₁tᵈ⁻¹ + … + c_d`.
#[derive(Clone, Debug)]
pub struct MinimalPoly<C: Field> {
    /// `c₁, …, c_d`.
    pub coeffs: Vec<RationalFunction<C>>,
}

impl<C: Field> MinimalPoly<C> {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }
}

/// Writes a matrix of fractions as `B / g` with polynomial `B`.
pub fn clear_denominators<C: Field>(
    a: &Matrix<RationalFunction<C>>,
) -> (Matrix<MultiPoly<C>>, MultiPoly<C>) {
    let mut g = MultiPoly::one(a.get(0, 0).num().vars());
    for e in a.entries() {
        g = lcm(&g, e.den());
    }
    let b = a.map(|e| e.num().mul(&div_exact(&g, e.den()).expect("lcm")));
    (b, g)
}

/// Squarefree part of χ_A computed as χ/gcd(χ, χ′) over the function field.
pub fn minimal_poly<C: Field>(a: &Matrix<RationalFunction<C>>) -> Result<MinimalPoly<C>> {
    let (b, g) = clear_denominators(a);
    let chi = char_poly(&b)?;
    let tv = chi.vars().clone();
    let t = 0;
    let d = gcd(&chi, &chi.derivative(t));
    let mu_b = div_exact(&chi, &d).expect("gcd divides");
    // make monic in t: the leading t-coefficient is a constant here
    let lead = mu_b.to_univariate(t).last().expect("nonzero").clone();
    if !lead.is_constant() {
        return Err(Error::Internal("minimal polynomial not monic".into()));
    }
    let mu_b = mu_b.scale(&lead.constant_term().inv().expect("nonzero"));
    let coeffs_b = mu_b.to_univariate(t);
    let deg = coeffs_b.len() - 1;
    // μ_B(B) must vanish
    let n = b.rows();
    let base_vars = b.get(0, 0).vars().clone();
    let mut acc = Matrix::from_fn(n, n, |_, _| MultiPoly::zero(&base_vars));
    let ident = b.identity_like(n);
    for k in (0..=deg).rev() {
        let c = coeffs_b[k].remap(&base_vars)?;
        acc = acc.mul(&b).add(&ident.scale(&c));
    }
    if !acc.is_zero() {
        return Err(Error::Verification("μ(A) ≠ 0".into()));
    }
    let _ = tv;
    // μ_A(t) = μ_B(g·t)/gᵈ, so c_k(A) = c_k(B)/gᵏ
    let mut coeffs = Vec::with_capacity(deg);
    for k in 1..=deg {
        let ck = coeffs_b[deg - k].remap(&base_vars)?;
        coeffs.push(RationalFunction::new(ck, g.pow(k as u32))?);
    }
    Ok(MinimalPoly { coeffs })
}
