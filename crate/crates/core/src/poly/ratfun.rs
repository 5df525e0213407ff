use std::fmt;
use std::sync::Arc;

use super::gcd::{div_exact, gcd};
use super::multipoly::MultiPoly;
use super::varset::VarSet;
use crate::error::{Error, Result};
use crate::groebner::order::MonomialOrder;
use crate::scalar::Field;

/// Reduced fraction `num / den` of polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<C: Field> {
    num: MultiPoly<C>,
    den: MultiPoly<C>,
}

impl<C: Field> RationalFunction<C> {
    pub fn new(num: MultiPoly<C>, den: MultiPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = gcd(&num, &den);
        let mut n = div_exact(&num, &g).expect("gcd divides");
        let mut d = div_exact(&den, &g).expect("gcd divides");
        let lc = d.leading_coeff(MonomialOrder::Lex).inv().expect("nonzero");
        n = n.scale(&lc);
        d = d.scale(&lc);
        Ok(RationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: MultiPoly<C>) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Self::from_poly(MultiPoly::zero(vars))
    }

    pub fn num(&self) -> &MultiPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
            .expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.num.conj(), self.den.conj()).expect("nonzero denominators")
    }

    /// True when the denominator does not vanish at the origin.
    pub fn is_local(&self) -> bool {
        !self.den.constant_term().is_zero()
    }
}

impl<C: Field> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
