use std::fmt;

use super::multipoly::MultiPoly;
use super::ratfun::RationalFunction;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Commutative ring operations for matrix entries whose zero depends on
/// context (variable set, truncation order).
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
}

impl<C: Field> RingElem for MultiPoly<C> {
    fn add(&self, o: &Self) -> Self {
        MultiPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MultiPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MultiPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.vars())
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn conj(&self) -> Self {
        MultiPoly::conj(self)
    }
}

impl<C: Field> RingElem for RationalFunction<C> {
    fn add(&self, o: &Self) -> Self {
        RationalFunction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RationalFunction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RationalFunction::mul(self, o)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.num().vars())
    }
    fn one_like(&self) -> Self {
        RationalFunction::from_poly(MultiPoly::one(self.num().vars()))
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn conj(&self) -> Self {
        RationalFunction::conj(self)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if r == 0 || c == 0 || rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch);
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone, E>(&self, f: impl FnMut(&T) -> std::result::Result<U, E>) -> std::result::Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let n = cols[0].len();
        Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl<T: RingElem> Matrix<T> {
    fn zero_entry(&self) -> T {
        self.data[0].zero_like()
    }

    pub fn identity_like(&self, n: usize) -> Self {
        let z = self.zero_entry();
        let o = z.one_like();
        Matrix::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(o.get(i, j)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape");
        let z = self.zero_entry();
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = z.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch);
        }
        Ok(self.mul(o))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> T {
        let mut acc = self.zero_entry();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_normal(&self) -> bool {
        let s = self.adjoint();
        self.mul(&s) == s.mul(self)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Matrix of partial derivatives ∂gᵢ/∂vⱼ.
pub fn jacobian<C: Field>(gens: &[MultiPoly<C>], vars: &[usize]) -> Matrix<MultiPoly<C>> {
    Matrix::from_fn(gens.len(), vars.len(), |i, j| gens[i].derivative(vars[j]))
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn determinant<C: Field>(m: &Matrix<MultiPoly<C>>) -> MultiPoly<C> {
    let n = m.rows();
    let mut a = m.to_rows();
    let vars = m.get(0, 0).vars().clone();
    let mut prev = MultiPoly::one(&vars);
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return MultiPoly::zero(&vars);
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = super::gcd::div_exact(&t, &prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign { d.neg() } else { d }
}

/// Rank over a field by Gaussian elimination, with the pivot columns
/// (leftmost-first).
pub fn rank_and_pivots<C: Field>(m: &Matrix<C>) -> (usize, Vec<usize>) {
    let mut a: Vec<Vec<C>> = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in (r + 1)..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for k in c..cols {
                let t = a[r][k].mul(&f);
                a[i][k] = a[i][k].sub(&t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

impl<C: Field> Matrix<C> {
    pub fn field_rank(&self) -> usize {
        rank_and_pivots(self).0
    }
}

impl<C: Field> RingElem for C {
    fn add(&self, o: &Self) -> Self {
        Field::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Field::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Field::mul(self, o)
    }
    fn neg(&self) -> Self {
        Field::neg(self)
    }
    fn zero_like(&self) -> Self {
        C::zero()
    }
    fn one_like(&self) -> Self {
        C::one()
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn conj(&self) -> Self {
        Field::conj(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Block, VarSet};
    use crate::scalar::Rational;

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let v = VarSet::of_block(&["x", "y"], Block::Base).unwrap();
        let p = |s: &str| MultiPoly::<Rational>::parse(s, &v).unwrap();
        let m = Matrix::from_rows(vec![
            vec![p("0"), p("x"), p("1")],
            vec![p("y"), p("0"), p("x")],
            vec![p("1"), p("y"), p("x*y")],
        ])
        .unwrap();
        // 0·(0−xy) − x·(xy²−x) + 1·(y²−0)
        assert_eq!(determinant(&m), p("-x^2*y^2+x^2+y^2"));
        let r = Matrix::from_rows(vec![vec![p("1"), p("y")], vec![p("x"), p("x*y")]]).unwrap();
        assert!(determinant(&r).is_zero());
    }
}
