//! Spectral projections, membership in the local ring, Gram–Schmidt over
//! power series and the unitary diagonalization built from them.

use std::fmt;
use std::sync::Arc;

use super::split::{decide_split, rational_coefficients, root_names, SplitCertificate, SplitOptions, Timings};
use crate::error::{Error, Result};
use crate::groebner::buchberger::{groebner_with_cofactor, reduce_with_cofactor};
use crate::groebner::primes::MaximalIdeal;
use crate::groebner::{Ideal, MonomialOrder};
use crate::normalize::RingPresentation;
use crate::poly::charpoly::{clear_denominators, minimal_poly};
use crate::poly::gcd::{div_exact, gcd};
use crate::poly::matrix::rank_and_pivots;
use crate::poly::{Block, Matrix, MultiPoly, RationalFunction, RingElem as _, VarSet};
use crate::scalar::{rat, AlgebraicScalar, Field, GaussianRational, Rational, Tower};
use crate::series::{eval_at_series, newton_hensel_lift, TruncatedSeries};

type GPoly = MultiPoly<GaussianRational>;
type Scalar = AlgebraicScalar;
type GMatrix = Matrix<RationalFunction<GaussianRational>>;

const ORD: MonomialOrder = MonomialOrder::DegRevLex;

/// `num/den` read in the fraction field of `k[x, y, w]/Q′`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionPair {
    pub num: GPoly,
    pub den: GPoly,
}

impl fmt::Display for FractionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `k[x, y, w]/Q′` with coefficients in `ℚ(i)`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ideal: Ideal<GaussianRational>,
}

impl QuotientRing {
    pub fn new(p: &RingPresentation) -> Self {
        QuotientRing { ideal: p.relations.map_coeffs(|c| GaussianRational::real(c.clone())).reduced() }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.ideal.vars()
    }

    pub fn reduce(&self, p: &GPoly) -> GPoly {
        self.ideal.normal_form(p)
    }

    pub fn is_zero(&self, p: &GPoly) -> bool {
        self.ideal.contains(p)
    }

    /// Reduces both parts, cancels their gcd and makes the denominator monic.
    pub fn fraction(&self, num: &GPoly, den: &GPoly) -> Result<FractionPair> {
        let num = self.reduce(num);
        let den = self.reduce(den);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FractionPair { num, den: MultiPoly::one(self.vars()) });
        }
        let g = gcd(&num, &den);
        let n = div_exact(&num, &g).expect("gcd divides");
        let d = div_exact(&den, &g).expect("gcd divides");
        let lc = d.leading_coeff(ORD).inv().expect("nonzero");
        Ok(FractionPair { num: n.scale(&lc), den: d.scale(&lc) })
    }

    pub fn mul(&self, a: &FractionPair, b: &FractionPair) -> Result<FractionPair> {
        self.fraction(&a.num.mul(&b.num), &a.den.mul(&b.den))
    }

    pub fn add(&self, a: &FractionPair, b: &FractionPair) -> Result<FractionPair> {
        self.fraction(&a.num.mul(&b.den).add(&b.num.mul(&a.den)), &a.den.mul(&b.den))
    }

    pub fn equal(&self, a: &FractionPair, b: &FractionPair) -> bool {
        self.is_zero(&a.num.mul(&b.den).sub(&b.num.mul(&a.den)))
    }

    pub fn constant(&self, c: GaussianRational) -> FractionPair {
        FractionPair { num: MultiPoly::constant(self.vars(), c), den: MultiPoly::one(self.vars()) }
    }

    pub fn matmul(&self, a: &Matrix<FractionPair>, b: &Matrix<FractionPair>) -> Result<Matrix<FractionPair>> {
        if a.cols() != b.rows() {
            return Err(Error::ShapeMismatch);
        }
        let mut rows = Vec::with_capacity(a.rows());
        for i in 0..a.rows() {
            let mut row = Vec::with_capacity(b.cols());
            for j in 0..b.cols() {
                let mut acc = self.constant(GaussianRational::zero());
                for k in 0..a.cols() {
                    acc = self.add(&acc, &self.mul(a.get(i, k), b.get(k, j))?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Matrix::from_rows(rows)
    }

    pub fn matrices_equal(&self, a: &Matrix<FractionPair>, b: &Matrix<FractionPair>) -> bool {
        a.rows() == b.rows() && a.cols() == b.cols() && a.entries().zip(b.entries()).all(|(x, y)| self.equal(x, y))
    }

    /// A matrix over `ℚ(i)(x)` read in the fraction field of the ring.
    pub fn embed(&self, a: &GMatrix) -> Result<Matrix<FractionPair>> {
        a.try_map(|e| self.fraction(&e.num().remap(self.vars())?, &e.den().remap(self.vars())?))
    }
}

/// `Π_k = ∏_{i≠k} (A − y_i I)/(y_k − y_i)` modulo `Q′`, one matrix per root.
pub fn spectral_projections(a: &GMatrix, d: usize, ring: &QuotientRing) -> Result<Vec<Matrix<FractionPair>>> {
    let (b, g) = clear_denominators(a);
    let v = ring.vars().clone();
    let b = b.try_map(|p| p.remap(&v))?;
    let g = g.remap(&v)?;
    let n = a.rows();
    let one = MultiPoly::one(&v);
    let ident = Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { MultiPoly::zero(&v) });
    let ys: Vec<GPoly> = root_names(d).iter().map(|name| MultiPoly::var_named(&v, name)).collect();
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let mut num = ident.clone();
        let mut den = one.clone();
        for i in (0..d).filter(|&i| i != k) {
            let factor = b.sub(&ident.scale(&g.mul(&ys[i])));
            num = num.mul(&factor).map(|p| ring.reduce(p));
            den = ring.reduce(&den.mul(&g).mul(&ys[k].sub(&ys[i])));
        }
        out.push(num.try_map(|p| ring.fraction(p, &den))?);
    }
    Ok(out)
}

/// Outcome of the local-ring membership test of one entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    /// `F/G = f/g` in the fraction field with `g ∉ 𝔫`.
    Member { f: GPoly, g: GPoly },
    /// Every generator of `(⟨G⟩ + Q′) : F` lies in `𝔫`.
    NonMember { colon: Vec<GPoly> },
}

/// Decides whether `F/G` lies in the localization at `𝔫`.
pub fn local_membership(entry: &FractionPair, ring: &QuotientRing, n: &MaximalIdeal) -> Result<Membership> {
    let v = ring.vars();
    if ring.is_zero(&entry.num) {
        return Ok(Membership::Member { f: MultiPoly::zero(v), g: MultiPoly::one(v) });
    }
    if !n.contains(&entry.den)? {
        return Ok(Membership::Member { f: entry.num.clone(), g: entry.den.clone() });
    }
    let colon = ring.ideal.with([entry.den.clone()]).quotient_poly(&entry.num);
    let mut gens = colon.gb(ORD).to_vec();
    gens.sort_by_key(|g| g.total_degree());
    let mut unit = None;
    for g in &gens {
        if !n.contains(g)? {
            unit = Some(g.clone());
            break;
        }
    }
    let Some(g) = unit else { return Ok(Membership::NonMember { colon: gens }) };
    let basis = groebner_with_cofactor(&entry.den, &ring.ideal.gb(ORD), ORD);
    let (rem, f) = reduce_with_cofactor(&g.mul(&entry.num), &basis, ORD);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("cofactor extraction left remainder {rem}")));
    }
    Ok(Membership::Member { f: ring.reduce(&f), g })
}

/// Maximal independent columns of each residue matrix, leftmost first.
pub fn select_columns(residues: &[Matrix<Scalar>]) -> Result<Vec<Vec<usize>>> {
    let picked: Vec<Vec<usize>> = residues.iter().map(|m| rank_and_pivots(m).1).collect();
    let total: usize = picked.iter().map(|p| p.len()).sum();
    let n = residues.first().map(|m| m.rows()).unwrap_or(0);
    if total != n {
        return Err(Error::Inconsistent(format!("{total} independent projection columns for size {n}")));
    }
    Ok(picked)
}

/// `⟨a, b⟩ = Σ a_i·b_i*`.
pub fn inner(a: &[TruncatedSeries], b: &[TruncatedSeries]) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(a[0].vars(), a[0].order());
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(&y.conj()));
    }
    acc
}

/// Orthonormalizes each block separately; returns the columns block by
/// block and the tower holding the new square roots.
pub fn gram_schmidt_series(blocks: &[Vec<Vec<TruncatedSeries>>], tower: &Tower) -> Result<(Vec<Vec<TruncatedSeries>>, Tower)> {
    let mut tower = tower.clone();
    let mut out = Vec::new();
    for block in blocks {
        let mut basis: Vec<Vec<TruncatedSeries>> = Vec::new();
        for v in block {
            let mut e = v.clone();
            for b in &basis {
                let c = inner(&e, b);
                e = e.iter().zip(b).map(|(x, y)| x.sub(&y.mul(&c))).collect();
            }
            let (norm, t) = inner(&e, &e).sqrt_unit(&tower)?;
            tower = t;
            let inv = norm.invert_unit()?;
            basis.push(e.iter().map(|x| x.mul(&inv)).collect());
        }
        out.extend(basis);
    }
    Ok((out, tower))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermitianForm {
    Hermitian,
    /// `−i·A`.
    SkewHermitian,
    /// `A₁ + c·A₂`.
    Combination(u32),
}

impl fmt::Display for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HermitianForm::Hermitian => write!(f, "A"),
            HermitianForm::SkewHermitian => write!(f, "-i*A"),
            HermitianForm::Combination(c) => write!(f, "A1+{c}*A2"),
        }
    }
}

fn scalar_entry(a: &GMatrix, c: GaussianRational) -> RationalFunction<GaussianRational> {
    RationalFunction::from_poly(MultiPoly::constant(a.get(0, 0).num().vars(), c))
}

/// A Hermitian matrix with the same eigenvectors as the normal matrix `a`.
pub fn hermitian_form(a: &GMatrix) -> Result<(HermitianForm, GMatrix)> {
    let adj = a.adjoint();
    if adj == *a {
        return Ok((HermitianForm::Hermitian, a.clone()));
    }
    if !a.is_normal() {
        return Err(Error::NotNormal);
    }
    let a1 = a.add(&adj).scale(&scalar_entry(a, GaussianRational::real(rat(1, 2))));
    let a2 = a.sub(&adj).scale(&scalar_entry(a, GaussianRational::new(Rational::zero(), rat(-1, 2))));
    if a1.is_zero() {
        return Ok((HermitianForm::SkewHermitian, a2));
    }
    let deg = minimal_poly(a)?.degree();
    let tries = (deg * deg.saturating_sub(1) / 2 + 1) as u32;
    for c in 1..=tries {
        let h = a1.add(&a2.scale(&scalar_entry(a, GaussianRational::from_i64(c as i64))));
        if minimal_poly(&h)?.degree() == deg {
            return Ok((HermitianForm::Combination(c), h));
        }
    }
    Err(Error::Internal("no Hermitian combination separates the eigenvalues".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Diagonalizable,
    NotDiagonalizable(String),
    SplitFails,
}

#[derive(Clone, Debug)]
pub struct Projection {
    pub root: String,
    pub residue: Scalar,
    pub matrix: Matrix<FractionPair>,
    /// Entries rewritten as `f/g` with `g(𝔫) ≠ 0`, when all are local.
    pub local: Option<Matrix<(GPoly, GPoly)>>,
}

#[derive(Clone, Debug)]
pub struct DiagOptions {
    pub split: SplitOptions,
    pub order: u32,
}

#[derive(Clone, Debug)]
pub struct DiagonalizationResult {
    pub verdict: Verdict,
    pub form: HermitianForm,
    pub certificate: SplitCertificate,
    pub projections: Vec<Projection>,
    /// Selected column indices of each `Π_k`.
    pub selected: Vec<Vec<usize>>,
    /// Order of the eigenvalue blocks in `U`.
    pub block_order: Vec<usize>,
    pub order: u32,
    /// Series of `y_k`, one per root.
    pub eigenvalues: Vec<TruncatedSeries>,
    pub u: Option<Matrix<TruncatedSeries>>,
    /// Diagonal of `D`.
    pub d: Vec<TruncatedSeries>,
    pub tower: Tower,
    pub timings: Timings,
}

/// Values of all ring variables as series: the base coordinates and the
/// lifted fiber coordinates through `𝔫`.
fn lift_ring_variables(cert: &SplitCertificate, order: u32) -> Result<(Arc<VarSet>, Vec<TruncatedSeries>)> {
    let p = &cert.presentation;
    let v = p.vars();
    let base = v.indices_of(Block::Base);
    let sv = v.select(&base);
    let gens: Vec<MultiPoly<Scalar>> =
        p.generators().iter().map(|g| g.map_coeffs(|c| Scalar::rational(c.clone()))).collect();
    let unknowns = p.fiber_vars();
    let start: Vec<Scalar> = unknowns.iter().map(|&i| cert.maximal.residues[i].clone()).collect();
    let lifted = newton_hensel_lift(&gens, &unknowns, &base, &sv, &start, order)?;
    let mut values = Vec::with_capacity(v.len());
    for i in 0..v.len() {
        if let Some(j) = base.iter().position(|&b| b == i) {
            values.push(TruncatedSeries::var(&sv, j, order));
        } else {
            let j = unknowns.iter().position(|&u| u == i).expect("fiber variable");
            values.push(lifted[j].clone());
        }
    }
    Ok((sv, values))
}

fn gseries(p: &GPoly, values: &[TruncatedSeries], sv: &Arc<VarSet>, order: u32) -> TruncatedSeries {
    eval_at_series(&p.map_coeffs(|c| Scalar::gaussian(c.clone())), values, sv, order)
}

/// Entrywise Taylor expansion at the origin, truncated at `order`.
pub fn matrix_series(a: &GMatrix, sv: &Arc<VarSet>, order: u32) -> Result<Matrix<TruncatedSeries>> {
    a.try_map(|e| {
        let to_s = |p: &GPoly| -> Result<TruncatedSeries> {
            Ok(TruncatedSeries::new(p.remap(sv)?.map_coeffs(|c| Scalar::gaussian(c.clone())), order))
        };
        Ok(to_s(e.num())?.mul(&to_s(e.den())?.invert_unit()?))
    })
}

fn first_residual(m: &Matrix<TruncatedSeries>, what: &str) -> Result<()> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let r = m.get(i, j);
            if !r.is_zero() {
                return Err(Error::Verification(format!("{what} entry ({}, {}) has residual {}", i + 1, j + 1, r.abbreviated(3))));
            }
        }
    }
    Ok(())
}

fn diag_matrix(d: &[TruncatedSeries]) -> Matrix<TruncatedSeries> {
    let n = d.len();
    Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { d[i].zero_like() })
}

/// `U*U ≡ I`, `AU ≡ UD` and the symmetric functions of the eigenvalue
/// series, all modulo `𝔪^{N+1}`.
pub fn verify_diagonalization(
    a: &Matrix<TruncatedSeries>,
    u: &Matrix<TruncatedSeries>,
    d: &[TruncatedSeries],
) -> Result<()> {
    let n = u.rows();
    let uu = u.adjoint().mul(u);
    first_residual(&uu.sub(&uu.identity_like(n)), "U*U - I")?;
    let lhs = a.mul(u);
    let rhs = u.mul(&diag_matrix(d));
    first_residual(&lhs.sub(&rhs), "AU - UD")
}

fn symmetric_functions_match(ys: &[TruncatedSeries], coeffs: &[RationalFunction<Rational>], sv: &Arc<VarSet>, order: u32) -> Result<()> {
    let one = TruncatedSeries::constant(sv, Scalar::one(), order);
    let mut e = vec![one];
    for y in ys {
        let mut next = e.clone();
        next.push(TruncatedSeries::zero(sv, order));
        for j in 1..next.len() {
            next[j] = next[j].add(&e[j - 1].mul(y));
        }
        e = next;
    }
    for (k, c) in coeffs.iter().enumerate() {
        let to_s = |p: &MultiPoly<Rational>| -> Result<TruncatedSeries> {
            Ok(TruncatedSeries::new(p.remap(sv)?.map_coeffs(|x| Scalar::rational(x.clone())), order))
        };
        let ck = to_s(c.num())?.mul(&to_s(c.den())?.invert_unit()?);
        let expected = if k % 2 == 0 { ck.neg() } else { ck };
        let r = e[k + 1].sub(&expected);
        if !r.is_zero() {
            return Err(Error::Verification(format!("e_{} of the eigenvalues has residual {}", k + 1, r.abbreviated(3))));
        }
    }
    Ok(())
}

/// Unitary diagonalization of a normal matrix over the completed local
/// ring at the origin of `ℚ^m`.
pub fn diagonalize(a: &GMatrix, variety: &Ideal<Rational>, opts: &DiagOptions) -> Result<DiagonalizationResult> {
    if !variety.is_zero() && variety.gens().iter().any(|g| !g.is_zero()) {
        return Err(Error::Unsupported("diagonalization over a proper subvariety".into()));
    }
    let mut timings = Timings::default();
    let (form, h) = timings.run("hermitian", || hermitian_form(a))?;
    let coeffs = timings.run("minimal", || rational_coefficients(&minimal_poly(&h)?))?;
    let cert = decide_split(&coeffs, variety, &opts.split)?;
    timings.0.extend(cert.timings.0.iter().cloned());
    let d = cert.degree();
    let mut result = DiagonalizationResult {
        verdict: Verdict::SplitFails,
        form,
        certificate: cert,
        projections: Vec::new(),
        selected: Vec::new(),
        block_order: Vec::new(),
        order: opts.order,
        eigenvalues: Vec::new(),
        u: None,
        d: Vec::new(),
        tower: Tower::base(),
        timings: Timings::default(),
    };
    if !result.certificate.verdict {
        result.timings = timings;
        return Ok(result);
    }
    let cert = result.certificate.clone();
    let ring = QuotientRing::new(&cert.presentation);
    let pv = ring.vars().clone();
    let projections = timings.run("projections", || spectral_projections(&h, d, &ring))?;
    let names = root_names(d);
    for (k, m) in projections.into_iter().enumerate() {
        let residue = cert.maximal.residue(&MultiPoly::<Rational>::var_named(&pv, &names[k]))?;
        result.projections.push(Projection { root: names[k].clone(), residue, matrix: m, local: None });
    }

    // local membership of every entry
    let mut failure = None;
    timings.run("membership", || {
        for (k, p) in result.projections.iter_mut().enumerate() {
            let mut local = Vec::new();
            for (idx, e) in p.matrix.entries().enumerate() {
                match local_membership(e, &ring, &cert.maximal)? {
                    Membership::Member { f, g } => local.push((f, g)),
                    Membership::NonMember { .. } => {
                        let (r, c) = (idx / p.matrix.cols() + 1, idx % p.matrix.cols() + 1);
                        failure.get_or_insert(format!("entry ({r}, {c}) of projection {} is not in the local ring", k + 1));
                        break;
                    }
                }
            }
            if local.len() == p.matrix.rows() * p.matrix.cols() {
                let cols = p.matrix.cols();
                let rows: Vec<Vec<(GPoly, GPoly)>> = local.chunks(cols).map(|c| c.to_vec()).collect();
                p.local = Some(Matrix::from_rows(rows)?);
            }
        }
        Ok(())
    })?;
    if let Some(reason) = failure {
        result.verdict = Verdict::NotDiagonalizable(reason);
        result.timings = timings;
        return Ok(result);
    }

    let residues: Vec<Matrix<Scalar>> = result
        .projections
        .iter()
        .map(|p| {
            p.local.as_ref().expect("all local").try_map(|(f, g)| {
                cert.maximal.residue(f)?.try_div(&cert.maximal.residue(g)?)
            })
        })
        .collect::<Result<_>>()?;
    result.selected = timings.run("columns", || select_columns(&residues))?;

    let n = a.rows();
    let order = opts.order;
    let (sv, values) = timings.run("lift", || lift_ring_variables(&cert, order))?;
    result.eigenvalues = names
        .iter()
        .map(|y| values[pv.index(y).expect("root variable")].clone())
        .collect();
    let mut block_order: Vec<usize> = (0..d).collect();
    block_order.sort_by_cached_key(|&k| result.projections[k].residue.canonical_key());
    result.block_order = block_order.clone();

    let blocks: Vec<Vec<Vec<TruncatedSeries>>> = block_order
        .iter()
        .map(|&k| {
            let local = result.projections[k].local.as_ref().expect("all local");
            result.selected[k]
                .iter()
                .map(|&c| {
                    (0..n)
                        .map(|r| {
                            let (f, g) = local.get(r, c);
                            Ok(gseries(f, &values, &sv, order).mul(&gseries(g, &values, &sv, order).invert_unit()?))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let (columns, tower) = timings.run("gram_schmidt", || gram_schmidt_series(&blocks, &cert.maximal.tower))?;
    let u = Matrix::from_columns(&columns);
    let a_series = matrix_series(a, &sv, order)?;
    let dvals: Vec<TruncatedSeries> = match form {
        HermitianForm::Hermitian => block_order
            .iter()
            .flat_map(|&k| std::iter::repeat_n(result.eigenvalues[k].clone(), result.selected[k].len()))
            .collect(),
        _ => {
            let dm = u.adjoint().mul(&a_series).mul(&u);
            for i in 0..n {
                for j in 0..n {
                    if i != j && !dm.get(i, j).is_zero() {
                        return Err(Error::Verification(format!("U*AU is not diagonal at ({}, {})", i + 1, j + 1)));
                    }
                }
            }
            (0..n).map(|i| dm.get(i, i).clone()).collect()
        }
    };
    timings.run("verify", || {
        symmetric_functions_match(&result.eigenvalues, &cert.coeffs, &sv, order)?;
        verify_diagonalization(&a_series, &u, &dvals)
    })?;
    result.verdict = Verdict::Diagonalizable;
    result.u = Some(u);
    result.d = dvals;
    result.tower = tower;
    result.timings = timings;
    Ok(result)
}
