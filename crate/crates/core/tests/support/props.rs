use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use unidiag::groebner::primes::minimal_primes_finite;
use unidiag::groebner::{Ideal, MonomialOrder};
use unidiag::normalize::RingPresentation;
use unidiag::pipeline::diag::spectral_projections;
use unidiag::pipeline::split::rational_coefficients;
use unidiag::pipeline::{vieta_ideal, FractionPair, QuotientRing};
use unidiag::poly::charpoly::{char_poly_coeffs, minimal_poly};
use unidiag::poly::{Block, Matrix, MultiPoly, RationalFunction, VarSet};
use unidiag::scalar::{rat, AlgebraicScalar, Field, GaussianRational, Rational, Tower};
use unidiag::series::{eval_at_series, newton_hensel_lift, TruncatedSeries};

pub const CASES: u32 = 128;

type GPoly = MultiPoly<GaussianRational>;
type Check = std::result::Result<(), TestCaseError>;

/// Every exponent vector of total degree at most 2 in two variables.
const QUADRATIC: [[u32; 2]; 6] = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Check) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn base() -> Arc<VarSet> {
    VarSet::of_block(&["x1", "x2"], Block::Base).unwrap()
}

/// A polynomial in the last two variables of `v` with the given coefficients
/// on the monomials of `QUADRATIC`.
fn quadratic<C: Field>(v: &Arc<VarSet>, coeffs: &[C]) -> MultiPoly<C> {
    let n = v.len();
    MultiPoly::from_terms(
        v,
        QUADRATIC.iter().zip(coeffs).map(|(e, c)| {
            let mut m = vec![0; n];
            m[n - 2] = e[0];
            m[n - 1] = e[1];
            (m, c.clone())
        }),
    )
}

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

fn rationals(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((small(), 1i64..=3), len).prop_map(|v| v.into_iter().map(|(n, d)| rat(n, d)).collect())
}

fn gaussians(len: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec((small(), small()), len)
        .prop_map(|v| v.into_iter().map(|(a, b)| GaussianRational::new(rat(a, 1), rat(b, 1))).collect())
}

fn scalar(r: &Rational) -> AlgebraicScalar {
    AlgebraicScalar::rational(r.clone())
}

fn conj_pair(p: &FractionPair) -> FractionPair {
    FractionPair { num: p.num.conj(), den: p.den.conj() }
}

type Case = (QuotientRing, Vec<Matrix<FractionPair>>, Matrix<RationalFunction<GaussianRational>>);

fn hermitian_strategy() -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>, Vec<GaussianRational>)> {
    (rationals(6), rationals(6), gaussians(6))
}

/// A random Hermitian 2×2 matrix of quadratic polynomials, the ring
/// `ℚ(i)[y, x]/Q` for the first minimal prime `Q` of its Vieta ideal, and its
/// spectral projections there.
fn projection_case((p, q, g): (Vec<Rational>, Vec<Rational>, Vec<GaussianRational>)) -> std::result::Result<Case, TestCaseError> {
    let v = base();
    let g = quadratic(&v, &g);
    let entry = |p: GPoly| RationalFunction::from_poly(p);
    let real = |c: &[Rational]| quadratic(&v, &c.iter().map(|r| GaussianRational::real(r.clone())).collect::<Vec<_>>());
    let a = Matrix::from_rows(vec![vec![entry(real(&p)), entry(g.clone())], vec![entry(g.conj()), entry(real(&q))]])
        .map_err(fail)?;
    let coeffs = rational_coefficients(&minimal_poly(&a).map_err(fail)?).map_err(fail)?;
    let j = vieta_ideal(&coeffs, &Ideal::zero(&v)).map_err(fail)?;
    let primes = minimal_primes_finite(&j, &j.vars().indices_of(Block::Base), 0).map_err(fail)?;
    if primes.is_empty() {
        return Err(fail("the Vieta ideal has no minimal primes"));
    }
    let ring = QuotientRing::new(&RingPresentation::new(primes[0].clone()));
    let pis = spectral_projections(&a, coeffs.len(), &ring).map_err(fail)?;
    Ok((ring, pis, a))
}

fn constant_matrix(ring: &QuotientRing, diagonal: i64) -> Matrix<FractionPair> {
    let zero = ring.constant(GaussianRational::zero());
    let c = ring.constant(GaussianRational::from_i64(diagonal));
    Matrix::from_fn(2, 2, |i, k| if i == k { c.clone() } else { zero.clone() })
}

/// `Π_k² = Π_k`, `Π_jΠ_k = 0`, `ΣΠ_k = I` and `Π_k* = Π_k` in the fraction
/// field of `ℚ(i)[y, x]/Q`.
pub fn projection_identities() -> Result<(), String> {
    check(hermitian_strategy(), |input| {
        let (ring, pis, _) = projection_case(input)?;
        let zeros = constant_matrix(&ring, 0);
        let mut sum = zeros.clone();
        for (k, pk) in pis.iter().enumerate() {
            prop_assert!(ring.matrices_equal(&ring.matmul(pk, pk).map_err(fail)?, pk), "Π_{} is not idempotent", k + 1);
            for (l, pl) in pis.iter().enumerate() {
                if l != k {
                    prop_assert!(ring.matrices_equal(&ring.matmul(pk, pl).map_err(fail)?, &zeros));
                }
            }
            let star = Matrix::from_fn(2, 2, |i, l| conj_pair(pk.get(l, i)));
            prop_assert!(ring.matrices_equal(&star, pk), "Π_{} is not Hermitian", k + 1);
            sum = Matrix::from_fn(2, 2, |i, l| ring.add(sum.get(i, l), pk.get(i, l)).unwrap());
        }
        prop_assert!(ring.matrices_equal(&sum, &constant_matrix(&ring, 1)), "projections do not sum to I");
        Ok(())
    })
}

/// `Σ y_k Π_k = A` in the fraction field of `ℚ(i)[y, x]/Q`.
pub fn spectral_sum() -> Result<(), String> {
    check(hermitian_strategy(), |input| {
        let (ring, pis, a) = projection_case(input)?;
        let rv = ring.vars().clone();
        let mut weighted = constant_matrix(&ring, 0);
        for (k, pk) in pis.iter().enumerate() {
            let y = FractionPair { num: MultiPoly::var(&rv, k), den: MultiPoly::one(&rv) };
            weighted = Matrix::from_fn(2, 2, |i, l| {
                ring.add(weighted.get(i, l), &ring.mul(&y, pk.get(i, l)).unwrap()).unwrap()
            });
        }
        prop_assert!(ring.matrices_equal(&weighted, &ring.embed(&a).map_err(fail)?), "Σ y_k Π_k differs from A");
        Ok(())
    })
}

/// `s·s = f` for `s = sqrt_unit(f)` and `f` with a positive rational constant.
pub fn sqrt_square_back() -> Result<(), String> {
    check((1i64..=9, 1i64..=4, rationals(6), 1u32..=6), |(n, dn, c, order)| {
        let v = base();
        let mut c = c;
        c[0] = rat(n, dn);
        let f = TruncatedSeries::new(quadratic(&v, &c).map_coeffs(scalar), order);
        let (s, _) = f.sqrt_unit(&Tower::base()).map_err(fail)?;
        prop_assert!(s.mul(&s).sub(&f).is_zero(), "s² - f = {}", s.mul(&s).sub(&f));
        prop_assert!(s.constant_term().sign_of_real().map_err(fail)? == unidiag::scalar::Sign::Positive);
        Ok(())
    })
}

/// `f·f⁻¹ = 1` for units `f` with Gaussian coefficients.
pub fn invert_product_back() -> Result<(), String> {
    check((gaussians(6), 0u32..=6), |(c, order)| {
        prop_assume!(!c[0].is_zero());
        let v = base();
        let f = TruncatedSeries::new(quadratic(&v, &c).map_coeffs(|g| AlgebraicScalar::gaussian(g.clone())), order);
        let inv = f.invert_unit().map_err(fail)?;
        let one = TruncatedSeries::constant(&v, AlgebraicScalar::one(), order);
        prop_assert!(f.mul(&inv).sub(&one).is_zero());
        prop_assert!(inv.mul(&f).sub(&one).is_zero());
        Ok(())
    })
}

/// Lifted series solve the system modulo `𝔪^{N+1}`.
///
/// The system is `L(y − s) + c·(y₁ − s₁)² + e·x₁(y₂ − s₂) + q(x) = 0` with an
/// invertible rational `L`, so `y = s` is a nondegenerate root over `x = 0`.
pub fn hensel_residuals() -> Result<(), String> {
    let strategy = (rationals(4), rationals(2), rationals(2), rationals(2), rationals(6), rationals(6), 1u32..=6);
    check(strategy, |(l, s, c, e, q1, q2, order)| {
        prop_assume!(l[0].clone() * l[3].clone() != l[1].clone() * l[2].clone());
        let v = VarSet::new([("y1", Block::Root), ("y2", Block::Root), ("x1", Block::Base), ("x2", Block::Base)]).unwrap();
        let konst = |r: &Rational| MultiPoly::constant(&v, r.clone());
        let dy: Vec<MultiPoly<Rational>> = (0..2).map(|i| MultiPoly::var(&v, i).sub(&konst(&s[i]))).collect();
        let x1 = MultiPoly::var(&v, 2);
        let mut gens = Vec::new();
        for (i, q) in [q1, q2].iter().enumerate() {
            let mut q = q.clone();
            q[0] = rat(0, 1);
            let g = dy[0]
                .scale(&l[2 * i])
                .add(&dy[1].scale(&l[2 * i + 1]))
                .add(&dy[0].mul(&dy[0]).scale(&c[i]))
                .add(&x1.mul(&dy[1]).scale(&e[i]))
                .add(&quadratic(&v, &q));
            gens.push(g.map_coeffs(scalar));
        }
        let sv = base();
        let start: Vec<AlgebraicScalar> = s.iter().map(scalar).collect();
        let lifted = newton_hensel_lift(&gens, &[0, 1], &[2, 3], &sv, &start, order).map_err(fail)?;
        let mut values = lifted.clone();
        values.push(TruncatedSeries::var(&sv, 0, order));
        values.push(TruncatedSeries::var(&sv, 1, order));
        for (k, (g, y)) in gens.iter().zip(&lifted).enumerate() {
            prop_assert!(eval_at_series(g, &values, &sv, order).is_zero(), "residual in equation {}", k + 1);
            prop_assert!(y.constant_term() == start[k]);
        }
        Ok(())
    })
}

/// `χ_B(B) = 0` for random square matrices up to 4×4.
pub fn cayley_hamilton() -> Result<(), String> {
    let strategy = (1usize..=4).prop_flat_map(|n| prop::collection::vec(gaussians(3), n * n).prop_map(move |e| (n, e)));
    check(strategy, |(n, entries)| {
        let v = base();
        let lin = |c: &[GaussianRational]| quadratic(&v, &[c[0].clone(), c[1].clone(), c[2].clone()]);
        let b = Matrix::from_fn(n, n, |i, j| lin(&entries[i * n + j]));
        let coeffs = char_poly_coeffs(&b).map_err(fail)?;
        prop_assert!(coeffs[n].is_one());
        let mut power = b.identity_like(n);
        let mut acc = Matrix::from_fn(n, n, |_, _| MultiPoly::zero(&v));
        for c in &coeffs {
            acc = acc.add(&power.scale(c));
            power = power.mul(&b);
        }
        prop_assert!(acc.is_zero());
        Ok(())
    })
}

fn trivariate() -> Arc<VarSet> {
    VarSet::of_block(&["a", "b", "c"], Block::Aux).unwrap()
}

/// Polynomials of degree at most 2 in three variables.
fn tri_polys(count: usize) -> impl Strategy<Value = Vec<Vec<(usize, i64)>>> {
    prop::collection::vec(prop::collection::vec((0usize..10, small()), 1..4), count)
}

fn tri_poly(v: &Arc<VarSet>, terms: &[(usize, i64)]) -> MultiPoly<Rational> {
    const MONOS: [[u32; 3]; 10] =
        [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
    MultiPoly::from_terms(v, terms.iter().map(|&(m, c)| (MONOS[m].to_vec(), rat(c, 1))))
}

/// The Gröbner basis of a Gröbner basis is itself, and it generates the
/// same ideal.
pub fn gb_idempotence() -> Result<(), String> {
    check((tri_polys(3), prop::bool::ANY), |(gens, lex)| {
        let v = trivariate();
        let ord = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let ideal = Ideal::new(&v, gens.iter().map(|t| tri_poly(&v, t)));
        let g = ideal.gb(ord);
        let again = Ideal::new(&v, g.iter().cloned()).gb(ord);
        prop_assert_eq!(g.as_ref(), again.as_ref());
        for f in ideal.gens() {
            prop_assert!(ideal.normal_form_in(f, ord).is_zero());
        }
        Ok(())
    })
}

/// `f·(I : f) ⊆ I` and `I ⊆ I : f`.
pub fn colon_soundness() -> Result<(), String> {
    check((tri_polys(2), tri_polys(1)), |(gens, f)| {
        let v = trivariate();
        let ideal = Ideal::new(&v, gens.iter().map(|t| tri_poly(&v, t)));
        let f = tri_poly(&v, &f[0]);
        let colon = ideal.quotient_poly(&f);
        for g in colon.gens() {
            prop_assert!(ideal.contains(&f.mul(g)), "f·{} is not in I", g);
        }
        prop_assert!(colon.contains_ideal(&ideal));
        Ok(())
    })
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

/// Coefficients `c₁, …` of `∏ (t − l_i(x))`, optionally times `t² + a t + b`.
fn product_coefficients(v: &Arc<VarSet>, linear: &[Vec<Rational>], quad: &Option<(Vec<Rational>, Vec<Rational>)>) -> Vec<MultiPoly<Rational>> {
    let lin = |c: &[Rational]| quadratic(v, &[rat(0, 1), c[0].clone(), c[1].clone()]);
    // coefficients of a monic polynomial in t, highest degree first
    let mut poly = vec![MultiPoly::one(v)];
    let mut times = |factor: &[MultiPoly<Rational>]| {
        let mut next = vec![MultiPoly::zero(v); poly.len() + factor.len() - 1];
        for (i, a) in poly.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                next[i + j] = next[i + j].add(&a.mul(b));
            }
        }
        poly = next;
    };
    for l in linear {
        times(&[MultiPoly::one(v), lin(l).neg()]);
    }
    if let Some((a, b)) = quad {
        times(&[MultiPoly::one(v), lin(a), lin(b)]);
    }
    poly.split_off(1)
}

/// The minimal primes of the Vieta ideal are permuted among themselves by
/// every permutation of the roots.
pub fn vieta_permutation_invariance() -> Result<(), String> {
    let factors = prop::option::of((rationals(2), rationals(2)))
        .prop_flat_map(|quad| {
            let max = if quad.is_some() { 1 } else { 3 };
            (prop::collection::vec(rationals(2), 1..=max), Just(quad))
        });
    check(factors, |(linear, quad)| {
        let v = base();
        let coeffs: Vec<RationalFunction<Rational>> =
            product_coefficients(&v, &linear, &quad).into_iter().map(RationalFunction::from_poly).collect();
        let d = coeffs.len();
        let j = vieta_ideal(&coeffs, &Ideal::zero(&v)).map_err(fail)?;
        let rv = j.vars().clone();
        let primes = minimal_primes_finite(&j, &rv.indices_of(Block::Base), 0).map_err(fail)?;
        prop_assert!(!primes.is_empty());
        for perm in permutations(d) {
            let bindings: Vec<(usize, MultiPoly<Rational>)> =
                perm.iter().enumerate().map(|(i, &k)| (i, MultiPoly::var(&rv, k))).collect();
            for p in &primes {
                let moved = Ideal::new(&rv, p.gens().iter().map(|g| g.substitute(&bindings, &rv)));
                prop_assert!(primes.iter().any(|q| q.same_as(&moved)), "permutation {:?} moves a prime outside the set", perm);
            }
        }
        Ok(())
    })
}

pub type Property = fn() -> Result<(), String>;

pub const ALL: [(&str, Property); 9] = [
    ("projection identities", projection_identities),
    ("sum of y_k Π_k equals A", spectral_sum),
    ("sqrt_unit square-back", sqrt_square_back),
    ("invert_unit product-back", invert_product_back),
    ("Hensel lift residuals", hensel_residuals),
    ("Cayley–Hamilton up to 4×4", cayley_hamilton),
    ("Gröbner basis idempotence", gb_idempotence),
    ("colon soundness", colon_soundness),
    ("Vieta prime set under root permutations", vieta_permutation_invariance),
];
