//! Real number-field towers over ℚ(i) and their elements.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Signed;

use super::field::{fmt_rational, Field, Rational};
use super::GaussianRational;
use crate::error::{Error, Result};
use crate::poly::upoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug)]
struct Isolation {
    lo: Rational,
    hi: Rational,
    /// Sign of the minimal polynomial at `lo`.
    sign_lo: Sign,
}

#[derive(Debug)]
pub struct TowerNode {
    parent: Tower,
    depth: usize,
    name: String,
    /// Monic, coefficients at the parent level, low degree first.
    min_poly: Vec<Rep>,
    iso: Mutex<Isolation>,
}

/// A chain ℚ(i) ⊂ ℚ(i)(α₁) ⊂ … of simple real extensions.
#[derive(Clone, Debug, Default)]
pub struct Tower(Option<Arc<TowerNode>>);

/// Recursive representation: level 0 is a Gaussian rational, level k a
/// polynomial in αₖ of degree below deg(αₖ) with level-(k−1) coefficients.
#[derive(Clone, Debug, PartialEq)]
enum Rep {
    Base(GaussianRational),
    Ext(Vec<Rep>),
}

impl Tower {
    pub fn base() -> Self {
        Tower(None)
    }

    pub fn depth(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.depth)
    }

    fn node(&self) -> &TowerNode {
        self.0.as_ref().expect("extension level")
    }

    pub fn parent(&self) -> Tower {
        self.0.as_ref().map_or(Tower(None), |n| n.parent.clone())
    }

    fn same(&self, other: &Tower) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }

    /// The ancestor at the given depth.
    fn at_depth(&self, depth: usize) -> Tower {
        let mut t = self.clone();
        while t.depth() > depth {
            t = t.parent();
        }
        t
    }

    /// True when `self` is `other` or one of its ancestors.
    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.depth() <= other.depth() && other.at_depth(self.depth()).same(self)
    }

    /// Generator names, innermost first.
    pub fn generator_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut t = self.clone();
        while let Some(n) = t.0.clone() {
            out.push(n.name.clone());
            t = n.parent.clone();
        }
        out.reverse();
        out
    }

    /// The generator αₖ of the top extension.
    pub fn generator(&self) -> AlgebraicScalar {
        let one = rep_one(self.depth() - 1);
        let zero = rep_zero(self.depth() - 1);
        AlgebraicScalar::canonical(self.clone(), Rep::Ext(vec![zero, one]))
    }

    /// Generator of the named level, if present.
    pub fn generator_named(&self, name: &str) -> Option<AlgebraicScalar> {
        let mut t = self.clone();
        while let Some(n) = t.0.clone() {
            if n.name == name {
                return Some(t.generator());
            }
            t = n.parent.clone();
        }
        None
    }

    /// Minimal polynomial of the top generator, low degree first.
    pub fn min_poly(&self) -> Vec<AlgebraicScalar> {
        let parent = self.parent();
        self.node()
            .min_poly
            .iter()
            .map(|r| AlgebraicScalar::canonical(parent.clone(), r.clone()))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.0.as_ref().map_or(1, |n| n.min_poly.len() - 1)
    }

    /// Current isolating interval of the top generator.
    pub fn interval(&self) -> (Rational, Rational) {
        let iso = self.node().iso.lock().expect("interval lock");
        (iso.lo.clone(), iso.hi.clone())
    }

    /// Printable description of every level: name, minimal polynomial and
    /// isolating interval.
    pub fn describe(&self) -> Vec<(String, String, (Rational, Rational))> {
        let mut levels = Vec::new();
        let mut t = self.clone();
        while t.depth() > 0 {
            let name = t.node().name.clone();
            let mp = t.min_poly();
            let mut s = String::new();
            for (k, c) in mp.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mono = match k {
                    0 => String::new(),
                    1 => name.clone(),
                    _ => format!("{name}^{k}"),
                };
                push_term(&mut s, &c.to_string(), c.is_compound(), &mono);
            }
            levels.push((name, s, t.interval()));
            t = t.parent();
        }
        levels.reverse();
        levels
    }

    /// Adjoins a real root of `min_poly` (coefficients in `self`, low degree
    /// first) isolated by `[lo, hi]`.
    pub fn adjoin(
        &self,
        name: &str,
        min_poly: &[AlgebraicScalar],
        lo: Rational,
        hi: Rational,
    ) -> Result<Tower> {
        let bad = |m: &str| Error::InvalidGenerator(format!("{name}: {m}"));
        let mut poly: Vec<AlgebraicScalar> = Vec::new();
        for c in min_poly {
            poly.push(c.lift_to(self).ok_or(Error::IncompatibleTowers)?);
        }
        upoly::trim(&mut poly);
        if poly.len() < 3 {
            return Err(bad("minimal polynomial must have degree at least 2"));
        }
        if poly.iter().any(|c| c.conj() != *c) {
            return Err(bad("minimal polynomial must have real coefficients"));
        }
        if lo >= hi {
            return Err(bad("empty isolating interval"));
        }
        let poly = upoly::monic(&poly);
        let sign_lo = eval_at_rational(&poly, &lo).sign_of_real()?;
        let sign_hi = eval_at_rational(&poly, &hi).sign_of_real()?;
        if sign_lo == Sign::Zero || sign_hi == Sign::Zero || sign_lo == sign_hi {
            return Err(Error::NoRealEmbedding(name.to_string()));
        }
        if self.depth() == 0 {
            let q: Vec<Rational> = poly
                .iter()
                .map(|c| c.as_gaussian().expect("base coefficient").re)
                .collect();
            if upoly::count_real_roots(&q, &lo, &hi) != 1 {
                return Err(Error::NoRealEmbedding(name.to_string()));
            }
            if !crate::groebner::factor::is_irreducible_rational(&q)? {
                return Err(bad("minimal polynomial is reducible"));
            }
        } else {
            if count_roots_refining(&poly, &lo, &hi, 0)? != 1 {
                return Err(Error::NoRealEmbedding(name.to_string()));
            }
            if poly.len() != 3 {
                return Err(Error::Unsupported(format!(
                    "generator `{name}` of degree {} over a nontrivial tower",
                    poly.len() - 1
                )));
            }
            let disc = poly[1].mul(&poly[1]).sub(&poly[0].mul(&AlgebraicScalar::from_i64(4)));
            if super::sqrt::exact_sqrt(&disc, self)?.is_some() {
                return Err(bad("minimal polynomial is reducible"));
            }
        }
        let depth = self.depth() + 1;
        let reps = poly.iter().map(|c| c.rep_at(self)).collect();
        Ok(Tower(Some(Arc::new(TowerNode {
            parent: self.clone(),
            depth,
            name: name.to_string(),
            min_poly: reps,
            iso: Mutex::new(Isolation { lo, hi, sign_lo }),
        }))))
    }

    /// Halves the isolating interval of every level.
    fn refine_all(&self) {
        let mut t = self.clone();
        while t.depth() > 0 {
            t.refine_top();
            t = t.parent();
        }
    }

    fn refine_top(&self) {
        let node = self.node();
        let (lo, hi, sign_lo) = {
            let iso = node.iso.lock().expect("interval lock");
            (iso.lo.clone(), iso.hi.clone(), iso.sign_lo)
        };
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        let poly = self.min_poly();
        let s = eval_at_rational(&poly, &mid)
            .sign_of_real()
            .expect("minimal polynomial coefficients are real");
        let mut iso = node.iso.lock().expect("interval lock");
        // another thread may have refined meanwhile
        if iso.lo != lo || iso.hi != hi {
            return;
        }
        assert!(s != Sign::Zero, "rational root of an irreducible polynomial");
        if s == sign_lo {
            iso.lo = mid;
        } else {
            iso.hi = mid;
        }
    }
}

fn eval_at_rational(poly: &[AlgebraicScalar], x: &Rational) -> AlgebraicScalar {
    let xs = AlgebraicScalar::from_rational(x);
    upoly::eval(poly, &xs)
}

/// Counts roots of `poly` in `[lo, hi]` by monotonicity on subintervals.
fn count_roots_refining(
    poly: &[AlgebraicScalar],
    lo: &Rational,
    hi: &Rational,
    depth: usize,
) -> Result<usize> {
    if depth > 48 {
        return Err(Error::Unsupported("root isolation did not converge".into()));
    }
    let deriv = upoly::derivative(poly);
    let x = (lo.clone(), hi.clone());
    for _ in 0..4 {
        if !interval_poly(&deriv, &x).contains_zero() {
            let a = eval_at_rational(poly, lo).sign_of_real()?;
            let b = eval_at_rational(poly, hi).sign_of_real()?;
            return Ok(usize::from(a != b && a != Sign::Zero && b != Sign::Zero));
        }
        if !interval_poly(poly, &x).contains_zero() {
            return Ok(0);
        }
        if let Some(t) = poly.iter().map(|c| c.tower.clone()).max_by_key(|t| t.depth()) {
            t.refine_all();
        }
    }
    let mid = (lo + hi) / Rational::from_integer(2.into());
    if eval_at_rational(poly, &mid).is_zero() {
        return Err(Error::InvalidGenerator("rational root inside interval".into()));
    }
    Ok(count_roots_refining(poly, lo, &mid, depth + 1)?
        + count_roots_refining(poly, &mid, hi, depth + 1)?)
}

#[derive(Clone, Debug)]
struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    fn point(r: Rational) -> Self {
        Interval { lo: r.clone(), hi: r }
    }
    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
    fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().expect("nonempty").clone();
        let hi = c.iter().max().expect("nonempty").clone();
        Interval { lo, hi }
    }
    fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }
}

fn interval_poly(poly: &[AlgebraicScalar], x: &(Rational, Rational)) -> Interval {
    let xi = Interval { lo: x.0.clone(), hi: x.1.clone() };
    let mut acc = Interval::point(Rational::zero());
    for c in poly.iter().rev() {
        acc = acc.mul(&xi).add(&c.interval());
    }
    acc
}

fn rep_zero(level: usize) -> Rep {
    if level == 0 {
        Rep::Base(GaussianRational::zero())
    } else {
        Rep::Ext(Vec::new())
    }
}

fn rep_one(level: usize) -> Rep {
    if level == 0 {
        Rep::Base(GaussianRational::one())
    } else {
        Rep::Ext(vec![rep_one(level - 1)])
    }
}

impl Rep {
    fn is_zero(&self) -> bool {
        match self {
            Rep::Base(g) => g.is_zero(),
            Rep::Ext(v) => v.is_empty(),
        }
    }

    fn coeffs(&self) -> &[Rep] {
        match self {
            Rep::Ext(v) => v,
            Rep::Base(_) => unreachable!("coefficients of a base element"),
        }
    }
}

fn trim_reps(v: &mut Vec<Rep>) {
    while v.last().is_some_and(|r| r.is_zero()) {
        v.pop();
    }
}

fn r_add(t: &Tower, a: &Rep, b: &Rep) -> Rep {
    match (a, b) {
        (Rep::Base(x), Rep::Base(y)) => Rep::Base(x.add(y)),
        (Rep::Ext(x), Rep::Ext(y)) => {
            let p = t.parent();
            let n = x.len().max(y.len());
            let mut out: Vec<Rep> = (0..n)
                .map(|k| match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => r_add(&p, u, v),
                    (Some(u), None) => u.clone(),
                    (None, Some(v)) => v.clone(),
                    (None, None) => unreachable!(),
                })
                .collect();
            trim_reps(&mut out);
            Rep::Ext(out)
        }
        _ => unreachable!("mixed levels"),
    }
}

fn r_neg(a: &Rep) -> Rep {
    match a {
        Rep::Base(x) => Rep::Base(x.neg()),
        Rep::Ext(v) => Rep::Ext(v.iter().map(r_neg).collect()),
    }
}

fn r_conj(a: &Rep) -> Rep {
    match a {
        Rep::Base(x) => Rep::Base(x.conj()),
        Rep::Ext(v) => Rep::Ext(v.iter().map(r_conj).collect()),
    }
}

fn r_mul(t: &Tower, a: &Rep, b: &Rep) -> Rep {
    match (a, b) {
        (Rep::Base(x), Rep::Base(y)) => Rep::Base(x.mul(y)),
        (Rep::Ext(x), Rep::Ext(y)) => {
            if x.is_empty() || y.is_empty() {
                return Rep::Ext(Vec::new());
            }
            let p = t.parent();
            let lvl = p.depth();
            let mut out = vec![rep_zero(lvl); x.len() + y.len() - 1];
            for (i, u) in x.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (j, v) in y.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    out[i + j] = r_add(&p, &out[i + j], &r_mul(&p, u, v));
                }
            }
            let m = &t.node().min_poly;
            let d = m.len() - 1;
            for k in (d..out.len()).rev() {
                let c = std::mem::replace(&mut out[k], rep_zero(lvl));
                if c.is_zero() {
                    continue;
                }
                for (i, mi) in m.iter().enumerate().take(d) {
                    let idx = k - d + i;
                    out[idx] = r_add(&p, &out[idx], &r_neg(&r_mul(&p, &c, mi)));
                }
            }
            trim_reps(&mut out);
            Rep::Ext(out)
        }
        _ => unreachable!("mixed levels"),
    }
}

/// An element of a real number-field tower over ℚ(i).
#[derive(Clone, Debug)]
pub struct AlgebraicScalar {
    tower: Tower,
    rep: Rep,
}

impl AlgebraicScalar {
    /// Demotes to the smallest level containing the value.
    fn canonical(mut tower: Tower, mut rep: Rep) -> Self {
        while tower.depth() > 0 {
            match &rep {
                Rep::Ext(v) if v.len() <= 1 => {
                    let lower = tower.depth() - 1;
                    rep = v.first().cloned().unwrap_or_else(|| rep_zero(lower));
                    tower = tower.parent();
                }
                _ => break,
            }
        }
        AlgebraicScalar { tower, rep }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn gaussian(g: GaussianRational) -> Self {
        AlgebraicScalar { tower: Tower::base(), rep: Rep::Base(g) }
    }

    /// Representation lifted to the level of `target`; `target` must extend
    /// this element's tower.
    fn rep_at(&self, target: &Tower) -> Rep {
        let mut rep = self.rep.clone();
        for _ in self.tower.depth()..target.depth() {
            rep = if rep.is_zero() { Rep::Ext(Vec::new()) } else { Rep::Ext(vec![rep]) };
        }
        rep
    }

    /// The same value viewed in `target`, when `target` extends its tower.
    pub fn lift_to(&self, target: &Tower) -> Option<AlgebraicScalar> {
        if !self.tower.is_prefix_of(target) {
            return None;
        }
        Some(AlgebraicScalar { tower: target.clone(), rep: self.rep_at(target) })
    }

    fn common(&self, other: &AlgebraicScalar) -> Result<Tower> {
        if self.tower.is_prefix_of(&other.tower) {
            Ok(other.tower.clone())
        } else if other.tower.is_prefix_of(&self.tower) {
            Ok(self.tower.clone())
        } else {
            Err(Error::IncompatibleTowers)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let t = self.common(o)?;
        Ok(Self::canonical(t.clone(), r_add(&t, &self.rep_at(&t), &o.rep_at(&t))))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let t = self.common(o)?;
        Ok(Self::canonical(t.clone(), r_mul(&t, &self.rep_at(&t), &o.rep_at(&t))))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        self.try_mul(&inv)
    }

    /// Coefficients in the top generator of this element's own tower.
    fn top_coeffs(&self) -> Vec<AlgebraicScalar> {
        let p = self.tower.parent();
        self.rep
            .coeffs()
            .iter()
            .map(|r| AlgebraicScalar::canonical(p.clone(), r.clone()))
            .collect()
    }

    fn interval(&self) -> Interval {
        interval_rep(&self.tower, &self.rep)
    }

    /// Exact sign of a real element.
    pub fn sign_of_real(&self) -> Result<Sign> {
        if self.rep.is_zero() {
            return Ok(Sign::Zero);
        }
        if self.conj() != *self {
            return Err(Error::NotReal(self.to_string()));
        }
        loop {
            let iv = self.interval();
            if iv.lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if iv.hi.is_negative() {
                return Ok(Sign::Negative);
            }
            self.tower.refine_all();
        }
    }

    /// Rational enclosure `[lo, hi]` of a real element.
    pub fn enclosure(&self) -> (Rational, Rational) {
        let iv = self.interval();
        (iv.lo, iv.hi)
    }

    /// Enclosure no wider than `width`.
    pub fn enclosure_within(&self, width: &Rational) -> (Rational, Rational) {
        loop {
            let iv = self.interval();
            if &(&iv.hi - &iv.lo) <= width {
                return (iv.lo, iv.hi);
            }
            self.tower.refine_all();
        }
    }

    /// Flattened terms `(coefficient, power of i, generator exponents)`.
    fn flat_terms(&self) -> Vec<(Rational, Vec<usize>)> {
        let mut out = Vec::new();
        flatten(&self.rep, &mut Vec::new(), &mut out);
        out
    }

    /// Canonical string used to order residues deterministically.
    pub fn canonical_key(&self) -> String {
        self.to_string()
    }
}

fn interval_rep(t: &Tower, rep: &Rep) -> Interval {
    match rep {
        Rep::Base(g) => Interval::point(g.re.clone()),
        Rep::Ext(v) => {
            let (lo, hi) = t.interval();
            let x = Interval { lo, hi };
            let p = t.parent();
            let mut acc = Interval::point(Rational::zero());
            for c in v.iter().rev() {
                acc = acc.mul(&x).add(&interval_rep(&p, c));
            }
            acc
        }
    }
}

/// `exps[0]` is the power of i, `exps[k]` the power of αₖ.
fn flatten(rep: &Rep, prefix: &mut Vec<usize>, out: &mut Vec<(Rational, Vec<usize>)>) {
    match rep {
        Rep::Base(g) => {
            for (c, e) in [(&g.re, 0usize), (&g.im, 1)] {
                if !c.is_zero() {
                    let mut ex = vec![e];
                    ex.extend(prefix.iter().rev());
                    out.push((c.clone(), ex));
                }
            }
        }
        Rep::Ext(v) => {
            for (k, c) in v.iter().enumerate() {
                prefix.push(k);
                flatten(c, prefix, out);
                prefix.pop();
            }
        }
    }
}

fn push_term(out: &mut String, coeff: &str, compound: bool, mono: &str) {
    if mono.is_empty() {
        if compound {
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(coeff);
        } else {
            if !out.is_empty() && !coeff.starts_with('-') {
                out.push('+');
            }
            out.push_str(coeff);
        }
        return;
    }
    if compound {
        if !out.is_empty() {
            out.push('+');
        }
        out.push('(');
        out.push_str(coeff);
        out.push_str(")*");
    } else if coeff == "1" {
        if !out.is_empty() {
            out.push('+');
        }
    } else if coeff == "-1" {
        out.push('-');
    } else {
        if !out.is_empty() && !coeff.starts_with('-') {
            out.push('+');
        }
        out.push_str(coeff);
        out.push('*');
    }
    out.push_str(mono);
}

pub(crate) fn format_term(out: &mut String, coeff: &str, compound: bool, mono: &str) {
    push_term(out, coeff, compound, mono)
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        match self.common(other) {
            Ok(t) => self.rep_at(&t) == other.rep_at(&t),
            Err(_) => self.rep.is_zero() && other.rep.is_zero(),
        }
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tower.depth() == 0 {
            if let Rep::Base(g) = &self.rep {
                return write!(f, "{g}");
            }
        }
        let names = self.tower.generator_names();
        let mut terms = self.flat_terms();
        terms.sort_by(|a, b| {
            let ka: Vec<usize> = a.1.iter().rev().copied().collect();
            let kb: Vec<usize> = b.1.iter().rev().copied().collect();
            ka.cmp(&kb)
        });
        let mut s = String::new();
        for (c, ex) in terms {
            let mut factors = Vec::new();
            if ex[0] == 1 {
                factors.push("i".to_string());
            }
            for (k, &e) in ex.iter().enumerate().skip(1) {
                match e {
                    0 => {}
                    1 => factors.push(names[k - 1].clone()),
                    _ => factors.push(format!("{}^{e}", names[k - 1])),
                }
            }
            push_term(&mut s, &fmt_rational(&c), false, &factors.join("*"));
        }
        if s.is_empty() {
            s.push('0');
        }
        write!(f, "{s}")
    }
}

impl Field for AlgebraicScalar {
    fn zero() -> Self {
        Self::gaussian(GaussianRational::zero())
    }
    fn one() -> Self {
        Self::gaussian(GaussianRational::one())
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("compatible towers")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.try_add(&rhs.neg()).expect("compatible towers")
    }
    fn mul(&self, rhs: &Self) -> Self {
        if let (Rep::Base(a), Rep::Base(b)) = (&self.rep, &rhs.rep) {
            return Self::gaussian(a.mul(b));
        }
        self.try_mul(rhs).expect("compatible towers")
    }
    fn neg(&self) -> Self {
        AlgebraicScalar { tower: self.tower.clone(), rep: r_neg(&self.rep) }
    }
    fn inv(&self) -> Option<Self> {
        if self.rep.is_zero() {
            return None;
        }
        if let Rep::Base(g) = &self.rep {
            return g.inv().map(Self::gaussian);
        }
        // extended Euclid against the minimal polynomial of the top level
        let a = self.top_coeffs();
        let m = self.tower.min_poly();
        let (g, s, _) = upoly::xgcd(&a, &m);
        debug_assert!(g.len() == 1, "minimal polynomial is irreducible");
        let gen = self.tower.generator();
        let mut acc = AlgebraicScalar::zero();
        for c in s.iter().rev() {
            acc = acc.mul(&gen).add(c);
        }
        Some(acc)
    }
    fn conj(&self) -> Self {
        AlgebraicScalar { tower: self.tower.clone(), rep: r_conj(&self.rep) }
    }
    fn from_gaussian(g: &GaussianRational) -> Self {
        Self::gaussian(g.clone())
    }
    fn is_compound(&self) -> bool {
        self.flat_terms().len() > 1
    }
    fn as_gaussian(&self) -> Option<GaussianRational> {
        match (&self.rep, self.tower.depth()) {
            (Rep::Base(g), 0) => Some(g.clone()),
            _ => None,
        }
    }
}

impl AlgebraicScalar {
    pub fn is_one_value(&self) -> bool {
        matches!(&self.rep, Rep::Base(g) if g.is_one())
    }

    /// Real part of the rational constant, when the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_gaussian().filter(|g| g.im.is_zero()).map(|g| g.re)
    }

    pub fn rational(r: Rational) -> Self {
        Self::gaussian(GaussianRational::real(r))
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Coefficients with respect to the top generator of `t`, which must
    /// extend this element's tower.
    pub fn coeffs_in(&self, t: &Tower) -> Result<Vec<AlgebraicScalar>> {
        let lifted = self.lift_to(t).ok_or(Error::IncompatibleTowers)?;
        if t.depth() == 0 {
            return Ok(vec![lifted]);
        }
        Ok(lifted.top_coeffs())
    }
}

impl From<GaussianRational> for AlgebraicScalar {
    fn from(g: GaussianRational) -> Self {
        Self::gaussian(g)
    }
}
