//! Problem files and their conversion into algebraic objects.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::factor::rational_part;
use crate::groebner::Ideal;
use crate::normalize::PresentationJson;
use crate::poly::{Block, Matrix, MultiPoly, RationalFunction, VarSet};
use crate::scalar::{AlgebraicScalar, Field, GaussianRational, Rational, Tower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Split,
    Diagonalize,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Split => "split",
            Task::Diagonalize => "diagonalize",
        }
    }
}

impl std::str::FromStr for Task {
    type Err = Error;
    fn from_str(s: &str) -> Result<Task> {
        match s {
            "split" => Ok(Task::Split),
            "diagonalize" => Ok(Task::Diagonalize),
            _ => Err(Error::Parse { column: 0, message: format!("unknown task `{s}`") }),
        }
    }
}

/// A real algebraic constant usable in matrix entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantJson {
    pub name: String,
    /// Minimal polynomial in `name`, over the previously declared constants.
    pub min_poly: String,
    /// Isolating interval `[lo, hi]` with rational endpoints.
    pub interval: [String; 2],
}

/// Input file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub variables: Vec<String>,
    #[serde(default)]
    pub variety: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    #[serde(default)]
    pub task: Option<Task>,
    #[serde(default)]
    pub order: Option<u32>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub presentation: Option<PresentationJson>,
    #[serde(default)]
    pub prime_index: Option<usize>,
    #[serde(default)]
    pub constants: Vec<ConstantJson>,
}

impl Problem {
    pub fn from_json(src: &str) -> Result<Problem> {
        serde_json::from_str(src).map_err(|e| Error::Parse {
            column: e.column(),
            message: format!("line {}: {e}", e.line()),
        })
    }
}

/// A problem with every string parsed.
#[derive(Clone, Debug)]
pub struct ParsedProblem {
    pub base: Arc<VarSet>,
    pub constants: Tower,
    pub variety: Ideal<Rational>,
    pub matrix: Matrix<RationalFunction<AlgebraicScalar>>,
}

impl ParsedProblem {
    /// The matrix with coefficients in `ℚ(i)`, when no tower constant
    /// survives in its entries.
    pub fn gaussian_matrix(&self) -> Result<Matrix<RationalFunction<GaussianRational>>> {
        self.matrix.try_map(|e| {
            let to_g = |p: &MultiPoly<AlgebraicScalar>| {
                p.try_map_coeffs(|c| c.as_gaussian())
                    .ok_or_else(|| Error::Unsupported(format!("entry {e} has coefficients outside ℚ(i)")))
            };
            RationalFunction::new(to_g(e.num())?, to_g(e.den())?)
        })
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Parse { column: 0, message: format!("`{s}` is not a rational number") })
}

fn build_tower(constants: &[ConstantJson]) -> Result<Tower> {
    let mut tower = Tower::base();
    for c in constants {
        let v = VarSet::of_block(&[c.name.as_str()], Block::Aux)?;
        let t = tower.clone();
        let p = MultiPoly::<AlgebraicScalar>::parse_with(&c.min_poly, &v, &|n| t.generator_named(n))?;
        let coeffs: Vec<AlgebraicScalar> = p.to_univariate(0).iter().map(|q| q.constant_term()).collect();
        let lo = parse_rational(&c.interval[0])?;
        let hi = parse_rational(&c.interval[1])?;
        tower = tower.adjoin(&c.name, &coeffs, lo, hi)?;
    }
    Ok(tower)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { column, message } => Error::Parse { column: column + by, message },
        e => e,
    }
}

/// Index of the fraction bar in `(num)/(den)` or `(num)/atom`.
fn fraction_bar(src: &str) -> Option<usize> {
    let bytes = src.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 => {
                let before = src[..i].trim_end();
                let after = src[i + 1..].trim_start();
                if before.ends_with(')') || after.starts_with('(') {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn is_group(s: &str) -> bool {
    let s = s.trim();
    if !s.starts_with('(') || !s.ends_with(')') {
        return false;
    }
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 < s.len() {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

fn is_atom(s: &str) -> bool {
    let s = s.trim();
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '^')
}

/// Parses a matrix entry: a polynomial, or `(num)/(den)` where the
/// denominator may also be a single number or name.
pub fn parse_entry(
    src: &str,
    vars: &Arc<VarSet>,
    tower: &Tower,
) -> Result<RationalFunction<AlgebraicScalar>> {
    let lookup = |n: &str| tower.generator_named(n);
    let poly = |s: &str, at: usize| MultiPoly::<AlgebraicScalar>::parse_with(s, vars, &lookup).map_err(|e| shift(e, at));
    match fraction_bar(src) {
        None => Ok(RationalFunction::from_poly(poly(src, 0)?)),
        Some(bar) => {
            let (num, den) = (&src[..bar], &src[bar + 1..]);
            if !is_group(num) || !(is_group(den) || is_atom(den)) {
                return Err(Error::Parse {
                    column: bar + 1,
                    message: "a fraction must be written `(num)/(den)`".into(),
                });
            }
            let n = poly(num, 0)?;
            let d = poly(den, bar + 1)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            RationalFunction::new(n, d)
        }
    }
}

/// Parses every string of a problem and checks the structural conditions:
/// square matrix, origin on the variety, entries regular at the origin.
pub fn parse_problem(p: &Problem) -> Result<ParsedProblem> {
    let base = VarSet::of_block(&p.variables, Block::Base)?;
    let constants = build_tower(&p.constants)?;
    let n = p.matrix.len();
    if n == 0 {
        return Err(Error::NonSquare { rows: 0, cols: 0 });
    }
    let mut rows = Vec::with_capacity(n);
    for row in &p.matrix {
        if row.len() != n {
            return Err(Error::NonSquare { rows: n, cols: row.len() });
        }
        let r = rows.len() + 1;
        let parsed = row.iter().enumerate().map(|(c, s)| {
            parse_entry(s, &base, &constants).map_err(|e| match e {
                Error::Parse { column, message } => {
                    Error::Parse { column, message: format!("matrix entry ({r}, {}): {message}", c + 1) }
                }
                e => e,
            })
        });
        rows.push(parsed.collect::<Result<Vec<_>>>()?);
    }
    let matrix = Matrix::from_rows(rows)?;
    for e in matrix.entries() {
        if !e.is_local() {
            return Err(Error::NotLocal(e.to_string()));
        }
    }
    let mut gens = Vec::new();
    for s in &p.variety {
        let g = MultiPoly::<GaussianRational>::parse(s, &base)?;
        let g = rational_part(&g)?;
        if !g.constant_term().is_zero() {
            return Err(Error::Inconsistent(format!("the origin is not on the variety: {g}")));
        }
        gens.push(g);
    }
    Ok(ParsedProblem { base: base.clone(), constants, variety: Ideal::new(&base, gens), matrix })
}
