//! Tokenizer and parser for the shared polynomial/scalar string grammar.
//!
//! Accepted: integers, rational literals `a/b`, the imaginary unit `i`,
//! identifiers, `+ - * ^`, and parentheses. Division is only allowed between
//! two integer literals.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    I,
    Var { name: String, column: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse { column, message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        };
        out.push((tok, col));
        k += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        if let Some(Tok::Slash) = self.peek() {
            return Err(err(self.col(), "division is only allowed inside rational literals `a/b`"));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let col = self.col();
            match self.bump() {
                Some((Tok::Int(n), _)) => {
                    let e: u32 = u32::try_from(&n).map_err(|_| err(col, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(err(col, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.bump() {
            Some((Tok::Int(n), _)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dcol = self.col();
                    match self.bump() {
                        Some((Tok::Int(d), _)) => {
                            if d == BigInt::from(0) {
                                return Err(err(dcol, "zero denominator"));
                            }
                            Ok(Expr::Num(Rational::new(n, d)))
                        }
                        _ => Err(err(dcol, "expected an integer denominator")),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(n)))
                }
            }
            Some((Tok::Ident(name), _)) => {
                if name == "i" {
                    Ok(Expr::I)
                } else {
                    Ok(Expr::Var { name, column: col })
                }
            }
            Some((Tok::LParen, _)) => {
                let e = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(e),
                    _ => Err(err(col, "unbalanced parenthesis")),
                }
            }
            Some((t, c)) => Err(err(c, format!("unexpected token {t:?}"))),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(err(1, "empty expression"));
    }
    let end_col = src.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end_col };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(e)
}

/// Values an [`Expr`] can be evaluated into.
pub trait ExprValue: Sized {
    fn constant(g: &GaussianRational) -> Self;
    fn e_add(&self, o: &Self) -> Self;
    fn e_sub(&self, o: &Self) -> Self;
    fn e_mul(&self, o: &Self) -> Self;
    fn e_neg(&self) -> Self;
    fn e_one() -> Self {
        Self::constant(&GaussianRational::from_i64(1))
    }
}

impl Expr {
    pub fn eval<T: ExprValue>(&self, resolve: &dyn Fn(&str) -> Option<T>) -> Result<T> {
        Ok(match self {
            Expr::Num(r) => T::constant(&GaussianRational::real(r.clone())),
            Expr::I => T::constant(&GaussianRational::i()),
            Expr::Var { name, column } => {
                resolve(name).ok_or_else(|| err(*column, format!("unknown name `{name}`")))?
            }
            Expr::Add(a, b) => a.eval(resolve)?.e_add(&b.eval(resolve)?),
            Expr::Sub(a, b) => a.eval(resolve)?.e_sub(&b.eval(resolve)?),
            Expr::Mul(a, b) => a.eval(resolve)?.e_mul(&b.eval(resolve)?),
            Expr::Neg(a) => a.eval(resolve)?.e_neg(),
            Expr::Pow(a, e) => {
                let base = a.eval(resolve)?;
                let mut acc = T::e_one();
                for _ in 0..*e {
                    acc = acc.e_mul(&base);
                }
                acc
            }
        })
    }
}
