//! Expression parsing and canonical printing of rational polynomials.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::numfield::format_terms;
use crate::poly::{Poly, PolyRing};

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var { name: String, pos: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Operations needed to evaluate an [`Expr`] in some commutative ring.
pub trait ExprTarget {
    type Value: Clone;
    fn number(&self, n: &BigInt) -> Result<Self::Value>;
    fn variable(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn one(&self) -> Self::Value;
    /// Division by a value that must be an invertible constant.
    fn div(&self, a: &Self::Value, b: &Self::Value, pos: usize) -> Result<Self::Value>;
}

impl Expr {
    pub fn eval<T: ExprTarget>(&self, t: &T) -> Result<T::Value> {
        Ok(match self {
            Expr::Num(n) => t.number(n)?,
            Expr::Var { name, pos } => t.variable(name, *pos)?,
            Expr::Add(a, b) => t.add(&a.eval(t)?, &b.eval(t)?),
            Expr::Sub(a, b) => t.sub(&a.eval(t)?, &b.eval(t)?),
            Expr::Mul(a, b) => t.mul(&a.eval(t)?, &b.eval(t)?),
            Expr::Div(a, b, pos) => t.div(&a.eval(t)?, &b.eval(t)?, *pos)?,
            Expr::Neg(a) => t.neg(&a.eval(t)?),
            Expr::Pow(a, e) => {
                let base = a.eval(t)?;
                let mut acc = t.one();
                for _ in 0..*e {
                    acc = t.mul(&acc, &base);
                }
                acc
            }
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == b'+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == b'*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs), at)
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.syntax(start, "expected a non-negative integer exponent");
            }
            let e: u32 = match digits.parse() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return self.syntax(start, format!("exponent exceeds {MAX_EXPONENT}")),
            };
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = match self.peek() {
            None => return self.syntax(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[start];
        if c.is_ascii_digit() {
            let d = self.digits();
            if self.pos < self.src.len() && (self.src[self.pos] == b'.' || self.src[self.pos] == b'e') {
                return Err(Error::NonRational { pos: start });
            }
            return Ok(Expr::Num(d.parse().expect("digits parse as an integer")));
        }
        if c == b'.' {
            return Err(Error::NonRational { pos: start });
        }
        if c.is_ascii_alphabetic() {
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
            return Ok(Expr::Var { name, pos: start });
        }
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return self.syntax(self.pos, "expected ')'");
            }
            self.pos += 1;
            return Ok(inner);
        }
        self.syntax(start, format!("unexpected character '{}'", c as char))
    }
}

/// Parses an expression; the whole input must be consumed.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.syntax(p.pos, format!("unexpected character '{}'", c as char));
    }
    Ok(e)
}

struct RationalPolys {
    ring: PolyRing<Rationals>,
}

impl ExprTarget for RationalPolys {
    type Value = Poly<BigRational>;

    fn number(&self, n: &BigInt) -> Result<Self::Value> {
        Ok(self.ring.constant(BigRational::from_integer(n.clone())))
    }
    fn variable(&self, name: &str, pos: usize) -> Result<Self::Value> {
        if name == "X" {
            Ok(self.ring.x())
        } else {
            Err(Error::NonRational { pos })
        }
    }
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.ring.sub(a, b)
    }
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.ring.mul(a, b)
    }
    fn neg(&self, a: &Self::Value) -> Self::Value {
        self.ring.neg(a)
    }
    fn one(&self) -> Self::Value {
        self.ring.one()
    }
    fn div(&self, a: &Self::Value, b: &Self::Value, pos: usize) -> Result<Self::Value> {
        match b.degree() {
            None => Err(Error::Syntax { pos, msg: "division by zero".into() }),
            Some(0) => Ok(self.ring.scale(a, &b.coeffs()[0].recip())),
            Some(_) => Err(Error::Syntax { pos, msg: "division by a non-constant polynomial".into() }),
        }
    }
}

/// Parses a polynomial in `X` with rational coefficients.
pub fn parse_polynomial(text: &str) -> Result<Poly<BigRational>> {
    parse_expr(text)?.eval(&RationalPolys { ring: PolyRing::new(Rationals) })
}

/// Canonical text, e.g. `X^4 - 10*X^2 + 1` or `3/2`.
pub fn format_polynomial(p: &Poly<BigRational>) -> String {
    let terms: Vec<(BigRational, usize)> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (c.clone(), i))
        .collect();
    format_terms(&terms, "X")
}

/// Parses a rational constant such as `-3/2`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let p = parse_polynomial(text)?;
    match p.degree() {
        None => Ok(BigRational::zero()),
        Some(0) => Ok(p.coeffs()[0].clone()),
        Some(_) => Err(Error::Syntax { pos: 0, msg: "expected a constant".into() }),
    }
}
