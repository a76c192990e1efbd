//! Small arithmetic expression language over Q(s, B).
//!
//! Grammar (usual precedence, `^` takes a non-negative integer exponent):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! The identifiers `s` and `B` are the field generators; any other identifier
//! is resolved through an environment at evaluation time.

use num_bigint::BigInt;

use super::{ExactRational, Poly2, RationalFunction, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(Var),
    Symbol(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src: src.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Evaluates without an environment; only `s`, `B` and integers are allowed.
    pub fn eval_closed(&self) -> Result<RationalFunction> {
        self.eval(&|_| None, &|r| r)
    }

    /// Evaluates the tree, resolving symbols through `env` and passing every
    /// intermediate result through `simplify`.
    pub fn eval<E, S>(&self, env: &E, simplify: &S) -> Result<RationalFunction>
    where
        E: Fn(&str) -> Option<RationalFunction>,
        S: Fn(RationalFunction) -> RationalFunction,
    {
        let out = match self {
            Expr::Int(v) => RationalFunction::from_poly(Poly2::constant(ExactRational::from_integer(v.clone()))),
            Expr::Var(v) => RationalFunction::var(*v),
            Expr::Symbol(name) => env(name).ok_or_else(|| Error::UnknownSymbol(name.clone()))?,
            Expr::Neg(a) => -a.eval(env, simplify)?,
            Expr::Add(a, b) => a.eval(env, simplify)? + b.eval(env, simplify)?,
            Expr::Sub(a, b) => a.eval(env, simplify)? - b.eval(env, simplify)?,
            Expr::Mul(a, b) => a.eval(env, simplify)? * b.eval(env, simplify)?,
            Expr::Div(a, b) => a.eval(env, simplify)?.checked_div(&b.eval(env, simplify)?)?,
            Expr::Pow(a, e) => a.eval(env, simplify)?.pow(*e),
        };
        Ok(simplify(out))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == b'*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected integer exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
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
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(Expr::Int(d.parse().map_err(|_| self.error("bad integer"))?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                Ok(match name {
                    "s" => Expr::Var(Var::S),
                    "B" => Expr::Var(Var::B),
                    other => Expr::Symbol(other.to_string()),
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
