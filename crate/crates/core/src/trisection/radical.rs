//! Nested-radical expressions: parsing and evaluation in `f64` or [`BigReal`].
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exponent := int | '(' int '/' int ')'
//! atom   := int | '(' expr ')' | ('sqrt' | 'cbrt') '(' expr ')'
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::recognize::BigReal;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// `base^(p/q)` with `q ≥ 1`.
    Pow(Box<Expr>, i64, u32),
}

/// Arithmetic needed to evaluate an [`Expr`].
pub trait RadicalField: Clone {
    fn from_int(v: i64, prec: u32) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    /// Real `n`-th root; fails for negative radicands of even roots.
    fn root(&self, n: u32) -> Result<Self>;
    fn powi(&self, n: i64) -> Result<Self>;
}

fn negative_radicand(value: f64, n: u32) -> Error {
    Error::BranchFailure {
        what: "radical evaluation",
        detail: format!("root of index {n} of negative radicand {value:e}"),
    }
}

impl RadicalField for f64 {
    fn from_int(v: i64, _: u32) -> Self {
        v as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if *o == 0.0 {
            return Err(Error::SingularDenominator { what: "radical evaluation", magnitude: 0.0 });
        }
        Ok(self / o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn root(&self, n: u32) -> Result<Self> {
        match n {
            2 if *self < 0.0 => Err(negative_radicand(*self, n)),
            2 => Ok(self.sqrt()),
            3 => Ok(self.cbrt()),
            _ if *self < 0.0 && n.is_multiple_of(2) => Err(negative_radicand(*self, n)),
            _ if *self < 0.0 => Ok(-(-self).powf(1.0 / f64::from(n))),
            _ => Ok(self.powf(1.0 / f64::from(n))),
        }
    }
    fn powi(&self, n: i64) -> Result<Self> {
        Ok(f64::powi(*self, n as i32))
    }
}

impl RadicalField for BigReal {
    fn from_int(v: i64, prec: u32) -> Self {
        BigReal::from_int(v, prec)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn root(&self, n: u32) -> Result<Self> {
        if self.is_negative() && n.is_multiple_of(2) {
            return Err(negative_radicand(self.to_f64(), n));
        }
        self.nth_root(n)
    }
    fn powi(&self, n: i64) -> Result<Self> {
        BigReal::powi(self, n)
    }
}

impl Expr {
    /// Evaluates with principal real roots; `prec` is ignored by `f64`.
    pub fn eval<F: RadicalField>(&self, prec: u32) -> Result<F> {
        Ok(match self {
            Expr::Int(v) => F::from_int(*v, prec),
            Expr::Neg(a) => a.eval::<F>(prec)?.neg(),
            Expr::Add(a, b) => a.eval::<F>(prec)?.add(&b.eval(prec)?),
            Expr::Sub(a, b) => a.eval::<F>(prec)?.sub(&b.eval(prec)?),
            Expr::Mul(a, b) => a.eval::<F>(prec)?.mul(&b.eval(prec)?),
            Expr::Div(a, b) => a.eval::<F>(prec)?.div(&b.eval(prec)?)?,
            Expr::Pow(a, p, q) => a.eval::<F>(prec)?.root(*q)?.powi(*p)?,
        })
    }

    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, text };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.text))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let (p, q) = if self.eat(b'(') {
            let p = self.int()?;
            self.expect(b'/')?;
            let q = self.int()?;
            self.expect(b')')?;
            (p, q)
        } else {
            (self.int()?, 1)
        };
        let q = u32::try_from(q).ok().filter(|&q| q >= 1).ok_or_else(|| self.error("bad root index"))?;
        Ok(Expr::Pow(Box::new(base), p, q))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| self.error("expected an integer"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.int()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let q = match &self.text[start..self.pos] {
                    "sqrt" => 2,
                    "cbrt" => 3,
                    _ => {
                        self.pos = start;
                        return Err(self.error("unknown function"));
                    }
                };
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::Pow(Box::new(e), 1, q))
            }
            _ => Err(self.error("unexpected input")),
        }
    }
}

/// Parses `key = expr` lines; `#` starts a comment.
pub fn parse_table(text: &str) -> Result<BTreeMap<String, Expr>> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, expr) =
            line.split_once('=').ok_or_else(|| Error::Parse(format!("line {}: expected 'key = expr'", n + 1)))?;
        out.insert(key.trim().to_string(), Expr::parse(expr)?);
    }
    Ok(out)
}
