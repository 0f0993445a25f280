use std::collections::HashMap;

use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::{Error, Field, Result};

/// Recursive-descent parser for polynomial expressions such as
/// `3/2*u^-1*v + (u+1)^2`. Named parameters are substituted as constants.
pub struct Parser<'a, F> {
    ring: &'a Ring,
    params: &'a HashMap<String, F>,
    chars: Vec<char>,
    pos: usize,
}

/// Parses an expression in `ring` without parameters.
pub fn parse_polynomial<F: Field>(ring: &Ring, src: &str) -> Result<Polynomial<F>> {
    let params = HashMap::new();
    Parser::new(ring, &params, src).parse()
}

impl<'a, F: Field> Parser<'a, F> {
    pub fn new(ring: &'a Ring, params: &'a HashMap<String, F>, src: &str) -> Self {
        Parser { ring, params, chars: src.chars().collect(), pos: 0 }
    }

    pub fn parse(mut self) -> Result<Polynomial<F>> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.error(format!("unexpected `{}`", self.chars[self.pos])));
        }
        Ok(p)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let start = self.pos;
                    let d = self.factor()?;
                    let inv = d.unit_inverse().ok_or(Error::Parse {
                        column: start + 1,
                        message: format!("cannot divide by `{d}`"),
                    })?;
                    acc = acc * inv;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let start = self.pos;
        let k = self.exponent()?;
        base.powi(k).map_err(|_| Error::Parse {
            column: start + 1,
            message: format!("negative power of non-unit `{base}`"),
        })
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
        }
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.error("expected integer exponent"));
        }
        let k: i64 = digits.parse().map_err(|_| self.error("exponent too large"))?;
        if k > 10_000 {
            return Err(self.error("exponent too large"));
        }
        if paren {
            if self.peek() != Some(')') {
                return Err(self.error("expected `)`"));
            }
            self.pos += 1;
        }
        Ok(sign * k)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && pred(self.chars[self.pos]) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.take_while(|c| c.is_ascii_digit());
                let v = F::parse_integer(&digits)
                    .ok_or(Error::Parse { column: start + 1, message: format!("bad number `{digits}`") })?;
                Ok(Polynomial::constant(self.ring, v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                if let Some(i) = self.ring.index_of(&name) {
                    Ok(Polynomial::var(self.ring, i))
                } else if let Some(v) = self.params.get(&name) {
                    Ok(Polynomial::constant(self.ring, v.clone()))
                } else {
                    Err(Error::Parse { column: start + 1, message: format!("unknown identifier `{name}`") })
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
