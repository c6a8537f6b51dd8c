//! Infix polynomial parser: `+ - * / ^`, parentheses, integer literals, and
//! implicit multiplication after a number (`3x`). Division is only by nonzero
//! constants.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::Error;
use crate::ring::{MultiPoly, PolyRing};
use crate::scalar::Field;

/// Byte offset into the parsed text and a message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

impl From<PolyParseError> for Error {
    fn from(e: PolyParseError) -> Self {
        Error::Parse(e.to_string())
    }
}

type PResult<T> = std::result::Result<T, PolyParseError>;

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
    _f: std::marker::PhantomData<F>,
}

impl<F: Field> Parser<'_, F> {
    fn err<T>(&self, at: usize, msg: impl Into<String>) -> PResult<T> {
        Err(PolyParseError {
            offset: at,
            message: msg.into(),
        })
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

    fn expr(&mut self) -> PResult<MultiPoly<F>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<MultiPoly<F>> {
        let mut acc = self.unary()?;
        loop {
            let after_number = self.pos > 0 && self.src[self.pos - 1].is_ascii_digit();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let rhs = self.unary()?;
                    if !rhs.is_constant() || rhs.is_zero() {
                        return self.err(at, "can only divide by a nonzero constant");
                    }
                    let c = rhs.leading_coeff().expect("nonzero").clone();
                    if c.is_zero() {
                        return self.err(at, "division by zero");
                    }
                    acc = acc.scale(&c.inv());
                }
                Some(c) if after_number && (c.is_ascii_alphabetic() || c == b'_' || c == b'(') => {
                    let rhs = self.power()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<MultiPoly<F>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<MultiPoly<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.err(at, "expected exponent");
            }
            let e: u32 = digits.parse().or_else(|_| self.err(at, "exponent too large"))?;
            return Ok(base.pow(e));
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

    fn atom(&mut self) -> PResult<MultiPoly<F>> {
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    let here = self.pos;
                    return self.err(here, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(MultiPoly::constant(self.ring, F::from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.var_index(name) {
                    Some(i) => Ok(MultiPoly::var(self.ring, i)),
                    None => self.err(start, format!("unknown variable '{name}'")),
                }
            }
            Some(c) => {
                let here = self.pos;
                self.err(here, format!("unexpected '{}'", c as char))
            }
            None => self.err(at.max(self.pos), "unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly<F: Field>(ring: &Arc<PolyRing>, text: &str) -> Result<MultiPoly<F>, PolyParseError> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
        _f: std::marker::PhantomData,
    };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        let here = p.pos;
        return p.err(here, format!("unexpected '{}'", c as char));
    }
    Ok(out)
}

/// Parses each string as a polynomial; panics with the offending text on failure.
/// Meant for fixtures.
pub fn polys<F: Field>(ring: &Arc<PolyRing>, texts: &[&str]) -> Vec<MultiPoly<F>> {
    texts
        .iter()
        .map(|t| parse_poly(ring, t).unwrap_or_else(|e| panic!("{t}: {e}")))
        .collect()
}
