//! Text form of polynomials: `3*x^4 - x^2 + 7`.
//!
//! Terms are `c`, `x`, `c*x`, `x^e` or `c*x^e` joined by `+`/`-` with
//! arbitrary whitespace. Formatting is canonical: descending degree, zero
//! terms omitted, `x^1` printed as `x`, unit coefficients elided.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{IntPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParsePolyError> {
        Err(ParsePolyError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
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

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn exponent(&mut self) -> Result<usize, ParsePolyError> {
        self.skip_ws();
        if !self.eat(b'^') {
            return Ok(1);
        }
        self.skip_ws();
        match self.digits() {
            Some(d) => d.parse().or_else(|_| self.error("exponent too large")),
            None => self.error("expected exponent after '^'"),
        }
    }

    /// One term without its joining operator; returns (coefficient, degree).
    fn term(&mut self) -> Result<(BigInt, usize), ParsePolyError> {
        self.skip_ws();
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let sign = |c: BigInt| if negative { -c } else { c };

        if self.eat(b'x') {
            let e = self.exponent()?;
            return Ok((sign(BigInt::one()), e));
        }
        let Some(d) = self.digits() else {
            return self.error("expected a coefficient or 'x'");
        };
        let c = sign(d.parse::<BigInt>().unwrap());
        let save = self.pos;
        self.skip_ws();
        if self.eat(b'*') {
            self.skip_ws();
            if !self.eat(b'x') {
                return self.error("expected 'x' after '*'");
            }
            let e = self.exponent()?;
            return Ok((c, e));
        }
        self.pos = save;
        Ok((c, 0))
    }

    fn poly(&mut self) -> Result<IntPoly, ParsePolyError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut add = |c: BigInt, e: usize| {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c;
        };

        self.skip_ws();
        if self.peek().is_none() {
            return self.error("empty polynomial");
        }
        let (c, e) = self.term()?;
        add(c, e);
        loop {
            self.skip_ws();
            let negative = match self.peek() {
                None => break,
                Some(b'+') => false,
                Some(b'-') => true,
                Some(_) => return self.error("expected '+' or '-'"),
            };
            self.pos += 1;
            let (c, e) = self.term()?;
            add(if negative { -c } else { c }, e);
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// Parses the text grammar into an [`IntPoly`].
pub fn poly_parse(text: &str) -> Result<IntPoly, ParsePolyError> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
    }
    .poly()
}

impl FromStr for IntPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(poly_parse(s)?)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = magnitude.is_one();
            match e {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        write!(f, "{magnitude}*")?;
                    }
                    if e == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
