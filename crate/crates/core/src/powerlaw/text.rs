//! Canonical text form of a [`PowerSum`]: `3.5*x^0.5*t^-0.25 + 1*t^2`.
//!
//! Terms are printed by descending `x` exponent, then descending `t`
//! exponent. Coefficients carry 16 significant digits; exponents are printed
//! in their shortest round-trip form so re-parsing recovers them exactly.

use std::fmt;
use std::str::FromStr;

use super::{Monomial, PowerSum};
use crate::error::Error;
use crate::scalar::Scalar;

/// Formats a coefficient rounded to 16 significant digits.
pub fn format_coeff(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{v:.15e}").parse().unwrap_or(v);
    format_plain(rounded)
}

/// Shortest round-trip decimal, switching to exponent notation for very
/// large or very small magnitudes.
pub fn format_plain(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl<T: Scalar> fmt::Display for PowerSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, m) in self.terms().iter().rev().enumerate() {
            let c = m.coeff.as_f64();
            match (i, c < 0.0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&format_coeff(c.abs()))?;
            let (a, b) = (m.x_exp.as_f64(), m.t_exp.as_f64());
            if a != 0.0 {
                write!(f, "*x^{}", format_plain(a))?;
            }
            if b != 0.0 {
                write!(f, "*t^{}", format_plain(b))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<f64, Error> {
        self.skip_ws();
        let bytes = self.rest().as_bytes();
        let mut end = 0;
        if matches!(bytes.first(), Some(b'+' | b'-')) {
            end += 1;
        }
        let digits_start = end;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end == digits_start {
            return Err(self.err("expected a number"));
        }
        if end < bytes.len() && matches!(bytes[end], b'e' | b'E') {
            let mut k = end + 1;
            if k < bytes.len() && matches!(bytes[k], b'+' | b'-') {
                k += 1;
            }
            let exp_digits = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            if k > exp_digits {
                end = k;
            }
        }
        let text = &self.rest()[..end];
        let v: f64 = text.parse().map_err(|_| self.err("malformed number"))?;
        if !v.is_finite() {
            return Err(self.err("non-finite number"));
        }
        self.pos += end;
        Ok(v)
    }

    fn exponent(&mut self) -> Result<f64, Error> {
        if !self.eat('^') {
            return Ok(1.0);
        }
        if self.eat('(') {
            let v = self.number()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            Ok(v)
        } else {
            self.number()
        }
    }

    fn factor(&mut self, m: &mut Monomial<f64>) -> Result<(), Error> {
        self.skip_ws();
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                m.x_exp += self.exponent()?;
            }
            Some('t') => {
                self.pos += 1;
                m.t_exp += self.exponent()?;
            }
            Some(c) if c.is_ascii_digit() || c == '.' => m.coeff *= self.number()?,
            _ => return Err(self.err("expected a number, 'x' or 't'")),
        }
        Ok(())
    }

    fn term(&mut self, sign: f64) -> Result<Monomial<f64>, Error> {
        let mut m = Monomial::new(sign, 0.0, 0.0);
        self.factor(&mut m)?;
        while self.eat('*') {
            self.factor(&mut m)?;
        }
        Ok(m)
    }

    fn sum(&mut self) -> Result<Vec<Monomial<f64>>, Error> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        loop {
            terms.push(self.term(sign)?);
            self.skip_ws();
            if self.eat('+') {
                sign = 1.0;
            } else if self.eat('-') {
                sign = -1.0;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(terms)
    }
}

impl<T: Scalar> FromStr for PowerSum<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser { src: s, pos: 0 };
        let terms = p.sum()?;
        Ok(PowerSum::from_terms(terms.into_iter().map(|m| {
            Monomial::new(T::lit(m.coeff), T::lit(m.x_exp), T::lit(m.t_exp))
        })))
    }
}
