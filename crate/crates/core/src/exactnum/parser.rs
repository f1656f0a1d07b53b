//! Text form for cyclotomic field elements.
//!
//! Grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [rational '*'] atom
//! atom     := rational | 'z' ['^' nonneg-int] | '(' expr ')'
//! rational := int ['/' positive-int]
//! ```
//!
//! The symbol `z` always denotes `zeta` of the declared order. The serializer
//! emits descending powers of `z` in the same grammar, so parse, format and
//! re-parse reach a fixed point.

use super::cyclotomic::Cyclotomic;
use super::rational::Rational;
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Parse failure with the byte offset where it happened.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Parse an expression in the symbol `z` (denoting `zeta_order`) into
/// canonical form.
pub fn parse_cyclotomic(text: &str, order: u64) -> Result<Cyclotomic, ParseError> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        order,
    };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    order: u64,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic, ParseError> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            let sub = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else {
                break;
            };
            let t = self.term()?;
            acc = if sub { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Cyclotomic, ParseError> {
        self.skip_ws();
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let coeff = self.rational()?;
            self.skip_ws();
            if self.eat(b'*') {
                let atom = self.atom()?;
                Ok(atom.mul_scalar(&coeff))
            } else {
                Ok(Cyclotomic::from_rational(self.order, coeff))
            }
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Cyclotomic, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                let exp = if self.eat(b'^') {
                    self.nonneg_int()?
                } else {
                    BigInt::one()
                };
                let folded: u64 = (&exp % BigInt::from(self.order))
                    .try_into()
                    .expect("nonnegative residue fits u64");
                Ok(zeta_power(self.order, folded))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let q = self.rational()?;
                Ok(Cyclotomic::from_rational(self.order, q))
            }
            _ => Err(self.err("expected rational, 'z' or '('")),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let numer = self.nonneg_int()?;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            let start = self.pos;
            let denom = self.nonneg_int()?;
            if denom.is_zero() {
                self.pos = start;
                return Err(self.err("denominator must be positive"));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn nonneg_int(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().expect("digit run parses as integer"))
    }
}

fn zeta_power(order: u64, k: u64) -> Cyclotomic {
    Cyclotomic::zeta_pow(order, (k % order) as i64)
}

/// Canonical text form: descending powers of `z` in the grammar accepted by
/// [`parse_cyclotomic`].
pub fn format_cyclotomic(a: &Cyclotomic) -> String {
    let mut out = String::new();
    let mut first = true;
    for k in (0..a.coeffs().len()).rev() {
        let c = &a.coeffs()[k];
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        write_term(&mut out, &mag, k);
    }
    if first {
        out.push('0');
    }
    out
}

fn write_term(out: &mut String, mag: &Rational, exp: usize) {
    use fmt::Write;
    if exp == 0 {
        write!(out, "{mag}").unwrap();
        return;
    }
    if !mag.is_one() {
        write!(out, "{mag}*").unwrap();
    }
    if exp == 1 {
        out.push('z');
    } else {
        write!(out, "z^{exp}").unwrap();
    }
}
