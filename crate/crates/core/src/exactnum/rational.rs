//! The scalar bedrock: arbitrary-precision exact fractions.
//!
//! Backed by [`num::BigRational`], which already maintains the canonical form
//! we rely on everywhere (numerator and denominator coprime, denominator
//! positive), so equality, ordering and hashing are structural.

use super::parser::ParseError;
use num::bigint::BigInt;
use num::Zero;

/// Arbitrary-precision rational number in lowest terms with positive
/// denominator.
pub type Rational = num::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational written as `p` or `p/q` in lowest or non-lowest terms,
/// with an optional leading sign and no interior whitespace.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let s = text.trim();
    let err = |pos: usize, message: &str| ParseError {
        position: pos,
        message: message.to_string(),
    };
    if s.is_empty() {
        return Err(err(0, "empty rational literal"));
    }
    let (numer_str, denom_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = numer_str
        .parse()
        .map_err(|_| err(0, "invalid integer numerator"))?;
    let denom: BigInt = match denom_str {
        Some(d) => d
            .parse()
            .map_err(|_| err(numer_str.len() + 1, "invalid integer denominator"))?,
        None => BigInt::from(1),
    };
    if denom <= BigInt::zero() {
        return Err(err(numer_str.len() + 1, "denominator must be positive"));
    }
    Ok(Rational::new(numer, denom))
}
