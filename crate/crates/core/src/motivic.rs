//! The ring of motivic weights: exact rational functions in `t = L^(1/r)`
//! over `Q`, extended by a formal absorbing `infinity`.
//!
//! `L` is the Lefschetz class (the class of an affine line), and `L^(1/r)`
//! its formal r-th root, so `(L^(1/r))^r = L`. A finite weight is stored as
//! a reduced fraction `num/den` of polynomials in `t` with `den` monic and
//! the root index `r` minimal, which makes structural equality canonical.
//! The dimension of a nonzero finite weight is `(deg num - deg den)/r`; zero
//! has dimension `-infinity` and the absorbing element `+infinity`.
//!
//! Divergent geometric series are represented by the `infinity` value rather
//! than an error, so sums of weights are total.

use crate::exactnum::{parse_rational, rat_int, ParseError, QPoly, Rational};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotivicError {
    #[error("0 * infinity is indeterminate")]
    IndeterminateZeroTimesInfinity,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("{value} is not a perfect {root}-th power of a rational")]
    NotAPerfectPower { value: String, root: u64 },
    #[error("weight is not a polynomial in L^(1/r)")]
    NotAPolynomial,
    #[error("cannot evaluate the infinite weight")]
    InfiniteValue,
    #[error("invalid weight expression: {0}")]
    Parse(#[from] ParseError),
}

/// Dimension of a motivic weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dim {
    NegInfinite,
    Finite(Rational),
    PosInfinite,
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::NegInfinite => write!(f, "-infinity"),
            Dim::Finite(q) => write!(f, "{q}"),
            Dim::PosInfinite => write!(f, "+infinity"),
        }
    }
}

/// An element of `Q(L^(1/r))` together with the absorbing `infinity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MotivicWeight {
    Infinite,
    Finite(FiniteWeight),
}

/// Reduced fraction of polynomials in `t = L^(1/r)`; `den` monic and nonzero,
/// `gcd(num, den) = 1`, and `r` minimal for the exponents that occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteWeight {
    root: u64,
    num: QPoly,
    den: QPoly,
}

impl FiniteWeight {
    /// Root index `r` of the ambient `Q(L^(1/r))`.
    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }
}

fn normalize(root: u64, num: QPoly, den: QPoly) -> FiniteWeight {
    assert!(!den.is_zero(), "weight denominator must be nonzero");
    let g = QPoly::gcd(&num, &den);
    let mut num = num.exact_div(&g).expect("gcd divides");
    let mut den = den.exact_div(&g).expect("gcd divides");
    let lead_inv = rat_int(1) / den.leading().expect("den nonzero");
    num = num.mul_scalar(&lead_inv);
    den = den.mul_scalar(&lead_inv);
    // shrink the root index: when every occurring exponent shares a factor
    // with r, rewrite in terms of the smaller root
    let mut root = root;
    let e = num::integer::gcd(num.exponent_gcd() as u64, den.exponent_gcd() as u64);
    let k = num::integer::gcd(e, root);
    if k > 1 {
        num = num.deflate(k as usize).expect("exponents divisible by k");
        den = den.deflate(k as usize).expect("exponents divisible by k");
        root /= k;
    }
    FiniteWeight { root, num, den }
}

impl MotivicWeight {
    pub fn zero() -> MotivicWeight {
        MotivicWeight::from_polynomial(1, QPoly::zero())
    }

    pub fn one() -> MotivicWeight {
        MotivicWeight::from_polynomial(1, QPoly::one())
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> MotivicWeight {
        MotivicWeight::from_polynomial(1, QPoly::x_pow(1))
    }

    pub fn from_rational(q: Rational) -> MotivicWeight {
        MotivicWeight::from_polynomial(1, QPoly::constant(q))
    }

    /// Polynomial in `t = L^(1/root)`.
    pub fn from_polynomial(root: u64, poly: QPoly) -> MotivicWeight {
        MotivicWeight::from_fraction(root, poly, QPoly::one())
    }

    /// Fraction of polynomials in `t = L^(1/root)`; reduced on construction.
    pub fn from_fraction(root: u64, num: QPoly, den: QPoly) -> MotivicWeight {
        assert!(root >= 1, "root index must be positive");
        MotivicWeight::Finite(normalize(root, num, den))
    }

    /// The monomial `L^q` for rational `q` (negative exponents give honest
    /// fractions).
    pub fn from_l_power(q: &Rational) -> MotivicWeight {
        let root: u64 = q.denom().try_into().expect("root index fits u64");
        let e: i64 = q.numer().try_into().expect("scaled exponent fits i64");
        if e >= 0 {
            MotivicWeight::from_fraction(root, QPoly::x_pow(e as usize), QPoly::one())
        } else {
            MotivicWeight::from_fraction(
                root,
                QPoly::one(),
                QPoly::x_pow(e.unsigned_abs() as usize),
            )
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MotivicWeight::Finite(w) if w.num.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, MotivicWeight::Infinite)
    }

    pub fn as_finite(&self) -> Option<&FiniteWeight> {
        match self {
            MotivicWeight::Finite(w) => Some(w),
            MotivicWeight::Infinite => None,
        }
    }

    /// Rescale two finite weights to a common root index.
    fn common(a: &FiniteWeight, b: &FiniteWeight) -> (u64, QPoly, QPoly, QPoly, QPoly) {
        let r = num::integer::lcm(a.root, b.root);
        let ka = (r / a.root) as usize;
        let kb = (r / b.root) as usize;
        (
            r,
            a.num.inflate(ka),
            a.den.inflate(ka),
            b.num.inflate(kb),
            b.den.inflate(kb),
        )
    }

    /// Sum; `infinity` absorbs.
    pub fn add(&self, rhs: &MotivicWeight) -> MotivicWeight {
        match (self, rhs) {
            (MotivicWeight::Infinite, _) | (_, MotivicWeight::Infinite) => MotivicWeight::Infinite,
            (MotivicWeight::Finite(a), MotivicWeight::Finite(b)) => {
                let (r, an, ad, bn, bd) = MotivicWeight::common(a, b);
                let num = an.mul_ref(&bd).add_ref(&bn.mul_ref(&ad));
                MotivicWeight::from_fraction(r, num, ad.mul_ref(&bd))
            }
        }
    }

    /// Difference of finite weights. Subtraction is internal machinery (the
    /// reduced-fraction representation needs signed coefficients); invariant
    /// outputs never rely on it. Panics when either side is infinite.
    pub fn sub(&self, rhs: &MotivicWeight) -> MotivicWeight {
        match (self, rhs) {
            (MotivicWeight::Finite(a), MotivicWeight::Finite(b)) => {
                let (r, an, ad, bn, bd) = MotivicWeight::common(a, b);
                let num = an.mul_ref(&bd).sub_ref(&bn.mul_ref(&ad));
                MotivicWeight::from_fraction(r, num, ad.mul_ref(&bd))
            }
            _ => panic!("subtraction needs finite weights"),
        }
    }

    /// Product; `infinity` absorbs nonzero weights, and `0 * infinity` is the
    /// one indeterminate form.
    pub fn try_mul(&self, rhs: &MotivicWeight) -> Result<MotivicWeight, MotivicError> {
        match (self, rhs) {
            (MotivicWeight::Infinite, other) | (other, MotivicWeight::Infinite) => {
                if other.is_zero() {
                    Err(MotivicError::IndeterminateZeroTimesInfinity)
                } else {
                    Ok(MotivicWeight::Infinite)
                }
            }
            (MotivicWeight::Finite(a), MotivicWeight::Finite(b)) => {
                let (r, an, ad, bn, bd) = MotivicWeight::common(a, b);
                Ok(MotivicWeight::from_fraction(
                    r,
                    an.mul_ref(&bn),
                    ad.mul_ref(&bd),
                ))
            }
        }
    }

    /// Product of finite weights; panics on the indeterminate form.
    pub fn mul(&self, rhs: &MotivicWeight) -> MotivicWeight {
        self.try_mul(rhs).expect("indeterminate 0 * infinity")
    }

    /// Dimension: degree in `L` of the dominant term.
    pub fn dim(&self) -> Dim {
        match self {
            MotivicWeight::Infinite => Dim::PosInfinite,
            MotivicWeight::Finite(w) => {
                if w.num.is_zero() {
                    Dim::NegInfinite
                } else {
                    let n = w.num.degree().unwrap() as i64;
                    let d = w.den.degree().unwrap() as i64;
                    Dim::Finite(Rational::new(BigInt::from(n - d), BigInt::from(w.root)))
                }
            }
        }
    }

    /// Closed form of the geometric series `sum_{s>=1} L^(-(e+1)s) (L-1)`:
    /// `(L-1)/(L^(e+1)-1)` when `e > -1`, and the divergent `infinity`
    /// otherwise. `stringy_factor(0) = 1` exactly.
    pub fn stringy_factor(e: &Rational) -> MotivicWeight {
        let shifted = e + rat_int(1);
        if !shifted.is_positive() {
            return MotivicWeight::Infinite;
        }
        // e+1 = p/q > 0; with t = L^(1/q) the reduced form is
        // (1 + t + .. + t^(q-1)) / (1 + t + .. + t^(p-1))
        let p: u64 = shifted.numer().try_into().expect("positive numerator");
        let q: u64 = shifted.denom().try_into().expect("positive denominator");
        MotivicWeight::from_fraction(
            q,
            QPoly::geometric_sum(q as usize),
            QPoly::geometric_sum(p as usize),
        )
    }

    /// Exact evaluation at a rational value of `L`. The root `L^(1/r)` must
    /// itself be rational, i.e. `L_value` a perfect r-th power.
    pub fn eval(&self, l_value: &Rational) -> Result<Rational, MotivicError> {
        let w = self.as_finite().ok_or(MotivicError::InfiniteValue)?;
        let t =
            rational_nth_root(l_value, w.root).ok_or_else(|| MotivicError::NotAPerfectPower {
                value: l_value.to_string(),
                root: w.root,
            })?;
        let den = w.den.eval(&t);
        if den.is_zero() {
            return Err(MotivicError::PoleAtPoint);
        }
        Ok(w.num.eval(&t) / den)
    }

    /// Exponent-indexed coefficients of a polynomial weight, keyed by the
    /// exponent of `L` as a rational (multiples of `1/r`).
    pub fn poly_coeffs(&self) -> Result<BTreeMap<Rational, Rational>, MotivicError> {
        let w = self.as_finite().ok_or(MotivicError::NotAPolynomial)?;
        if !w.den.is_one() {
            return Err(MotivicError::NotAPolynomial);
        }
        let mut map = BTreeMap::new();
        for (i, c) in w.num.coeffs().iter().enumerate() {
            if !c.is_zero() {
                map.insert(
                    Rational::new(BigInt::from(i), BigInt::from(w.root)),
                    c.clone(),
                );
            }
        }
        Ok(map)
    }
}

/// Exact r-th root of a rational, when it exists.
fn rational_nth_root(value: &Rational, root: u64) -> Option<Rational> {
    if root == 1 {
        return Some(value.clone());
    }
    let r = u32::try_from(root).ok()?;
    if value.is_negative() && root.is_multiple_of(2) {
        return None;
    }
    let numer = value.numer().nth_root(r);
    let denom = value.denom().nth_root(r);
    let restored_numer = num::pow::pow(numer.clone(), r as usize);
    let restored_denom = num::pow::pow(denom.clone(), r as usize);
    if &restored_numer == value.numer() && &restored_denom == value.denom() {
        Some(Rational::new(numer, denom))
    } else {
        None
    }
}

// ---- text form -----------------------------------------------------------

fn write_poly_in_l(out: &mut String, poly: &QPoly, root: u64) {
    use fmt::Write;
    if poly.is_zero() {
        out.push('0');
        return;
    }
    let mut first = true;
    for i in (0..poly.coeffs().len()).rev() {
        let c = &poly.coeffs()[i];
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
        if i == 0 {
            write!(out, "{mag}").unwrap();
            continue;
        }
        if !mag.is_one() {
            write!(out, "{mag}*").unwrap();
        }
        let num = i as u64;
        if num.is_multiple_of(root) {
            let e = num / root;
            if e == 1 {
                out.push('L');
            } else {
                write!(out, "L^{e}").unwrap();
            }
        } else {
            let g = num::integer::gcd(num, root);
            write!(out, "L^({}/{})", num / g, root / g).unwrap();
        }
    }
}

impl fmt::Display for MotivicWeight {
    /// Deterministic text form: `infinity`, a polynomial in `L` with
    /// descending exponents (fractional ones written `L^(p/q)`), or
    /// `(P)/(Q)` for an honest fraction.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotivicWeight::Infinite => write!(f, "infinity"),
            MotivicWeight::Finite(w) => {
                let mut text = String::new();
                if w.den.is_one() {
                    write_poly_in_l(&mut text, &w.num, w.root);
                } else {
                    text.push('(');
                    write_poly_in_l(&mut text, &w.num, w.root);
                    text.push_str(")/(");
                    write_poly_in_l(&mut text, &w.den, w.root);
                    text.push(')');
                }
                write!(f, "{text}")
            }
        }
    }
}

impl FromStr for MotivicWeight {
    type Err = MotivicError;

    /// Parse the text form emitted by `Display`; also accepts negative
    /// integer or rational exponents such as `L^-2` or `L^(-1/2)`, which fold
    /// into the fraction.
    fn from_str(s: &str) -> Result<MotivicWeight, MotivicError> {
        let trimmed = s.trim();
        if trimmed == "infinity" {
            return Ok(MotivicWeight::Infinite);
        }
        let mut p = WeightParser {
            bytes: trimmed.as_bytes(),
            pos: 0,
        };
        let value = p.fraction()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("unexpected trailing input").into());
        }
        Ok(value)
    }
}

struct WeightParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl WeightParser<'_> {
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

    fn fraction(&mut self) -> Result<MotivicWeight, MotivicError> {
        self.skip_ws();
        // "(P)/(Q)": parenthesized numerator followed by '/' and a
        // parenthesized denominator
        if self.peek() == Some(b'(') {
            let save = self.pos;
            self.pos += 1;
            let num = self.poly()?;
            self.skip_ws();
            if self.eat(b')') {
                self.skip_ws();
                if self.eat(b'/') {
                    self.skip_ws();
                    if !self.eat(b'(') {
                        return Err(self.err("expected '(' after '/'").into());
                    }
                    let den = self.poly()?;
                    self.skip_ws();
                    if !self.eat(b')') {
                        return Err(self.err("expected ')'").into());
                    }
                    return divide(&num, &den).ok_or_else(|| self.err("zero denominator").into());
                }
                self.skip_ws();
                if self.pos == self.bytes.len() {
                    return Ok(num);
                }
            }
            // not the fraction form after all; reparse as a plain polynomial
            self.pos = save;
        }
        self.poly()
    }

    fn poly(&mut self) -> Result<MotivicWeight, MotivicError> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = MotivicWeight::zero().sub(&acc);
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

    fn term(&mut self) -> Result<MotivicWeight, MotivicError> {
        self.skip_ws();
        let coeff = if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let c = self.coefficient()?;
            self.skip_ws();
            if !self.eat(b'*') {
                return Ok(MotivicWeight::from_rational(c));
            }
            self.skip_ws();
            c
        } else {
            rat_int(1)
        };
        if !self.eat(b'L') {
            return Err(self.err("expected 'L'").into());
        }
        let exponent = if self.eat(b'^') {
            self.exponent()?
        } else {
            rat_int(1)
        };
        Ok(MotivicWeight::from_l_power(&exponent).mul(&MotivicWeight::from_rational(coeff)))
    }

    fn exponent(&mut self) -> Result<Rational, MotivicError> {
        self.skip_ws();
        if self.eat(b'(') {
            self.skip_ws();
            let q = self.signed_rational()?;
            self.skip_ws();
            if !self.eat(b')') {
                return Err(self.err("expected ')'").into());
            }
            Ok(q)
        } else {
            self.signed_integer()
        }
    }

    fn signed_rational(&mut self) -> Result<Rational, MotivicError> {
        let start = self.pos;
        self.eat(b'-');
        while self.peek().is_some_and(|b| b.is_ascii_digit() || b == b'/') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a rational exponent").into());
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(parse_rational(text)?)
    }

    fn signed_integer(&mut self) -> Result<Rational, MotivicError> {
        let start = self.pos;
        self.eat(b'-');
        let digits_start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected an integer exponent").into());
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(parse_rational(text)?)
    }

    fn coefficient(&mut self) -> Result<Rational, MotivicError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number").into());
        }
        if self.peek() == Some(b'/')
            && self
                .bytes
                .get(self.pos + 1)
                .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
            while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(parse_rational(text)?)
    }
}

/// Quotient of two finite weights; `None` when the denominator is zero.
fn divide(num: &MotivicWeight, den: &MotivicWeight) -> Option<MotivicWeight> {
    let (n, d) = (num.as_finite()?, den.as_finite()?);
    if d.num.is_zero() {
        return None;
    }
    let (r, nn, nd, dn, dd) = MotivicWeight::common(n, d);
    Some(MotivicWeight::from_fraction(
        r,
        nn.mul_ref(&dd),
        nd.mul_ref(&dn),
    ))
}
