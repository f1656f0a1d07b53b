//! Dense univariate polynomials over `Q`, degree-ascending coefficients with
//! trailing zeros stripped. The zero polynomial is the empty coefficient
//! sequence, so `degree` returns `None` for it rather than a sentinel value.
//!
//! This one type carries both the cyclotomic-polynomial arithmetic of
//! [`super::Cyclotomic`] and the numerator/denominator polynomials of
//! [`crate::motivic::MotivicWeight`].

use super::rational::{rat_int, Rational};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial over `Q` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// Build from degree-ascending coefficients, stripping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// The monomial `x^n`.
    pub fn x_pow(n: usize) -> Self {
        QPoly::monomial(rat_int(1), n)
    }

    /// The monomial `c * x^n`.
    pub fn monomial(c: Rational, n: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![rat_int(0); n + 1];
        coeffs[n] = c;
        QPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero-extended beyond the stored length.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn neg_ref(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add_ref(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub_ref(&self, rhs: &QPoly) -> QPoly {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn mul_ref(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![rat_int(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: &Rational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Quotient and remainder of exact division in `Q[x]`.
    ///
    /// Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let d_deg = divisor.degree().expect("division by zero polynomial");
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![rat_int(0); rem.len() - d_deg];
        for i in (d_deg..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &d_lead;
            quot[i - d_deg] = q.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - d_deg + j;
                let delta = dc * &q;
                rem[idx] -= delta;
            }
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    /// Exact quotient, or `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    pub fn make_monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(l) => self.mul_scalar(&(rat_int(1) / l)),
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }

    /// Extended Euclidean algorithm: returns `(g, u, v)` with
    /// `u*a + v*b = g` and `g` the monic gcd.
    pub fn extended_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut u0, mut u1) = (QPoly::one(), QPoly::zero());
        let (mut v0, mut v1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let u = u0.sub_ref(&q.mul_ref(&u1));
            u0 = u1;
            u1 = u;
            let v = v0.sub_ref(&q.mul_ref(&v1));
            v0 = v1;
            v1 = v;
        }
        match r0.leading() {
            None => (QPoly::zero(), QPoly::zero(), QPoly::zero()),
            Some(l) => {
                let inv = rat_int(1) / l;
                (
                    r0.mul_scalar(&inv),
                    u0.mul_scalar(&inv),
                    v0.mul_scalar(&inv),
                )
            }
        }
    }

    /// Substitute `x -> x^k` (multiply every exponent by `k`).
    pub fn inflate(&self, k: usize) -> QPoly {
        assert!(k >= 1, "inflate factor must be positive");
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![rat_int(0); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        QPoly { coeffs }
    }

    /// Inverse of [`inflate`](Self::inflate): divide every exponent by `k`.
    /// Returns `None` when some exponent with a nonzero coefficient is not a
    /// multiple of `k`.
    pub fn deflate(&self, k: usize) -> Option<QPoly> {
        assert!(k >= 1, "deflate factor must be positive");
        if k == 1 || self.is_zero() {
            return Some(self.clone());
        }
        let mut coeffs = vec![rat_int(0); (self.coeffs.len() - 1) / k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i % k != 0 {
                return None;
            }
            coeffs[i / k] = c.clone();
        }
        Some(QPoly::from_coeffs(coeffs))
    }

    /// Gcd of the exponents carrying nonzero coefficients; zero when the
    /// polynomial is constant or zero.
    pub fn exponent_gcd(&self) -> usize {
        let mut g = 0usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = num::integer::gcd(g, i);
            }
        }
        g
    }

    /// `1 + x + ... + x^(n-1)`; the empty sum for `n == 0`.
    pub fn geometric_sum(n: usize) -> QPoly {
        QPoly {
            coeffs: vec![rat_int(1); n],
        }
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self.sub_ref(rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.neg_ref()
    }
}

impl fmt::Display for QPoly {
    /// Human form in the variable `x`, descending exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}
