//! The cyclotomic fields `Q(zeta_n)` in the power basis: an element is the
//! unique representative of degree `< phi(n)` modulo the n-th cyclotomic
//! polynomial, so equality, hashing and ordering are structural.

use super::parser::format_cyclotomic;
use super::poly::QPoly;
use super::rational::{rat_int, Rational};
use num::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

/// Errors of cyclotomic field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("order {0} does not divide target order {1}")]
    NotDivisible(u64, u64),
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut phi = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            phi -= phi / p;
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// The n-th cyclotomic polynomial `Phi_n`, by exact division of `x^n - 1` by
/// the product of `Phi_d` over proper divisors `d` of `n`. Monic with integer
/// coefficients; results are memoized process-wide.
pub fn cyclotomic_polynomial(n: u64) -> QPoly {
    static CACHE: OnceLock<Mutex<HashMap<u64, QPoly>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let result = if n == 1 {
        QPoly::from_coeffs(vec![rat_int(-1), rat_int(1)])
    } else {
        let mut x_n_minus_1 = QPoly::x_pow(n as usize);
        x_n_minus_1 = x_n_minus_1.sub_ref(&QPoly::one());
        let mut denom = QPoly::one();
        for d in divisors(n) {
            if d < n {
                denom = denom.mul_ref(&cyclotomic_polynomial(d));
            }
        }
        x_n_minus_1
            .exact_div(&denom)
            .expect("x^n - 1 is divisible by the product of proper Phi_d")
    };
    debug_assert!(result.is_monic() && result.is_integral());
    debug_assert_eq!(result.degree(), Some(euler_phi(n) as usize));
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// Element of `Q(zeta_n)` in canonical form: `coeffs` has length exactly
/// `phi(n)` and represents the residue of a polynomial in `zeta_n` modulo
/// `Phi_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Canonicalize `raw` as an element of `Q(zeta_order)`: exponents are
    /// first folded modulo `x^order = 1`, then reduced modulo `Phi_order`.
    pub fn make(order: u64, raw: &QPoly) -> Cyclotomic {
        assert!(order >= 1, "cyclotomic order must be positive");
        let n = order as usize;
        let mut folded = vec![rat_int(0); n];
        for (i, c) in raw.coeffs().iter().enumerate() {
            folded[i % n] += c;
        }
        let rem = QPoly::from_coeffs(folded)
            .div_rem(&cyclotomic_polynomial(order))
            .1;
        let phi = euler_phi(order) as usize;
        let mut coeffs = rem.coeffs().to_vec();
        debug_assert!(coeffs.len() <= phi);
        coeffs.resize(phi, rat_int(0));
        Cyclotomic { order, coeffs }
    }

    pub fn zero(order: u64) -> Cyclotomic {
        Cyclotomic::make(order, &QPoly::zero())
    }

    pub fn one(order: u64) -> Cyclotomic {
        Cyclotomic::make(order, &QPoly::one())
    }

    pub fn from_rational(order: u64, value: Rational) -> Cyclotomic {
        Cyclotomic::make(order, &QPoly::constant(value))
    }

    /// The canonical primitive root `zeta_order`.
    pub fn zeta(order: u64) -> Cyclotomic {
        Cyclotomic::make(order, &QPoly::x_pow(1))
    }

    /// `zeta_order^k`, with `k` taken modulo `order` (negative allowed).
    pub fn zeta_pow(order: u64, k: i64) -> Cyclotomic {
        let e = k.rem_euclid(order as i64) as usize;
        Cyclotomic::make(order, &QPoly::x_pow(e))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Canonical coefficients in the power basis `1, zeta, ..., zeta^(phi-1)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value when the element lies in `Q`, else `None`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn require_same_order(&self, rhs: &Cyclotomic) -> Result<(), CycError> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(CycError::OrderMismatch(self.order, rhs.order))
        }
    }

    pub fn try_add(&self, rhs: &Cyclotomic) -> Result<Cyclotomic, CycError> {
        self.require_same_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn try_sub(&self, rhs: &Cyclotomic) -> Result<Cyclotomic, CycError> {
        self.try_add(&rhs.neg())
    }

    pub fn try_mul(&self, rhs: &Cyclotomic) -> Result<Cyclotomic, CycError> {
        self.require_same_order(rhs)?;
        // scalar operands avoid the polynomial reduction entirely
        if let Some(q) = self.as_rational() {
            return Ok(rhs.mul_scalar(&q));
        }
        if let Some(q) = rhs.as_rational() {
            return Ok(self.mul_scalar(&q));
        }
        let product = QPoly::from_coeffs(self.coeffs.clone())
            .mul_ref(&QPoly::from_coeffs(rhs.coeffs.clone()));
        Ok(Cyclotomic::make(self.order, &product))
    }

    /// Same-order addition. Panics on mismatched orders; use
    /// [`try_add`](Self::try_add) at trust boundaries.
    pub fn add(&self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }

    pub fn sub(&self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }

    pub fn mul(&self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul_scalar(&self, c: &Rational) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_order` (which is irreducible, so any nonzero residue is a unit).
    pub fn inv(&self) -> Result<Cyclotomic, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.order));
        }
        let a = QPoly::from_coeffs(self.coeffs.clone());
        let phi_n = cyclotomic_polynomial(self.order);
        let (g, u, _) = QPoly::extended_gcd(&a, &phi_n);
        debug_assert!(g.is_one(), "Phi_n is irreducible over Q");
        Ok(Cyclotomic::make(self.order, &u))
    }

    /// Integer power; negative exponents go through [`inv`](Self::inv).
    pub fn pow(&self, k: i64) -> Result<Cyclotomic, CycError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc = Cyclotomic::one(self.order);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Field embedding `Q(zeta_n) -> Q(zeta_m)` for `n | m`, sending
    /// `zeta_n` to `zeta_m^(m/n)`.
    pub fn embed(&self, target_order: u64) -> Result<Cyclotomic, CycError> {
        if !target_order.is_multiple_of(self.order) {
            return Err(CycError::NotDivisible(self.order, target_order));
        }
        if target_order == self.order {
            return Ok(self.clone());
        }
        let step = (target_order / self.order) as usize;
        let image = QPoly::from_coeffs(self.coeffs.clone()).inflate(step);
        Ok(Cyclotomic::make(target_order, &image))
    }

    /// Numeric evaluation at `zeta_n = exp(2*pi*i/n)` in double precision.
    /// This is a test-oracle convenience only; nothing in the exact pipeline
    /// consumes it.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().expect("rational out of f64 range");
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / n;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }
}

/// Embed both operands into `Q(zeta_lcm)` so same-order arithmetic applies.
pub fn to_common_order(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
    let m = num::integer::lcm(a.order(), b.order());
    (
        a.embed(m).expect("order divides lcm"),
        b.embed(m).expect("order divides lcm"),
    )
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_cyclotomic(self))
    }
}
