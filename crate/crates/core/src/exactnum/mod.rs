//! Exact scalar arithmetic: arbitrary-precision rationals, dense polynomials
//! over `Q`, the cyclotomic fields `Q(zeta_n)` in the power basis modulo the
//! n-th cyclotomic polynomial, and a small expression grammar for writing
//! field elements as text.

mod cyclotomic;
mod parser;
mod poly;
mod rational;

pub use cyclotomic::{
    cyclotomic_polynomial, divisors, euler_phi, to_common_order, CycError, Cyclotomic,
};
pub use parser::{format_cyclotomic, parse_cyclotomic, ParseError};
pub use poly::QPoly;
pub use rational::{parse_rational, rat, rat_int, Rational};
