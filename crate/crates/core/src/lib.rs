//! Exact computation of orbifold and McKay-type invariants of quotients
//! `C^d / G` by finite matrix groups, and of stringy invariants of
//! normal-crossing pairs.
//!
//! Everything is computed in exact arithmetic: rationals are
//! arbitrary-precision fractions, matrix entries live in cyclotomic fields
//! `Q(zeta_n)`, and motivic weights are rational functions in a formal
//! fractional power of the Lefschetz class `L`. No floating point enters any
//! invariant; `f64` appears only in test oracles.
//!
//! Module layout:
//! - [`exactnum`] — rationals, polynomials over `Q`, cyclotomic fields and
//!   the expression parser for their elements
//! - [`matgroup`] — matrices over a cyclotomic field and finite group closure
//! - [`sectors`] — eigenvalue exponent data: ages, shift numbers, fixed
//!   spaces, and the twisted-sector decomposition
//! - [`motivic`] — the ring of motivic weights `Q(L^(1/r))` with a formal
//!   infinity, dimension map and geometric-series closed forms
//! - [`invariants`] — orbifold weights, Betti tables, discrepancies, stringy
//!   invariants of normal-crossing pairs, KLT detection

pub mod exactnum;
pub mod invariants;
pub mod matgroup;
pub mod motivic;
pub mod sectors;

pub use exactnum::{CycError, Cyclotomic, ParseError, QPoly, Rational};
pub use invariants::{
    Component, ConvergenceReport, DiscrepancyReport, InvariantError, McKayBetti, NcPairData,
    PairError, SectorDivisorData, Stratum,
};
pub use matgroup::{close_group, CycMatrix, FiniteMatrixGroup, GroupError};
pub use motivic::{Dim, MotivicError, MotivicWeight};
pub use sectors::{ExponentProfile, SectorError, TwistedSector};
