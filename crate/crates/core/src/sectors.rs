//! Eigenvalue exponent data of finite-order matrices and the twisted-sector
//! decomposition of `[C^d / G]`.
//!
//! For `g` of order `l`, the action on `C^d` splits into eigenspaces for the
//! eigenvalues `zeta_l^j`, `1 <= j <= l`, with the eigenvalue-one bucket
//! stored at `j = l`. The multiplicities are recovered exactly by character
//! averaging over traces of powers,
//!
//! ```text
//! m_j = (1/l) * sum_{k=0}^{l-1} zeta_l^(-jk) * trace(g^k),
//! ```
//!
//! never by root-finding; integrality of every `m_j` is a built-in
//! self-check. The age and shift conventions are derived views of the single
//! stored normalization:
//!
//! - `age(g)  = (1/l) * sum_{j<l} j * m_j` (exponents `0..l-1`, fixed bucket
//!   contributing exponent 0),
//! - `shift(g) = (1/l) * sum_j (l-j) * m_j` (exponents `1..l`),
//!
//! so `age + shift + fixed_dim = degree` holds exactly.

use crate::exactnum::{rat_int, Cyclotomic, Rational};
use crate::matgroup::{element_order, CycMatrix, FiniteMatrixGroup, GroupError};
use num::bigint::BigInt;
use num::integer::lcm;
use num::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectorError {
    /// The averaging formula produced a non-integer or negative multiplicity.
    /// This signals an arithmetic bug, never a valid input.
    #[error(
        "eigenvalue multiplicity for exponent {exponent} is not a nonnegative integer: {value}"
    )]
    NonIntegerMultiplicity { exponent: u64, value: String },
    #[error(transparent)]
    Order(#[from] GroupError),
}

/// One twisted sector of `[C^d / G]`: a conjugacy class together with its
/// exponent data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedSector {
    /// Index into the group's conjugacy classes.
    pub class_index: usize,
    /// Size of the conjugacy class.
    pub class_size: usize,
    /// Order `l` of the class elements.
    pub order: u64,
    /// Multiplicities `m_1..m_l` of the eigenvalues `zeta_l^1..zeta_l^l`.
    pub exponent_mult: Vec<u64>,
    pub age: Rational,
    pub shift: Rational,
    /// Dimension of the fixed subspace (`m_l`).
    pub fixed_dim: u64,
    pub centralizer_order: u64,
}

/// Exponent multiplicities of a single finite-order matrix, with the derived
/// age/shift/fixed-dimension views.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentProfile {
    order: u64,
    mult: Vec<u64>,
}

impl ExponentProfile {
    /// Compute the profile of `g` by exact character averaging in
    /// `Q(zeta_lcm(n,l))`.
    pub fn of(g: &CycMatrix) -> Result<ExponentProfile, SectorError> {
        let l = element_order(g)?;
        let field = lcm(g.order(), l);
        let lifted = g.embed(field).expect("matrix order divides lcm");
        let step = (field / l) as i64;

        // traces of g^0 .. g^(l-1)
        let mut traces = Vec::with_capacity(l as usize);
        let mut power = CycMatrix::identity(g.degree(), field);
        for _ in 0..l {
            traces.push(power.trace());
            power = power.mul(&lifted);
        }

        let zeta_pow: Vec<Cyclotomic> = (0..field)
            .map(|e| Cyclotomic::zeta_pow(field, e as i64))
            .collect();
        let l_rat = rat_int(l as i64);
        let mut mult = Vec::with_capacity(l as usize);
        for j in 1..=l {
            let mut sum = Cyclotomic::zero(field);
            for (k, t) in traces.iter().enumerate() {
                let e = (-((j as i64) * (k as i64) * step)).rem_euclid(field as i64);
                sum = sum.add(&zeta_pow[e as usize].mul(t));
            }
            let value = sum.as_rational().map(|q| q / &l_rat);
            let m = match value {
                Some(q) if q.is_integer() && !q.is_negative() => q.to_integer(),
                Some(q) => {
                    return Err(SectorError::NonIntegerMultiplicity {
                        exponent: j,
                        value: q.to_string(),
                    })
                }
                None => {
                    return Err(SectorError::NonIntegerMultiplicity {
                        exponent: j,
                        value: sum.to_string(),
                    })
                }
            };
            mult.push(u64::try_from(m).expect("multiplicity fits u64"));
        }
        let profile = ExponentProfile { order: l, mult };
        if profile.degree() != g.degree() as u64 {
            return Err(SectorError::NonIntegerMultiplicity {
                exponent: 0,
                value: format!(
                    "multiplicities sum to {} instead of the degree {}",
                    profile.degree(),
                    g.degree()
                ),
            });
        }
        Ok(profile)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Multiplicities `m_1..m_l`.
    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    /// Sum of all multiplicities, i.e. the matrix degree.
    pub fn degree(&self) -> u64 {
        self.mult.iter().sum()
    }

    /// `(1/l) * sum_{j=1}^{l-1} j * m_j`.
    pub fn age(&self) -> Rational {
        let mut total = BigInt::zero();
        for (j, &m) in self.mult.iter().enumerate().take(self.mult.len() - 1) {
            total += BigInt::from((j as u64 + 1) * m);
        }
        Rational::new(total, BigInt::from(self.order))
    }

    /// `(1/l) * sum_{j=1}^{l} (l-j) * m_j`.
    pub fn shift(&self) -> Rational {
        let l = self.order;
        let mut total = BigInt::zero();
        for (j, &m) in self.mult.iter().enumerate() {
            total += BigInt::from((l - (j as u64 + 1)) * m);
        }
        Rational::new(total, BigInt::from(l))
    }

    /// Multiplicity of the eigenvalue one.
    pub fn fixed_dim(&self) -> u64 {
        *self.mult.last().expect("order is at least 1")
    }
}

/// Eigenvalue exponent multiplicities `m_1..m_l` of a finite-order matrix.
pub fn exponent_multiplicities(g: &CycMatrix) -> Result<Vec<u64>, SectorError> {
    Ok(ExponentProfile::of(g)?.mult)
}

/// Age of a finite-order matrix. Panics when `g` is not of finite order.
pub fn age(g: &CycMatrix) -> Rational {
    ExponentProfile::of(g)
        .expect("age needs a finite-order matrix")
        .age()
}

/// Shift number of a finite-order matrix. Panics when `g` is not of finite
/// order.
pub fn shift(g: &CycMatrix) -> Rational {
    ExponentProfile::of(g)
        .expect("shift needs a finite-order matrix")
        .shift()
}

/// Dimension of the fixed subspace of `g`. Panics when `g` is not of finite
/// order.
pub fn fixed_dim(g: &CycMatrix) -> u64 {
    ExponentProfile::of(g)
        .expect("fixed_dim needs a finite-order matrix")
        .fixed_dim()
}

/// The twisted-sector decomposition of `[C^d / G]`: one sector per conjugacy
/// class, in class order, populated from the class representatives.
pub fn inertia_decomposition(group: &FiniteMatrixGroup) -> Vec<TwistedSector> {
    (0..group.class_count())
        .map(|c| {
            let rep = group.element(group.class_reps()[c]);
            let profile =
                ExponentProfile::of(rep).expect("members of a closed group have finite order");
            let centralizer = group
                .centralizer_order(rep)
                .expect("representative is a member") as u64;
            TwistedSector {
                class_index: c,
                class_size: group.class_sizes()[c],
                order: profile.order(),
                age: profile.age(),
                shift: profile.shift(),
                fixed_dim: profile.fixed_dim(),
                exponent_mult: profile.mult,
                centralizer_order: centralizer,
            }
        })
        .collect()
}
