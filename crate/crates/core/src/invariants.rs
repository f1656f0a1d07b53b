//! Headline invariants of `C^d / G` and of normal-crossing pairs: the
//! orbifold motivic weight, Betti tables of crepant resolutions, the
//! discrepancy formula, stringy invariants of strata data, KLT detection,
//! and per-sector convergence of the twisted fiber integral.

use crate::exactnum::{rat_int, Rational};
use crate::matgroup::FiniteMatrixGroup;
use crate::motivic::{Dim, MotivicWeight};
use crate::sectors::{inertia_decomposition, TwistedSector};
use num::bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("the trivial group has no non-identity class, so no discrepancy is defined")]
    TrivialGroup,
    #[error(
        "the group contains reflections (classes {0:?}), so the discrepancy formula does not apply"
    )]
    HasReflections(Vec<usize>),
    #[error(
        "divisor weight references exponent {exponent}, which exceeds the sector order {order}"
    )]
    InvalidExponent { exponent: u64, order: u64 },
    #[error("divisor weights claim {claimed} coordinates with exponent {exponent}, but the sector only has {available}")]
    CoordinateMismatch {
        exponent: u64,
        claimed: u64,
        available: u64,
    },
}

/// Validation failures of normal-crossing strata data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("component id {0:?} appears more than once")]
    DuplicateComponent(String),
    #[error("stratum subset {0:?} appears more than once")]
    DuplicateSubset(Vec<String>),
    #[error("the empty subset must appear exactly once among the strata")]
    MissingEmptyStratum,
    #[error("stratum references unknown component {0:?}")]
    UnknownComponent(String),
    #[error("strata classes sum to {got} instead of the ambient class {ambient}")]
    StrataNotPartition { got: String, ambient: String },
}

/// One boundary component: an identifier, its coefficient, and whether it
/// meets the region of interest `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub coefficient: Rational,
    pub meets_w: bool,
}

/// One locally closed stratum: the set of components containing it and the
/// class of its open part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub subset: Vec<String>,
    pub class: MotivicWeight,
}

/// Strata data of a normal-crossing pair: the ambient class, the boundary
/// components with coefficients, and the open strata classes, which must
/// partition the ambient class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPairData {
    pub ambient_class: MotivicWeight,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
}

impl NcPairData {
    /// Check the structural invariants: distinct known components, distinct
    /// subsets, exactly one empty subset, and strata classes summing to the
    /// ambient class.
    pub fn validate(&self) -> Result<(), PairError> {
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(c.id.clone()) {
                return Err(PairError::DuplicateComponent(c.id.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        let mut empties = 0usize;
        let mut total = MotivicWeight::zero();
        for stratum in &self.strata {
            let subset: BTreeSet<String> = stratum.subset.iter().cloned().collect();
            for id in &subset {
                if !ids.contains(id) {
                    return Err(PairError::UnknownComponent(id.clone()));
                }
            }
            if !seen.insert(subset.clone()) {
                return Err(PairError::DuplicateSubset(subset.into_iter().collect()));
            }
            if subset.is_empty() {
                empties += 1;
            }
            total = total.add(&stratum.class);
        }
        if empties != 1 {
            return Err(PairError::MissingEmptyStratum);
        }
        if total != self.ambient_class {
            return Err(PairError::StrataNotPartition {
                got: total.to_string(),
                ambient: self.ambient_class.to_string(),
            });
        }
        Ok(())
    }

    fn coefficient_of(&self, id: &str) -> &Rational {
        &self
            .components
            .iter()
            .find(|c| c.id == id)
            .expect("validated component id")
            .coefficient
    }
}

/// The orbifold motivic weight of `[C^d / G]`: the sum over twisted sectors
/// of `L^(d - age)`.
///
/// The equivalent route `sum L^(fixed_dim + shift)` is computed alongside
/// and compared; a mismatch would mean corrupted sector data, so it is a
/// hard assertion rather than an error value.
pub fn orbifold_weight(group: &FiniteMatrixGroup) -> MotivicWeight {
    orbifold_weight_of_sectors(group.degree() as u64, &inertia_decomposition(group))
}

/// As [`orbifold_weight`], from precomputed sectors.
pub fn orbifold_weight_of_sectors(degree: u64, sectors: &[TwistedSector]) -> MotivicWeight {
    let mut by_age = MotivicWeight::zero();
    let mut by_shift = MotivicWeight::zero();
    for s in sectors {
        let d = rat_int(degree as i64);
        by_age = by_age.add(&MotivicWeight::from_l_power(&(d - &s.age)));
        let exponent = rat_int(s.fixed_dim as i64) + &s.shift;
        by_shift = by_shift.add(&MotivicWeight::from_l_power(&exponent));
    }
    assert_eq!(
        by_age, by_shift,
        "age route and shift route disagree; sector data is inconsistent"
    );
    by_age
}

/// Betti-table counts keyed by cohomological degree `i = 2 * age`, plus the
/// flag telling whether the crepant-resolution reading applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McKayBetti {
    /// `i -> n_i`, where `n_i` counts conjugacy classes of age `i/2`.
    pub counts: BTreeMap<Rational, u64>,
    /// True when every element has determinant one. The counts are defined
    /// regardless, but their reading as Betti numbers of a crepant
    /// resolution needs this.
    pub in_sl: bool,
}

impl McKayBetti {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Count conjugacy classes by age, keyed by `i = 2 * age`.
pub fn mckay_betti(group: &FiniteMatrixGroup) -> McKayBetti {
    let mut counts: BTreeMap<Rational, u64> = BTreeMap::new();
    for sector in inertia_decomposition(group) {
        *counts.entry(sector.age * rat_int(2)).or_insert(0) += 1;
    }
    McKayBetti {
        counts,
        in_sl: group.is_subgroup_of_sl(),
    }
}

/// The discrepancy of `C^d / G` for a reflection-free nontrivial group:
/// the minimal age over non-identity classes, minus one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub discrepancy: Rational,
    /// Age attaining the minimum.
    pub min_age: Rational,
    /// Smallest class index attaining the minimum.
    pub minimizing_class: usize,
}

pub fn discrepancy(group: &FiniteMatrixGroup) -> Result<DiscrepancyReport, InvariantError> {
    if group.order() == 1 {
        return Err(InvariantError::TrivialGroup);
    }
    let reflections = group.find_reflections();
    if !reflections.is_empty() {
        let mut classes: Vec<usize> = reflections.iter().map(|&i| group.class_of(i)).collect();
        classes.sort_unstable();
        classes.dedup();
        return Err(InvariantError::HasReflections(classes));
    }
    let identity_class = group.class_of(group.identity_index());
    let mut best: Option<(Rational, usize)> = None;
    for sector in inertia_decomposition(group) {
        if sector.class_index == identity_class {
            continue;
        }
        if best.as_ref().is_none_or(|(age, _)| sector.age < *age) {
            best = Some((sector.age, sector.class_index));
        }
    }
    let (min_age, minimizing_class) = best.expect("nontrivial group has a non-identity class");
    Ok(DiscrepancyReport {
        discrepancy: &min_age - rat_int(1),
        min_age,
        minimizing_class,
    })
}

/// The stringy invariant of validated strata data:
/// `sum_J {E_J} * prod_{i in J} (L-1)/(L^(e_i+1)-1)`.
///
/// Returns `infinity` exactly when some component with `e_i <= -1` lies in a
/// stratum whose class is nonzero. Strata with class zero contribute nothing
/// even when their factors diverge.
pub fn stringy_nc(data: &NcPairData) -> MotivicWeight {
    let mut total = MotivicWeight::zero();
    for stratum in &data.strata {
        if stratum.class.is_zero() {
            continue;
        }
        let mut term = stratum.class.clone();
        for id in &stratum.subset {
            let factor = MotivicWeight::stringy_factor(data.coefficient_of(id));
            if factor.is_infinite() {
                return MotivicWeight::Infinite;
            }
            term = term.mul(&factor);
        }
        total = total.add(&term);
    }
    total
}

/// KLT test on coefficient data: every component (restricted to those
/// meeting `W` when `w_restricted` is set) must have coefficient `< 1`.
///
/// The coefficients here are divisor coefficients `u_i`, which diverge at
/// `u_i >= 1`. Callers holding relative-canonical coefficients `e_i`
/// (the convention stored by [`NcPairData`] for [`stringy_nc`]) pass
/// `u_i = -e_i`; see [`NcPairData::klt_view`].
pub fn klt_nc(data: &NcPairData, w_restricted: bool) -> bool {
    data.components
        .iter()
        .filter(|c| !w_restricted || c.meets_w)
        .all(|c| c.coefficient < rat_int(1))
}

impl NcPairData {
    /// The same pair with coefficients negated: relative-canonical
    /// coefficients `e_i` become the divisor coefficients `u_i = -e_i`
    /// expected by [`klt_nc`].
    pub fn klt_view(&self) -> NcPairData {
        NcPairData {
            ambient_class: self.ambient_class.clone(),
            components: self
                .components
                .iter()
                .map(|c| Component {
                    id: c.id.clone(),
                    coefficient: -&c.coefficient,
                    meets_w: c.meets_w,
                })
                .collect(),
            strata: self.strata.clone(),
        }
    }
}

/// Divisor weights on the coordinates of one twisted sector of a diagonal
/// action: each weighted coordinate is matched to its eigenvalue exponent
/// class `1..=l` (the fixed bucket is `l`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorDivisorData {
    pub sector: TwistedSector,
    /// `(exponent class, weight u)` per weighted coordinate.
    pub weights: Vec<(u64, Rational)>,
}

/// Convergence report of the fiber integral over one twisted sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub converges: bool,
    /// Supremum of per-term dimensions: `sum u_i * a_i / l + shift` when the
    /// series converges, `+infinity` otherwise.
    pub dim_sup: Dim,
}

/// Convergence of the twisted fiber integral for the given sector and
/// divisor weights.
///
/// The term indexed by contact orders `s` has dimension
/// `sum (u_i - 1) s_i + C` with `C = sum u_i a_i / l + shift`, so the series
/// converges exactly when every `u_i < 1`; the supremum is then attained at
/// `s = 0`.
pub fn sector_fiber_convergence(
    data: &SectorDivisorData,
) -> Result<ConvergenceReport, InvariantError> {
    let l = data.sector.order;
    let mut claimed: BTreeMap<u64, u64> = BTreeMap::new();
    for (exponent, _) in &data.weights {
        if *exponent == 0 || *exponent > l {
            return Err(InvariantError::InvalidExponent {
                exponent: *exponent,
                order: l,
            });
        }
        *claimed.entry(*exponent).or_insert(0) += 1;
    }
    for (&exponent, &count) in &claimed {
        let available = data.sector.exponent_mult[(exponent - 1) as usize];
        if count > available {
            return Err(InvariantError::CoordinateMismatch {
                exponent,
                claimed: count,
                available,
            });
        }
    }
    let converges = data.weights.iter().all(|(_, u)| u < &rat_int(1));
    if !converges {
        return Ok(ConvergenceReport {
            converges: false,
            dim_sup: Dim::PosInfinite,
        });
    }
    let mut dim = data.sector.shift.clone();
    for (exponent, u) in &data.weights {
        dim += u * Rational::new(BigInt::from(*exponent), BigInt::from(l));
    }
    Ok(ConvergenceReport {
        converges: true,
        dim_sup: Dim::Finite(dim),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Cyclotomic};
    use crate::matgroup::{close_group, CycMatrix};
    use crate::motivic::MotivicWeight;
    use crate::sectors::ExponentProfile;

    fn cyclic_diag(r: u64, weights: &[i64]) -> FiniteMatrixGroup {
        let diag: Vec<Cyclotomic> = weights
            .iter()
            .map(|&a| Cyclotomic::zeta_pow(r, a))
            .collect();
        close_group(&[CycMatrix::diagonal(&diag)], 10_000).unwrap()
    }

    fn l_pow(k: i64) -> MotivicWeight {
        MotivicWeight::from_l_power(&rat_int(k))
    }

    #[test]
    fn orbifold_weight_examples() {
        let trivial = close_group(&[CycMatrix::identity(2, 1)], 10).unwrap();
        assert_eq!(orbifold_weight(&trivial), l_pow(2));

        let pm = cyclic_diag(2, &[1, 1]);
        assert_eq!(orbifold_weight(&pm), l_pow(2).add(&l_pow(1)));

        let z3 = cyclic_diag(3, &[1, 1, 1]);
        assert_eq!(orbifold_weight(&z3), l_pow(3).add(&l_pow(2)).add(&l_pow(1)));
    }

    #[test]
    fn mckay_betti_examples() {
        let trivial = close_group(&[CycMatrix::identity(2, 1)], 10).unwrap();
        let betti = mckay_betti(&trivial);
        assert_eq!(betti.counts.len(), 1);
        assert_eq!(betti.counts[&rat_int(0)], 1);

        let z3 = mckay_betti(&cyclic_diag(3, &[1, 1, 1]));
        assert!(z3.in_sl);
        assert_eq!(z3.counts[&rat_int(0)], 1);
        assert_eq!(z3.counts[&rat_int(2)], 1);
        assert_eq!(z3.counts[&rat_int(4)], 1);
        assert_eq!(z3.total(), 3);

        // non-SL groups still get counts, with fractional keys
        let z3_10 = mckay_betti(&cyclic_diag(3, &[1, 0]));
        assert!(!z3_10.in_sl);
        assert_eq!(z3_10.counts[&rat(2, 3)], 1);
    }

    #[test]
    fn discrepancy_examples() {
        let pm = cyclic_diag(2, &[1, 1]);
        let report = discrepancy(&pm).unwrap();
        assert_eq!(report.discrepancy, rat_int(0));
        assert_eq!(report.min_age, rat_int(1));

        for r in 2..=6u64 {
            let g = cyclic_diag(r, &[1, 1]);
            let report = discrepancy(&g).unwrap();
            assert_eq!(report.discrepancy, rat(2, r as i64) - rat_int(1));
        }

        let a2 = cyclic_diag(3, &[1, 2]);
        assert_eq!(discrepancy(&a2).unwrap().discrepancy, rat_int(0));

        let trivial = close_group(&[CycMatrix::identity(2, 1)], 10).unwrap();
        assert_eq!(discrepancy(&trivial), Err(InvariantError::TrivialGroup));

        let refl = cyclic_diag(2, &[1, 0]);
        assert!(matches!(
            discrepancy(&refl),
            Err(InvariantError::HasReflections(_))
        ));
    }

    fn a1_pair(e: Rational) -> NcPairData {
        NcPairData {
            ambient_class: l_pow(2).add(&l_pow(1)),
            components: vec![Component {
                id: "E".to_string(),
                coefficient: e,
                meets_w: true,
            }],
            strata: vec![
                Stratum {
                    subset: vec![],
                    class: l_pow(2).sub(&MotivicWeight::one()),
                },
                Stratum {
                    subset: vec!["E".to_string()],
                    class: l_pow(1).add(&MotivicWeight::one()),
                },
            ],
        }
    }

    #[test]
    fn stringy_nc_examples() {
        // single empty stratum: the smooth case echoes the ambient class
        let smooth = NcPairData {
            ambient_class: l_pow(2),
            components: vec![],
            strata: vec![Stratum {
                subset: vec![],
                class: l_pow(2),
            }],
        };
        smooth.validate().unwrap();
        assert_eq!(stringy_nc(&smooth), l_pow(2));

        // crepant coefficients collapse to the ambient class
        let a1 = a1_pair(rat_int(0));
        a1.validate().unwrap();
        assert_eq!(stringy_nc(&a1), l_pow(2).add(&l_pow(1)));

        // the two-route check against the orbifold weight of {+-1}
        assert_eq!(stringy_nc(&a1), orbifold_weight(&cyclic_diag(2, &[1, 1])));

        // a coefficient at -1 diverges
        assert!(stringy_nc(&a1_pair(rat_int(-1))).is_infinite());
    }

    #[test]
    fn strata_validation_errors() {
        let mut bad = a1_pair(rat_int(0));
        bad.strata[1].class = l_pow(1);
        assert!(matches!(
            bad.validate(),
            Err(PairError::StrataNotPartition { .. })
        ));

        let mut dup = a1_pair(rat_int(0));
        dup.strata.push(Stratum {
            subset: vec!["E".to_string()],
            class: MotivicWeight::zero(),
        });
        assert!(matches!(dup.validate(), Err(PairError::DuplicateSubset(_))));

        let mut unknown = a1_pair(rat_int(0));
        unknown.strata[1].subset = vec!["F".to_string()];
        assert!(matches!(
            unknown.validate(),
            Err(PairError::UnknownComponent(_))
        ));

        let mut no_empty = a1_pair(rat_int(0));
        no_empty.strata.remove(0);
        no_empty.strata[0].class = l_pow(2).add(&l_pow(1));
        assert!(matches!(
            no_empty.validate(),
            Err(PairError::MissingEmptyStratum)
        ));
    }

    #[test]
    fn klt_examples() {
        let mk = |coeffs: &[Rational]| NcPairData {
            ambient_class: MotivicWeight::one(),
            components: coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| Component {
                    id: format!("D{i}"),
                    coefficient: c.clone(),
                    meets_w: true,
                })
                .collect(),
            strata: vec![],
        };
        assert!(klt_nc(&mk(&[rat(1, 2), rat_int(-3)]), false));
        assert!(!klt_nc(&mk(&[rat_int(1)]), false));

        // a boundary coefficient away from W is ignored under restriction
        let mut pair = mk(&[rat_int(1)]);
        pair.components[0].meets_w = false;
        assert!(klt_nc(&pair, true));
        assert!(!klt_nc(&pair, false));

        // klt_view negates relative-canonical coefficients
        let stringy_style = mk(&[rat_int(0), rat_int(-1)]);
        let view = stringy_style.klt_view();
        assert!(!klt_nc(&view, false));
    }

    #[test]
    fn sector_convergence_examples() {
        let minus = CycMatrix::diagonal(&[Cyclotomic::zeta(2), Cyclotomic::zeta(2)]);
        let group = close_group(std::slice::from_ref(&minus), 10).unwrap();
        let sectors = crate::sectors::inertia_decomposition(&group);
        let twisted = sectors
            .iter()
            .find(|s| s.order == 2)
            .expect("the -1 sector")
            .clone();
        assert_eq!(ExponentProfile::of(&minus).unwrap().shift(), rat_int(1));

        // no divisor: dimension is the shift number
        let bare = SectorDivisorData {
            sector: twisted.clone(),
            weights: vec![],
        };
        let report = sector_fiber_convergence(&bare).unwrap();
        assert!(report.converges);
        assert_eq!(report.dim_sup, Dim::Finite(rat_int(1)));

        // u = 1/2 on one exponent-1 coordinate: dim 1/2*1/2 + 1 = 5/4
        let weighted = SectorDivisorData {
            sector: twisted.clone(),
            weights: vec![(1, rat(1, 2))],
        };
        let report = sector_fiber_convergence(&weighted).unwrap();
        assert!(report.converges);
        assert_eq!(report.dim_sup, Dim::Finite(rat(5, 4)));

        // u = 1 diverges
        let critical = SectorDivisorData {
            sector: twisted.clone(),
            weights: vec![(1, rat_int(1))],
        };
        let report = sector_fiber_convergence(&critical).unwrap();
        assert!(!report.converges);
        assert_eq!(report.dim_sup, Dim::PosInfinite);

        // invalid coordinate references
        let bad_exponent = SectorDivisorData {
            sector: twisted.clone(),
            weights: vec![(3, rat(1, 2))],
        };
        assert!(matches!(
            sector_fiber_convergence(&bad_exponent),
            Err(InvariantError::InvalidExponent { .. })
        ));
        let too_many = SectorDivisorData {
            sector: twisted,
            weights: vec![(1, rat(1, 2)), (1, rat(1, 3)), (1, rat(1, 5))],
        };
        assert!(matches!(
            sector_fiber_convergence(&too_many),
            Err(InvariantError::CoordinateMismatch { .. })
        ));
    }
}
