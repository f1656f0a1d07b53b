//! Square matrices with entries in a single cyclotomic field.
//!
//! All entries share the matrix's cyclotomic order, and every entry is in
//! canonical form, so derived equality, hashing and lexicographic ordering
//! over the entry list are injective on matrix values. That ordering is the
//! canonical one used to pick deterministic conjugacy-class representatives.

use super::group::GroupError;
use crate::exactnum::{CycError, Cyclotomic};
use num::integer::lcm;

/// A `degree x degree` matrix over `Q(zeta_order)`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycMatrix {
    degree: usize,
    order: u64,
    entries: Vec<Cyclotomic>,
}

impl CycMatrix {
    /// Build from rows, lifting all entries to their common (lcm) cyclotomic
    /// order. Fails when the grid is not square.
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<CycMatrix, GroupError> {
        let degree = rows.len();
        if degree == 0 || rows.iter().any(|r| r.len() != degree) {
            return Err(GroupError::NotSquare);
        }
        let mut order = 1u64;
        for row in &rows {
            for e in row {
                order = lcm(order, e.order());
            }
        }
        let mut entries = Vec::with_capacity(degree * degree);
        for row in rows {
            for e in row {
                entries.push(e.embed(order).expect("entry order divides lcm"));
            }
        }
        Ok(CycMatrix {
            degree,
            order,
            entries,
        })
    }

    pub fn identity(degree: usize, order: u64) -> CycMatrix {
        let mut entries = vec![Cyclotomic::zero(order); degree * degree];
        for i in 0..degree {
            entries[i * degree + i] = Cyclotomic::one(order);
        }
        CycMatrix {
            degree,
            order,
            entries,
        }
    }

    pub fn diagonal(diag: &[Cyclotomic]) -> CycMatrix {
        let degree = diag.len();
        let order = diag.iter().fold(1, |acc, e| lcm(acc, e.order()));
        let mut entries = vec![Cyclotomic::zero(order); degree * degree];
        for (i, e) in diag.iter().enumerate() {
            entries[i * degree + i] = e.embed(order).expect("entry order divides lcm");
        }
        CycMatrix {
            degree,
            order,
            entries,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Cyclotomic order of the entry field.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn entry(&self, row: usize, col: usize) -> &Cyclotomic {
        &self.entries[row * self.degree + col]
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(idx, e)| {
            if idx / self.degree == idx % self.degree {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    /// Matrix product. Panics when degrees or cyclotomic orders differ;
    /// group-level code always normalizes both beforehand.
    pub fn mul(&self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!(self.degree, rhs.degree, "matrix degree mismatch");
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        let d = self.degree;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Cyclotomic::zero(self.order);
                for k in 0..d {
                    let term = self.entry(i, k).mul(rhs.entry(k, j));
                    acc = acc.add(&term);
                }
                entries.push(acc);
            }
        }
        CycMatrix {
            degree: d,
            order: self.order,
            entries,
        }
    }

    pub fn pow(&self, mut exp: u64) -> CycMatrix {
        let mut acc = CycMatrix::identity(self.degree, self.order);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.order);
        for i in 0..self.degree {
            acc = acc.add(self.entry(i, i));
        }
        acc
    }

    /// Lift every entry into `Q(zeta_target)`.
    pub fn embed(&self, target_order: u64) -> Result<CycMatrix, CycError> {
        if target_order == self.order {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(target_order))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycMatrix {
            degree: self.degree,
            order: target_order,
            entries,
        })
    }

    /// Exact determinant by Gaussian elimination over the field, tracking
    /// row swaps in the sign.
    pub fn determinant(&self) -> Cyclotomic {
        let d = self.degree;
        let mut m = self.entries.clone();
        let at = |m: &[Cyclotomic], i: usize, j: usize| m[i * d + j].clone();
        let mut det = Cyclotomic::one(self.order);
        for col in 0..d {
            let pivot_row = match (col..d).find(|&r| !at(&m, r, col).is_zero()) {
                Some(r) => r,
                None => return Cyclotomic::zero(self.order),
            };
            if pivot_row != col {
                for j in 0..d {
                    m.swap(col * d + j, pivot_row * d + j);
                }
                det = det.neg();
            }
            let pivot = at(&m, col, col);
            det = det.mul(&pivot);
            let pivot_inv = pivot.inv().expect("pivot is nonzero");
            for r in (col + 1)..d {
                let factor = at(&m, r, col).mul(&pivot_inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..d {
                    let delta = factor.mul(&at(&m, col, j));
                    m[r * d + j] = at(&m, r, j).sub(&delta);
                }
            }
        }
        det
    }
}
