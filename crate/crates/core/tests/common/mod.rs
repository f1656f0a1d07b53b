#![allow(dead_code)]

//! Shared fixture groups and the numeric eigendecomposition oracle used to
//! cross-check the exact eigenvalue-exponent pipeline.

use omk_core::exactnum::{parse_cyclotomic, Cyclotomic};
use omk_core::matgroup::{close_group, element_order, CycMatrix, FiniteMatrixGroup};

pub fn mat(order: u64, rows: &[&[&str]]) -> CycMatrix {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_cyclotomic(s, order).unwrap())
                .collect()
        })
        .collect();
    CycMatrix::from_rows(rows).unwrap()
}

pub fn cyclic_diag(r: u64, weights: &[i64]) -> FiniteMatrixGroup {
    let diag: Vec<Cyclotomic> = weights
        .iter()
        .map(|&a| Cyclotomic::zeta_pow(r, a))
        .collect();
    close_group(&[CycMatrix::diagonal(&diag)], 100_000).unwrap()
}

pub fn quaternion() -> FiniteMatrixGroup {
    let i = mat(4, &[&["z", "0"], &["0", "-z"]]);
    let j = mat(4, &[&["0", "-1"], &["1", "0"]]);
    close_group(&[i, j], 100_000).unwrap()
}

/// Binary icosahedral group of order 120 over `Q(zeta_5)`.
pub fn binary_icosahedral() -> FiniteMatrixGroup {
    let sigma = mat(5, &[&["z^3", "0"], &["0", "z^2"]]);
    let tau = mat(
        5,
        &[
            &[
                "-1/5*z - 2/5*z^2 + 2/5*z^3 + 1/5*z^4",
                "2/5*z - 1/5*z^2 + 1/5*z^3 - 2/5*z^4",
            ],
            &[
                "2/5*z - 1/5*z^2 + 1/5*z^3 - 2/5*z^4",
                "1/5*z + 2/5*z^2 - 2/5*z^3 - 1/5*z^4",
            ],
        ],
    );
    close_group(&[sigma, tau], 100_000).unwrap()
}

/// Signed permutations of four coordinates, order 384.
pub fn signed_permutations_b4() -> FiniteMatrixGroup {
    let cycle = mat(
        1,
        &[
            &["0", "0", "0", "1"],
            &["1", "0", "0", "0"],
            &["0", "1", "0", "0"],
            &["0", "0", "1", "0"],
        ],
    );
    let swap = mat(
        1,
        &[
            &["0", "1", "0", "0"],
            &["1", "0", "0", "0"],
            &["0", "0", "1", "0"],
            &["0", "0", "0", "1"],
        ],
    );
    let flip = mat(
        1,
        &[
            &["-1", "0", "0", "0"],
            &["0", "1", "0", "0"],
            &["0", "0", "1", "0"],
            &["0", "0", "0", "1"],
        ],
    );
    close_group(&[cycle, swap, flip], 100_000).unwrap()
}

/// The wreath-type unitary reflection group of order 18 in degree 2.
pub fn wreath_18() -> FiniteMatrixGroup {
    let scale = mat(3, &[&["z", "0"], &["0", "1"]]);
    let swap = mat(3, &[&["0", "1"], &["1", "0"]]);
    close_group(&[scale, swap], 100_000).unwrap()
}

/// A cyclic group of order 6 conjugated away from diagonal form.
pub fn conjugated_z6() -> FiniteMatrixGroup {
    let g = mat(
        6,
        &[&["2*z - z^5", "-z + z^5"], &["2*z - 2*z^5", "-z + 2*z^5"]],
    );
    close_group(&[g], 100_000).unwrap()
}

// ---- numeric eigendecomposition oracle ------------------------------------
//
// Completely independent route to the exponent multiplicities: evaluate the
// matrix in double precision, and for each l-th root of unity compute the
// eigenspace dimension as degree minus the numeric rank of (g - zeta^j I).
// Finite-order matrices are diagonalizable, so geometric and algebraic
// multiplicities agree.

type C = (f64, f64);

fn c_sub(a: C, b: C) -> C {
    (a.0 - b.0, a.1 - b.1)
}

fn c_mul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn c_div(a: C, b: C) -> C {
    let q = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / q, (a.1 * b.0 - a.0 * b.1) / q)
}

fn c_abs(a: C) -> f64 {
    a.0.hypot(a.1)
}

fn complex_rank(mut m: Vec<Vec<C>>, tol: f64) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let pivot =
            (rank..rows).max_by(|&a, &b| c_abs(m[a][col]).partial_cmp(&c_abs(m[b][col])).unwrap());
        let pivot = match pivot {
            Some(p) if c_abs(m[p][col]) > tol => p,
            _ => {
                col += 1;
                continue;
            }
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let factor = c_div(row[col], pivot_row[col]);
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                let delta = c_mul(factor, *pv);
                row[c] = c_sub(row[c], delta);
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Exponent multiplicities measured numerically, matching each eigenvalue to
/// a root of unity within `1e-6`.
pub fn numeric_exponent_multiplicities(g: &CycMatrix) -> Vec<u64> {
    let l = element_order(g).expect("finite order");
    let d = g.degree();
    let numeric: Vec<Vec<C>> = (0..d)
        .map(|i| (0..d).map(|j| g.entry(i, j).to_complex()).collect())
        .collect();
    (1..=l)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (l as f64);
            let lambda = (theta.cos(), theta.sin());
            let mut shifted = numeric.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = c_sub(row[i], lambda);
            }
            (d - complex_rank(shifted, 1e-6)) as u64
        })
        .collect()
}
