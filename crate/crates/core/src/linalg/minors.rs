//! Largest minors by exhaustive enumeration.
//!
//! Computing the largest full-rank minor is NP-hard in general, so these
//! routines only target small matrices and refuse to run when the number of
//! candidate submatrices exceeds a cap.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::elim::{bareiss, int_rank};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Default limit on the number of square submatrices a single call may visit.
pub const DEFAULT_SUBMATRIX_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeltaMode {
    /// Largest absolute minor of size `rank(M)`.
    FullRank,
    /// Largest absolute minor of any size.
    Max,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

pub(crate) fn square_submatrix_count(rows: usize, cols: usize, size: usize) -> u128 {
    binomial(rows, size).saturating_mul(binomial(cols, size))
}

fn minor(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    bareiss(
        rows.iter()
            .map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect())
            .collect(),
    )
}

/// Largest absolute value over all `size x size` minors.
pub fn max_minor_of_size(m: &IntMatrix, size: usize, cap: u128) -> Result<BigInt> {
    let count = square_submatrix_count(m.rows(), m.cols(), size);
    if count > cap {
        return Err(Error::cap("square submatrices", count, cap));
    }
    let mut best = BigInt::zero();
    for rows in (0..m.rows()).combinations(size) {
        for cols in (0..m.cols()).combinations(size) {
            let d = minor(m, &rows, &cols).abs();
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

pub fn delta(m: &IntMatrix, mode: DeltaMode) -> Result<BigInt> {
    delta_with_cap(m, mode, DEFAULT_SUBMATRIX_CAP)
}

pub fn delta_with_cap(m: &IntMatrix, mode: DeltaMode, cap: u128) -> Result<BigInt> {
    match mode {
        DeltaMode::FullRank => {
            let r = int_rank(m);
            if r == 0 {
                return Err(Error::UndefinedRank);
            }
            max_minor_of_size(m, r, cap)
        }
        DeltaMode::Max => {
            let top = m.rows().min(m.cols());
            let total = (1..=top)
                .map(|s| square_submatrix_count(m.rows(), m.cols(), s))
                .fold(0u128, u128::saturating_add);
            if total > cap {
                return Err(Error::cap("square submatrices", total, cap));
            }
            let mut best = BigInt::zero();
            for s in 1..=top {
                let d = max_minor_of_size(m, s, cap)?;
                if d > best {
                    best = d;
                }
            }
            Ok(best)
        }
    }
}
