use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{binomial, delta_with_cap, det, int_rank, DeltaMode, IntMatrix, DEFAULT_SUBMATRIX_CAP};

/// Whether every `n x n` row submatrix of the `m x n` matrix `A` is
/// nonsingular.
///
/// ```
/// use integrality::asymptotic::is_nondegenerate;
/// use integrality::linalg::IntMatrix;
///
/// let simplex = IntMatrix::from_i64(&[[1, 0], [0, 1], [1, 1]]).unwrap();
/// assert!(is_nondegenerate(&simplex).unwrap());
/// let twice = IntMatrix::from_i64(&[[1, 2], [1, 2], [0, 1]]).unwrap();
/// assert!(!is_nondegenerate(&twice).unwrap());
/// ```
pub fn is_nondegenerate(a: &IntMatrix) -> Result<bool> {
    is_nondegenerate_with_cap(a, DEFAULT_SUBMATRIX_CAP)
}

pub fn is_nondegenerate_with_cap(a: &IntMatrix, cap: u128) -> Result<bool> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Ok(false);
    }
    let count = binomial(m, n);
    if count > cap {
        return Err(Error::cap("maximal row submatrices", count, cap));
    }
    for rows in (0..m).combinations(n) {
        if det(&a.select_rows(&rows))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `m <= n + Delta(A)^2` for a non-degenerate `A`, which always holds; kept
/// as an executable check.
pub fn nondeg_row_bound_check(a: &IntMatrix) -> Result<bool> {
    if !is_nondegenerate(a)? {
        return Err(Error::Precondition("matrix is degenerate".into()));
    }
    let (m, n) = (a.rows(), a.cols());
    if int_rank(a) < n {
        return Err(Error::RankDeficient {
            rank: int_rank(a),
            expected: n,
        });
    }
    let d = delta_with_cap(a, DeltaMode::FullRank, DEFAULT_SUBMATRIX_CAP)?;
    Ok(BigInt::from(m) <= BigInt::from(n) + &d * &d)
}
