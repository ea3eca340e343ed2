//! Hermite normal form by integer column operations.
//!
//! For a full column rank `A` the rows are reordered so that the top `n x n`
//! block of `H = P A U` reads
//!
//! ```text
//!     [ I   0 ]
//!     [ *   L ]
//! ```
//!
//! where the first `n - ell` rows form an identity block and `L` is lower
//! triangular with diagonal entries `alpha_1, ..., alpha_ell >= 2`. Every
//! entry left of a diagonal entry `d` lies in `[0, d - 1]` and every entry
//! right of the diagonal is zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::elim::row_basis;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfForm {
    /// Unimodular `n x n` transform.
    pub u: IntMatrix,
    /// `H = (rows of A in row_permutation order) * U`.
    pub h: IntMatrix,
    /// Row `i` of `h` comes from row `row_permutation[i]` of `A`.
    pub row_permutation: Vec<usize>,
    /// Number of diagonal entries of the top block that are at least 2.
    pub ell: usize,
    pub alphas: Vec<BigInt>,
    /// Product of `alphas`, equal to the determinant of the top block.
    pub delta: BigInt,
}

impl HnfForm {
    pub fn n(&self) -> usize {
        self.u.rows()
    }

    /// The top `n x n` block.
    pub fn top(&self) -> IntMatrix {
        self.h.row_range(0, self.n())
    }

    /// The `ell x n` block of rows with non-unit diagonal.
    pub fn lower_block(&self) -> IntMatrix {
        let n = self.n();
        self.h.row_range(n - self.ell, n)
    }

    /// The `ell x ell` lower-triangular block carrying the alphas.
    pub fn lambda(&self) -> IntMatrix {
        let n = self.n();
        self.lower_block().col_range(n - self.ell, n)
    }

    /// Rows below the top block.
    pub fn remainder(&self) -> IntMatrix {
        self.h.row_range(self.n(), self.h.rows())
    }
}

/// Replaces columns `p` and `c` by `x*col_p + y*col_c` and `s*col_p + t*col_c`.
fn combine_columns(
    rows: &mut [Vec<BigInt>],
    p: usize,
    c: usize,
    (x, y, s, t): (&BigInt, &BigInt, &BigInt, &BigInt),
) {
    for r in rows.iter_mut() {
        let (a, b) = (r[p].clone(), r[c].clone());
        r[p] = x * &a + y * &b;
        r[c] = s * &a + t * &b;
    }
}

fn add_column_multiple(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for r in rows.iter_mut() {
        if !r[src].is_zero() {
            let v = q * &r[src];
            r[dst] += v;
        }
    }
}

fn negate_column(rows: &mut [Vec<BigInt>], c: usize) {
    for r in rows.iter_mut() {
        r[c] = -r[c].clone();
    }
}

/// Working state for column reduction: the full matrix together with the
/// accumulated unimodular transform.
struct ColumnReducer {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
}

impl ColumnReducer {
    fn new(a: &IntMatrix) -> Self {
        let n = a.cols();
        ColumnReducer {
            a: a.row_vecs(),
            u: IntMatrix::identity(n).row_vecs(),
        }
    }

    fn combine(&mut self, p: usize, c: usize, coeffs: (&BigInt, &BigInt, &BigInt, &BigInt)) {
        combine_columns(&mut self.a, p, c, coeffs);
        combine_columns(&mut self.u, p, c, coeffs);
    }

    /// Clears row `row` to the right of column `p` and makes the entry at `p`
    /// positive.
    fn pivot(&mut self, row: usize, p: usize) {
        let n = self.u.len();
        for c in p + 1..n {
            if self.a[row][c].is_zero() {
                continue;
            }
            let a = self.a[row][p].clone();
            let b = self.a[row][c].clone();
            let e = a.extended_gcd(&b);
            let g = e.gcd;
            let s = -(&b / &g);
            let t = &a / &g;
            self.combine(p, c, (&e.x, &e.y, &s, &t));
        }
        if self.a[row][p].is_negative() {
            negate_column(&mut self.a, p);
            negate_column(&mut self.u, p);
        }
    }

    /// Brings entries left of the diagonal into `[0, d - 1]`. `order[i]` is
    /// the row that owns pivot column `i`.
    fn reduce_left(&mut self, order: &[usize]) {
        for (i, &row) in order.iter().enumerate() {
            let d = self.a[row][i].clone();
            for j in 0..i {
                let q = self.a[row][j].div_floor(&d);
                if q.is_zero() {
                    continue;
                }
                let neg = -q;
                add_column_multiple(&mut self.a, j, i, &neg);
                add_column_multiple(&mut self.u, j, i, &neg);
            }
        }
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Hermite normal form of a full column rank matrix.
///
/// The top block uses the first `n` linearly independent rows of `A` in row
/// order. Among those, rows are pinned greedily: while some remaining row can
/// produce a unit diagonal entry, the one with the smallest index is taken.
/// Once none can, no later row can either, so the unit diagonal entries form
/// a leading identity block.
pub fn hnf(a: &IntMatrix) -> Result<HnfForm> {
    let (m, n) = (a.rows(), a.cols());
    if n == 0 {
        return Err(Error::Shape("matrix has no columns".into()));
    }
    let basis = row_basis(&a.to_rat());
    if basis.len() < n {
        return Err(Error::RankDeficient {
            rank: basis.len(),
            expected: n,
        });
    }
    let basis = &basis[..n];

    let mut red = ColumnReducer::new(a);
    let mut remaining: Vec<usize> = basis.to_vec();
    let mut order = Vec::with_capacity(n);
    for p in 0..n {
        let pick = remaining
            .iter()
            .position(|&r| content(&red.a[r][p..]).is_one())
            .unwrap_or(0);
        let row = remaining.remove(pick);
        red.pivot(row, p);
        debug_assert!(red.a[row][p].is_positive());
        order.push(row);
    }
    red.reduce_left(&order);

    let diag: Vec<BigInt> = order
        .iter()
        .enumerate()
        .map(|(i, &r)| red.a[r][i].clone())
        .collect();
    let ell = diag.iter().filter(|d| !d.is_one()).count();
    if diag[..n - ell].iter().any(|d| !d.is_one()) {
        return Err(Error::Consistency(
            "unit diagonal entries do not form a leading block".into(),
        ));
    }
    let alphas = diag[n - ell..].to_vec();
    let delta = alphas.iter().fold(BigInt::one(), |acc, x| acc * x);

    let mut perm = order.clone();
    perm.extend((0..m).filter(|r| !order.contains(r)));
    let h = IntMatrix::from_rows_with_cols(perm.iter().map(|&r| red.a[r].clone()).collect(), n)?;
    let u = IntMatrix::from_rows_with_cols(red.u, n)?;
    Ok(HnfForm {
        u,
        h,
        row_permutation: perm,
        ell,
        alphas,
        delta,
    })
}

/// Lower-triangularises an invertible square matrix by column operations,
/// keeping the row order. Returns `(H, U)` with `H = B U` and a positive
/// diagonal.
pub(crate) fn lower_triangular(b: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let n = b.rows();
    let mut red = ColumnReducer::new(b);
    for p in 0..n {
        if red.a[p][p..].iter().all(Zero::is_zero) {
            return Err(Error::Singular);
        }
        red.pivot(p, p);
    }
    let order: Vec<usize> = (0..n).collect();
    red.reduce_left(&order);
    Ok((
        IntMatrix::from_rows_with_cols(red.a, n)?,
        IntMatrix::from_rows_with_cols(red.u, n)?,
    ))
}

/// Checks every structural property of an [`HnfForm`] against the input.
/// Used by tests and by callers that want to re-validate a stored form.
pub fn check_hnf(a: &IntMatrix, f: &HnfForm) -> std::result::Result<(), String> {
    let n = a.cols();
    let d = super::elim::det(&f.u).map_err(|e| e.to_string())?;
    if d.abs() != BigInt::one() {
        return Err(format!("|det U| = {}", d.abs()));
    }
    let mut sorted = f.row_permutation.clone();
    sorted.sort_unstable();
    if sorted != (0..a.rows()).collect::<Vec<_>>() {
        return Err("row permutation is not a permutation".into());
    }
    if &a.select_rows(&f.row_permutation) * &f.u != f.h {
        return Err("H != PAU".into());
    }
    let k = n - f.ell;
    for i in 0..n {
        let diag = &f.h[(i, i)];
        for j in 0..n {
            let x = &f.h[(i, j)];
            if j > i && !x.is_zero() {
                return Err(format!("nonzero entry above the diagonal at ({i},{j})"));
            }
            if j < i && (x.is_negative() || x >= diag) {
                return Err(format!("unreduced entry at ({i},{j})"));
            }
        }
        if i < k && !diag.is_one() {
            return Err(format!("diagonal entry {i} should be 1"));
        }
        if i >= k && diag < &BigInt::from(2) {
            return Err(format!("diagonal entry {i} should be at least 2"));
        }
    }
    let diag: Vec<BigInt> = (k..n).map(|i| f.h[(i, i)].clone()).collect();
    if diag != f.alphas {
        return Err("alphas do not match the diagonal".into());
    }
    let prod = f.alphas.iter().fold(BigInt::one(), |acc, x| acc * x);
    if prod != f.delta {
        return Err("delta is not the product of the alphas".into());
    }
    let top_det = super::elim::det(&f.top()).map_err(|e| e.to_string())?;
    if top_det != f.delta {
        return Err("delta differs from the determinant of the top block".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_already_reduced() {
        let a = IntMatrix::identity(2);
        let f = hnf(&a).unwrap();
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.h, IntMatrix::identity(2));
        assert_eq!(f.ell, 0);
        assert_eq!(f.delta, BigInt::one());
        check_hnf(&a, &f).unwrap();
    }

    #[test]
    fn unimodular_square_reduces_to_identity() {
        let a = IntMatrix::from_i64(&[[2, 1], [1, 1]]).unwrap();
        let f = hnf(&a).unwrap();
        assert_eq!(f.top(), IntMatrix::identity(2));
        assert_eq!(f.delta, BigInt::one());
        check_hnf(&a, &f).unwrap();
    }

    #[test]
    fn three_by_two_example() {
        let a = IntMatrix::from_i64(&[[2, 0], [0, 3], [1, 1]]).unwrap();
        let f = hnf(&a).unwrap();
        check_hnf(&a, &f).unwrap();
        assert_eq!(f.delta, BigInt::from(6));
        assert_eq!(f.ell, 2);
        assert_eq!(&f.row_permutation[..2], &[0, 1]);
    }

    #[test]
    fn unit_rows_are_pinned_first() {
        // in row order the second row would give a unit pivot after a non-unit one
        let a = IntMatrix::from_i64(&[[2, 0], [1, 1]]).unwrap();
        let f = hnf(&a).unwrap();
        check_hnf(&a, &f).unwrap();
        assert_eq!(f.row_permutation, vec![1, 0]);
        assert_eq!(f.ell, 1);
        assert_eq!(f.alphas, vec![BigInt::from(2)]);
    }

    #[test]
    fn worked_example_block_structure() {
        let a = IntMatrix::from_i64(&[[1, 0, 0], [0, 1, 0], [2, 4, 5], [1, 4, 4], [2, 2, 3]]).unwrap();
        let f = hnf(&a).unwrap();
        check_hnf(&a, &f).unwrap();
        assert_eq!(f.delta, BigInt::from(5));
        assert_eq!(f.ell, 1);
        assert_eq!(f.remainder().rows(), 2);
    }

    #[test]
    fn rank_deficient_input_is_rejected() {
        let a = IntMatrix::from_i64(&[[1, 2], [2, 4]]).unwrap();
        assert!(matches!(hnf(&a), Err(Error::RankDeficient { rank: 1, expected: 2 })));
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_i64(&[[3, -2, 1], [4, 1, -3], [-1, 2, 2], [0, 5, 1]]).unwrap();
        assert_eq!(hnf(&a).unwrap(), hnf(&a).unwrap());
        check_hnf(&a, &hnf(&a).unwrap()).unwrap();
    }
}
