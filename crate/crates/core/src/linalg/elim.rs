//! Elimination-based primitives: determinants, rank, row bases, solving and
//! inversion. Integer determinants are fraction-free; everything else works
//! over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Determinant by Bareiss elimination. Every intermediate value is itself a
/// minor of the input, so nothing is ever rounded.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(bareiss(m.row_vecs()))
}

pub(crate) fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * pivot - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Incrementally maintained reduced row echelon form. Rows are fed in order;
/// [`RowReducer::insert`] reports whether a row was independent of the ones
/// before it.
#[derive(Clone, Debug, Default)]
pub struct RowReducer {
    basis: Vec<(usize, Vec<BigRational>)>,
}

impl RowReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, row: &mut [BigRational]) {
        for (p, b) in &self.basis {
            if row[*p].is_zero() {
                continue;
            }
            let f = row[*p].clone();
            for (x, y) in row.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    /// Reduces `row` against the basis and keeps it if something is left.
    pub fn insert(&mut self, mut row: Vec<BigRational>) -> bool {
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for (_, b) in self.basis.iter_mut() {
            if !b[p].is_zero() {
                let f = b[p].clone();
                for (x, y) in b.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.basis.push((p, row));
        true
    }

    pub fn contains(&self, row: &[BigRational]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(Zero::is_zero)
    }
}

/// Indices of the rows kept by a greedy scan in row order: each row is kept
/// when it is independent of the rows kept before it.
pub fn row_basis(m: &RatMatrix) -> Vec<usize> {
    let mut red = RowReducer::new();
    (0..m.rows())
        .filter(|&i| red.insert(m.row(i).to_vec()))
        .collect()
}

pub fn rank(m: &RatMatrix) -> usize {
    row_basis(m).len()
}

pub fn int_rank(m: &IntMatrix) -> usize {
    rank(&m.to_rat())
}

/// Exact solution of `m * x = rhs`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve(m: &RatMatrix, rhs: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(m.rows(), rhs.rows(), "solve: row counts differ");
    let (rows, cols, k) = (m.rows(), m.cols(), rhs.cols());
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend_from_slice(rhs.row(i));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in dst.iter_mut().zip(src.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // rows r.. have an all-zero left block
    for row in a.iter().skip(r) {
        if row[cols..].iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    let mut x = RatMatrix::zeros(cols, k);
    for (i, &c) in pivots.iter().enumerate() {
        for j in 0..k {
            x[(c, j)] = a[i][cols + j].clone();
        }
    }
    Some(x)
}

pub fn inverse(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "inverse of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if rank(m) < m.rows() {
        return Err(Error::Singular);
    }
    solve(m, &RatMatrix::identity(m.rows())).ok_or(Error::Singular)
}

/// Inverse of a unimodular integer matrix, which is again integral.
pub fn unimodular_inverse(u: &IntMatrix) -> Result<IntMatrix> {
    let d = det(u)?;
    if d.abs() != BigInt::one() {
        return Err(Error::Precondition(format!(
            "matrix has determinant {d}, not +-1"
        )));
    }
    inverse(&u.to_rat())?
        .to_int()
        .ok_or_else(|| Error::Consistency("inverse of a unimodular matrix is not integral".into()))
}

/// Coefficients `x` with `x^T * w = v`, i.e. `v` written as a combination of
/// the rows of `w`.
pub fn row_combination(w: &RatMatrix, v: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(w.cols(), v.len(), "row_combination: length mismatch");
    let rhs = RatMatrix::new(v.len(), 1, v.to_vec()).expect("column vector");
    solve(&w.transpose(), &rhs).map(|x| x.col(0))
}
