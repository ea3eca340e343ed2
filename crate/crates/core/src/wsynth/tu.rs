//! Total unimodularity by brute force.
//!
//! Both checks first shrink the matrix: zero rows and columns are dropped,
//! and rows (then columns) equal up to sign to an earlier one are removed.
//! None of this changes whether the matrix is totally unimodular, and it
//! keeps matrices built from covers, which repeat columns heavily, small.

use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{bareiss, square_submatrix_count, IntMatrix, DEFAULT_SUBMATRIX_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TuMethod {
    /// Every square subdeterminant.
    Exhaustive,
    /// Every row subset has a signing with column sums in `{-1, 0, 1}`.
    GhouilaHouri,
    /// Exhaustive when the reduced matrix has at most six rows or columns,
    /// Ghouila-Houri otherwise.
    Auto,
}

/// Largest row-subset count the Ghouila-Houri check accepts.
pub const GHOUILA_HOURI_CAP: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuReport {
    pub is_tu: bool,
    /// The method that actually ran.
    pub method: TuMethod,
    /// Shape after dropping zero and repeated rows and columns.
    pub reduced_shape: (usize, usize),
    /// Square submatrices or row subsets examined.
    pub checked: u128,
    /// A description of the first obstruction found.
    pub violation: Option<String>,
}

fn small_entries(w: &IntMatrix) -> Option<Vec<Vec<i8>>> {
    w.row_vecs()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_i8().filter(|v| v.abs() <= 1)).collect())
        .collect()
}

fn dedup_rows(rows: Vec<Vec<i8>>) -> Vec<Vec<i8>> {
    let mut seen: HashSet<Vec<i8>> = HashSet::new();
    let mut out = Vec::new();
    for r in rows {
        if r.iter().all(|&x| x == 0) {
            continue;
        }
        let neg: Vec<i8> = r.iter().map(|x| -x).collect();
        if seen.contains(&r) || seen.contains(&neg) {
            continue;
        }
        seen.insert(r.clone());
        out.push(r);
    }
    out
}

fn transpose(rows: &[Vec<i8>], cols: usize) -> Vec<Vec<i8>> {
    (0..cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}

/// The reduced matrix, oriented with no more rows than columns.
fn reduce(w: &IntMatrix) -> Vec<Vec<i8>> {
    let rows = small_entries(w).expect("entries checked by the caller");
    let rows = dedup_rows(rows);
    let cols = dedup_rows(transpose(&rows, w.cols()));
    // `cols` is the transpose of the reduced matrix
    if cols.len() <= rows.len() {
        cols
    } else if cols.is_empty() {
        Vec::new()
    } else {
        transpose(&cols, cols[0].len())
    }
}

fn exhaustive(m: &[Vec<i8>], cap: u128) -> Result<(u128, Option<String>)> {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let total = (1..=r.min(c))
        .map(|s| square_submatrix_count(r, c, s))
        .fold(0u128, u128::saturating_add);
    if total > cap {
        return Err(Error::cap("square submatrices", total, cap));
    }
    for s in 2..=r.min(c) {
        let row_sets: Vec<Vec<usize>> = (0..r).combinations(s).collect();
        let bad = row_sets.into_par_iter().find_map_first(|rows| {
            (0..c).combinations(s).find_map(|cols| {
                let sub: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| BigInt::from(m[i][j])).collect())
                    .collect();
                let d = bareiss(sub);
                (d.abs() > BigInt::one()).then(|| format!("rows {rows:?}, columns {cols:?} have determinant {d}"))
            })
        });
        if bad.is_some() {
            return Ok((total, bad));
        }
    }
    Ok((total, None))
}

/// Searches for signs on `rows` making every column sum lie in `{-1, 0, 1}`.
fn signable(m: &[Vec<i8>], rows: &[usize]) -> bool {
    let c = m.first().map_or(0, Vec::len);
    // remaining[d][j]: nonzeros of column j among rows[d..]
    let mut remaining = vec![vec![0i32; c]; rows.len() + 1];
    for d in (0..rows.len()).rev() {
        for j in 0..c {
            remaining[d][j] = remaining[d + 1][j] + i32::from(m[rows[d]][j] != 0);
        }
    }
    let mut sums = vec![0i32; c];
    fn go(m: &[Vec<i8>], rows: &[usize], d: usize, sums: &mut [i32], remaining: &[Vec<i32>]) -> bool {
        if d == rows.len() {
            return sums.iter().all(|s| s.abs() <= 1);
        }
        let row = &m[rows[d]];
        // the first row's sign is free by symmetry
        let signs: &[i32] = if d == 0 { &[1] } else { &[1, -1] };
        for &s in signs {
            let mut ok = true;
            for j in 0..sums.len() {
                sums[j] += s * i32::from(row[j]);
                if sums[j].abs() > 1 + remaining[d + 1][j] {
                    ok = false;
                }
            }
            if ok && go(m, rows, d + 1, sums, remaining) {
                return true;
            }
            for j in 0..sums.len() {
                sums[j] -= s * i32::from(row[j]);
            }
        }
        false
    }
    go(m, rows, 0, &mut sums, &remaining)
}

fn ghouila_houri(m: &[Vec<i8>], cap: u128) -> Result<(u128, Option<String>)> {
    let r = m.len();
    let subsets = 1u128.checked_shl(r as u32).unwrap_or(u128::MAX);
    if subsets > cap || r > 62 {
        return Err(Error::cap("row subsets", subsets, cap));
    }
    let bad = (1u64..(1u64 << r)).into_par_iter().find_map_first(|mask| {
        let rows: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        (!signable(m, &rows)).then(|| format!("rows {rows:?} admit no balanced signing"))
    });
    Ok((subsets, bad))
}

/// Checks total unimodularity of an integer matrix.
///
/// ```
/// use integrality::linalg::IntMatrix;
/// use integrality::wsynth::{is_tu, TuMethod};
///
/// let w = IntMatrix::from_i64(&[[1, 1], [1, -1]]).unwrap();
/// assert!(!is_tu(&w, TuMethod::Exhaustive).unwrap().is_tu);
/// assert!(!is_tu(&w, TuMethod::GhouilaHouri).unwrap().is_tu);
/// ```
pub fn is_tu(w: &IntMatrix, method: TuMethod) -> Result<TuReport> {
    is_tu_with_caps(w, method, DEFAULT_SUBMATRIX_CAP, GHOUILA_HOURI_CAP)
}

pub fn is_tu_with_caps(w: &IntMatrix, method: TuMethod, submatrix_cap: u128, subset_cap: u128) -> Result<TuReport> {
    if let Some((i, j)) = (0..w.rows())
        .flat_map(|i| (0..w.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| w[(i, j)].abs() > BigInt::one())
    {
        return Ok(TuReport {
            is_tu: false,
            method: if method == TuMethod::Auto { TuMethod::Exhaustive } else { method },
            reduced_shape: (w.rows(), w.cols()),
            checked: 1,
            violation: Some(format!("entry ({i},{j}) is {}", w[(i, j)])),
        });
    }
    let m = reduce(w);
    let shape = (m.len(), m.first().map_or(0, Vec::len));
    let method = match method {
        TuMethod::Auto if shape.0 <= 6 => TuMethod::Exhaustive,
        TuMethod::Auto => TuMethod::GhouilaHouri,
        other => other,
    };
    let (checked, violation) = if m.is_empty() {
        (0, None)
    } else if method == TuMethod::Exhaustive {
        exhaustive(&m, submatrix_cap)?
    } else {
        ghouila_houri(&m, subset_cap)?
    };
    Ok(TuReport {
        is_tu: violation.is_none(),
        method,
        reduced_shape: shape,
        checked,
        violation,
    })
}
