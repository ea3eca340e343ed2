use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::tu::{is_tu, TuMethod, TuReport};
use crate::error::{CertifyError, Error, Result};
use crate::linalg::{int_rank, rat_vec, row_combination, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowClass {
    /// `sign * e_coord`.
    Unit { coord: usize, negated: bool },
    /// Row `index` of the designated rows.
    Designated { index: usize },
}

/// Evidence that every vertex of the mixed-integer hull defined by `w` is
/// integral, for every integral right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub w: IntMatrix,
    pub c_rows: Vec<usize>,
    /// For each designated row `i`, coefficients `x` with `x^T W = A_i`.
    pub witnesses: Vec<(usize, Vec<BigRational>)>,
    pub classes: Vec<RowClass>,
    pub tu: TuReport,
}

impl Certificate {
    pub fn k(&self) -> usize {
        self.w.rows()
    }

    /// Re-checks every witness against `a`.
    pub fn check_witnesses(&self, a: &IntMatrix) -> bool {
        let w = self.w.to_rat();
        self.witnesses.iter().all(|(row, x)| {
            let combo: Vec<BigRational> = (0..w.cols())
                .map(|j| {
                    x.iter()
                        .enumerate()
                        .fold(BigRational::zero(), |acc, (i, c)| acc + c * &w[(i, j)])
                })
                .collect();
            combo == rat_vec(a.row(*row))
        })
    }
}

fn unit_row(row: &[BigInt]) -> Option<(usize, bool)> {
    let nz: Vec<usize> = (0..row.len()).filter(|&j| !row[j].is_zero()).collect();
    match nz.as_slice() {
        [j] if row[*j].abs().is_one() => Some((*j, row[*j].is_negative())),
        _ => None,
    }
}

/// Checks that `a` is in stacked form with respect to `c_rows`, that `w` is
/// totally unimodular and that every designated row lies in the row span of
/// `w`. Each failure is reported separately.
///
/// ```
/// use integrality::linalg::IntMatrix;
/// use integrality::wsynth::certify;
///
/// let a = IntMatrix::from_i64(&[[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1], [-1, -1]]).unwrap();
/// let w = IntMatrix::from_i64(&[[1, 1]]).unwrap();
/// let cert = certify(&a, &[4, 5], &w).unwrap();
/// assert_eq!(cert.k(), 1);
/// ```
pub fn certify(a: &IntMatrix, c_rows: &[usize], w: &IntMatrix) -> Result<Certificate> {
    let n = a.cols();
    if int_rank(a) < n {
        return Err(Error::RankDeficient {
            rank: int_rank(a),
            expected: n,
        });
    }
    if w.cols() != n {
        return Err(Error::Dimension(format!("W has {} columns, A has {n}", w.cols())));
    }
    if let Some(&bad) = c_rows.iter().find(|&&i| i >= a.rows()) {
        return Err(Error::Dimension(format!("designated row {bad} out of range")));
    }
    let mut classes = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        if let Some(index) = c_rows.iter().position(|&c| c == i) {
            classes.push(RowClass::Designated { index });
        } else {
            let (coord, negated) = unit_row(a.row(i)).ok_or(CertifyError::StackedForm { row: i })?;
            classes.push(RowClass::Unit { coord, negated });
        }
    }

    let tu = is_tu(w, TuMethod::Auto)?;
    if !tu.is_tu {
        return Err(CertifyError::NotTotallyUnimodular(tu.violation.clone().unwrap_or_default()).into());
    }

    let wr = w.to_rat();
    let mut witnesses = Vec::with_capacity(c_rows.len());
    for &i in c_rows {
        let target = rat_vec(a.row(i));
        let x = if w.rows() == 0 {
            target.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            row_combination(&wr, &target)
        };
        witnesses.push((i, x.ok_or(CertifyError::NotInSpan { row: i })?));
    }
    Ok(Certificate {
        w: w.clone(),
        c_rows: c_rows.to_vec(),
        witnesses,
        classes,
        tu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stacked(c: &[i64]) -> IntMatrix {
        let n = c.len();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for s in [1, -1] {
            for i in 0..n {
                let mut r = vec![0; n];
                r[i] = s;
                rows.push(r);
            }
        }
        rows.push(c.to_vec());
        rows.push(c.iter().map(|x| -x).collect());
        IntMatrix::from_i64(&rows).unwrap()
    }

    #[test]
    fn identity_needs_no_rows() {
        let a = IntMatrix::identity(3);
        let cert = certify(&a, &[], &IntMatrix::zeros(0, 3)).unwrap();
        assert_eq!(cert.k(), 0);
    }

    #[test]
    fn single_sum_row() {
        let a = stacked(&[1, 1]);
        let cert = certify(&a, &[4, 5], &IntMatrix::from_i64(&[[1, 1]]).unwrap()).unwrap();
        assert_eq!(cert.witnesses.len(), 2);
        assert!(cert.check_witnesses(&a));
        assert_eq!(cert.classes[2], RowClass::Unit { coord: 0, negated: true });
    }

    #[test]
    fn non_unit_row_outside_the_designated_rows() {
        let a = IntMatrix::from_i64(&[[2, 1], [0, 1]]).unwrap();
        let err = certify(&a, &[], &IntMatrix::identity(2)).unwrap_err();
        assert_eq!(err, Error::Certify(CertifyError::StackedForm { row: 0 }));
    }

    #[test]
    fn non_tu_w_is_reported() {
        let a = stacked(&[1, 1]);
        let w = IntMatrix::from_i64(&[[1, 1], [1, -1]]).unwrap();
        assert!(matches!(
            certify(&a, &[4, 5], &w),
            Err(Error::Certify(CertifyError::NotTotallyUnimodular(_)))
        ));
    }

    #[test]
    fn span_failure_is_reported() {
        let a = stacked(&[1, 2]);
        let w = IntMatrix::from_i64(&[[1, 1]]).unwrap();
        assert_eq!(
            certify(&a, &[4, 5], &w),
            Err(Error::Certify(CertifyError::NotInSpan { row: 4 }))
        );
    }
}
