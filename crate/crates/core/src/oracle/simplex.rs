//! Exact feasibility of `M x = r, x >= 0` by phase one of the simplex method
//! with Bland's rule.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg::RatMatrix;

/// Returns a nonnegative solution of `m x = rhs` if one exists.
pub(crate) fn nonneg_solution(m: &RatMatrix, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(m.rows(), rhs.len(), "nonneg_solution: row counts differ");
    let (p, q) = (m.rows(), m.cols());
    // tableau rows: structural columns followed by the right-hand side;
    // artificial columns are never re-entered, so they are not stored
    let mut t: Vec<Vec<BigRational>> = (0..p)
        .map(|i| {
            let flip = rhs[i].is_negative();
            let mut row: Vec<BigRational> = m.row(i).iter().map(|x| if flip { -x } else { x.clone() }).collect();
            row.push(if flip { -&rhs[i] } else { rhs[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (q..q + p).collect();
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); q + 1];
    for row in &t {
        for (o, x) in obj.iter_mut().zip(row) {
            *o -= x;
        }
    }

    while let Some(enter) = (0..q).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..p {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][q] / &t[i][enter];
            let better = match &best {
                None => true,
                Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
            };
            if better {
                best = Some(ratio);
                leave = Some(i);
            }
        }
        // phase one is bounded below by zero, so a pivot row always exists
        let r = leave.expect("phase one objective is bounded");
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, y) in obj.iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        basis[r] = enter;
    }

    if !obj[q].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); q];
    for (i, &v) in basis.iter().enumerate() {
        if v < q {
            x[v] = t[i][q].clone();
        }
    }
    Some(x)
}
