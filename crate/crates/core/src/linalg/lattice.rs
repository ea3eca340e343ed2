//! Lattice points in the half-open fundamental parallelepiped of a square
//! integer basis, and the matching decomposition of integer vectors.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::elim::inverse;
use super::hnf::lower_triangular;
use super::matrix::{IntMatrix, Matrix, RatMatrix};
use crate::error::{Error, Result};

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn mat_vec(m: &RatMatrix, v: &[BigRational]) -> Vec<BigRational> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .filter(|(a, _)| !a.is_zero())
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Every pair `(B*lambda, lambda)` with `lambda` in `[0,1)^d` and `B*lambda`
/// integral, sorted by the integer point.
pub(crate) fn parallelepiped_pairs(b: &IntMatrix) -> Result<Vec<(Vec<BigInt>, Vec<BigRational>)>> {
    if !b.is_square() {
        return Err(Error::Dimension(format!(
            "parallelepiped of a {}x{} matrix",
            b.rows(),
            b.cols()
        )));
    }
    let d = b.rows();
    let (h, _) = lower_triangular(b)?;
    let inv = inverse(&b.to_rat())?;
    let b_rat = b.to_rat();

    // Z^d modulo the column lattice of a lower-triangular basis has the box
    // of diagonal residues as a complete set of representatives.
    let bounds: Vec<BigInt> = (0..d).map(|i| h[(i, i)].clone()).collect();
    let mut out = Vec::new();
    let mut rep = vec![BigInt::zero(); d];
    loop {
        let x: Vec<BigRational> = rep.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        let lambda: Vec<BigRational> = mat_vec(&inv, &x).iter().map(frac).collect();
        let point = mat_vec(&b_rat, &lambda);
        let point: Vec<BigInt> = point
            .into_iter()
            .map(|p| {
                debug_assert!(p.is_integer());
                p.to_integer()
            })
            .collect();
        out.push((point, lambda));

        let mut i = 0;
        loop {
            if i == d {
                out.sort();
                return Ok(out);
            }
            rep[i] += 1;
            if rep[i] < bounds[i] {
                break;
            }
            rep[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Integer points `B*lambda` with `lambda` in `[0,1)^d`, in lexicographic
/// order. There are exactly `|det B|` of them.
///
/// ```
/// use integrality::linalg::{parallelepiped_points, IntMatrix};
///
/// let b = IntMatrix::from_i64(&[[2, 0], [0, 3]]).unwrap();
/// assert_eq!(parallelepiped_points(&b).unwrap().len(), 6);
/// ```
pub fn parallelepiped_points(b: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
    Ok(parallelepiped_pairs(b)?.into_iter().map(|(p, _)| p).collect())
}

/// Writes an integer vector as `v = B(lambda + tau)` with `lambda` in
/// `[0,1)^d` and `tau` integral. Returns `(lambda, tau)`.
pub fn decompose(b: &IntMatrix, v: &[BigInt]) -> Result<(Vec<BigRational>, Vec<BigInt>)> {
    if !b.is_square() || b.rows() != v.len() {
        return Err(Error::Dimension("decompose needs a square basis matching the vector".into()));
    }
    let inv = inverse(&b.to_rat())?;
    let x: Vec<BigRational> = v.iter().map(|a| BigRational::from_integer(a.clone())).collect();
    let full = mat_vec(&inv, &x);
    let tau = full.iter().map(|a| a.floor().to_integer()).collect();
    let lambda = full.iter().map(frac).collect();
    Ok((lambda, tau))
}

/// Number of pairwise distinct columns and the index of the first occurrence
/// of each, in column order.
pub fn distinct_columns<T: Clone + Eq + Hash>(m: &Matrix<T>) -> (usize, Vec<usize>) {
    let mut seen: HashMap<Vec<T>, usize> = HashMap::new();
    let mut reps = Vec::new();
    for j in 0..m.cols() {
        let col = m.col(j);
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(col) {
            e.insert(j);
            reps.push(j);
        }
    }
    (reps.len(), reps)
}

/// True when `lambda` lies in `[0,1)^d`.
pub fn in_unit_cube(lambda: &[BigRational]) -> bool {
    lambda.iter().all(|x| !x.is_negative() && x < &BigRational::one())
}
