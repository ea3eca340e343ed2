use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::covering::Cover;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};

/// An exact factorisation `C = (B T) W` with `W` a 0/1 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WFactorization {
    /// `|B| + |T|` rows: the `B` block first, then the `T` block.
    pub w: IntMatrix,
    /// The points of `B` followed by those of `T`, as columns.
    pub bt: RatMatrix,
    pub cover: Cover,
}

impl WFactorization {
    pub fn k(&self) -> usize {
        self.w.rows()
    }

    pub fn b_rows(&self) -> usize {
        self.cover.b().len()
    }
}

/// Builds `W` from a cover of the columns of `c`: column `j` of `W` has a 1
/// in the row of its `B` point and, when used, a 1 in the row of its `T`
/// point.
///
/// ```
/// use integrality::covering::{cover_trivial, PointSet};
/// use integrality::linalg::IntMatrix;
/// use integrality::wsynth::build_w;
///
/// let c = IntMatrix::from_i64(&[[1, 4, 1], [2, 2, 2]]).unwrap();
/// let cover = cover_trivial(&PointSet::from_int_columns(&c)).unwrap();
/// let f = build_w(&c.to_rat(), &cover).unwrap();
/// assert_eq!(f.w, IntMatrix::from_i64(&[[1, 0, 1], [0, 1, 0]]).unwrap());
/// ```
pub fn build_w(c: &RatMatrix, cover: &Cover) -> Result<WFactorization> {
    if cover.dim() != c.rows() {
        return Err(Error::Dimension(format!(
            "cover of dimension {} for a matrix with {} rows",
            cover.dim(),
            c.rows()
        )));
    }
    let nb = cover.b().len();
    let k = cover.cost();
    let mut w = IntMatrix::zeros(k, c.cols());
    for j in 0..c.cols() {
        let col = c.col(j);
        let a = cover
            .assignment_of(&col)
            .ok_or_else(|| Error::InvalidCover(format!("column {j} is not covered")))?;
        w[(a.b, j)] = BigInt::one();
        if let Some(t) = a.t {
            w[(nb + t, j)] = BigInt::one();
        }
    }
    let bt = RatMatrix::from_fn(c.rows(), k, |i, j| {
        if j < nb {
            cover.b().get(j)[i].clone()
        } else {
            cover.t().get(j - nb)[i].clone()
        }
    });
    if &bt * &w.to_rat() != *c {
        return Err(Error::Consistency("(B T) W does not reproduce C".into()));
    }
    Ok(WFactorization {
        w,
        bt,
        cover: cover.clone(),
    })
}

/// Every column has exactly one 1 in the `B` block and at most one in the `T`
/// block, and nothing else.
pub fn check_block_structure(f: &WFactorization) -> bool {
    let nb = f.b_rows();
    (0..f.w.cols()).all(|j| {
        let col = f.w.col(j);
        if col.iter().any(|x| !x.is_zero() && !x.is_one()) {
            return false;
        }
        let in_b = col[..nb].iter().filter(|x| x.is_one()).count();
        let in_t = col[nb..].iter().filter(|x| x.is_one()).count();
        in_b == 1 && in_t <= 1
    })
}
