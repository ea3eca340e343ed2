//! Reduction of a rational matrix `Y` with `Y A1` integral to an integral
//! matrix `E Y` with the same column pattern, through the finite group
//! `{g in [0,1)^n : g^T A1 integral}` under addition modulo 1.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det, parallelepiped_pairs, rank, IntMatrix, RatMatrix};

type Elem = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReduction {
    /// All `g` in `[0,1)^n` with `g^T A1` integral, sorted.
    pub pi: Vec<Elem>,
    /// `n x r`; column `i` is the fractional part of row `i` of `Y`.
    pub g: RatMatrix,
    /// `n x r`; column `i` is the integral part of row `i` of `Y`.
    pub v: IntMatrix,
    /// Lower triangular, `r x r`.
    pub e: IntMatrix,
    /// `E Y`, which is integral.
    pub ey: IntMatrix,
    /// Order of the subgroup generated by the first `i + 1` columns of `G`.
    pub chain_orders: Vec<usize>,
    pub chain_alphas: Vec<BigInt>,
    /// `chain_betas[i][j]` for `j < i`.
    pub chain_betas: Vec<Vec<BigInt>>,
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn add_mod1(a: &[BigRational], b: &[BigRational]) -> Elem {
    a.iter().zip(b).map(|(x, y)| frac(&(x + y))).collect()
}

/// Builds the group data for `Y` against the square basis `A1`.
///
/// ```
/// use integrality::linalg::{IntMatrix, RatMatrix};
/// use integrality::wsynth::group_reduce;
/// use num_bigint::BigInt;
/// use num_rational::BigRational;
///
/// let a1 = IntMatrix::from_i64(&[[1, 0], [0, 5]]).unwrap();
/// let y = RatMatrix::new(1, 2, vec![BigRational::from_integer(0.into()), BigRational::new(1.into(), 5.into())]).unwrap();
/// let g = group_reduce(&a1, &y).unwrap();
/// assert_eq!(g.e, IntMatrix::from_i64(&[[5]]).unwrap());
/// assert_eq!(g.pi.len(), 5);
/// ```
pub fn group_reduce(a1: &IntMatrix, y: &RatMatrix) -> Result<GroupReduction> {
    let n = a1.rows();
    if !a1.is_square() || y.cols() != n {
        return Err(Error::Dimension(format!(
            "group reduction of a {}x{} matrix against a {}x{} basis",
            y.rows(),
            y.cols(),
            a1.rows(),
            a1.cols()
        )));
    }
    let r = y.rows();
    if rank(y) < r {
        return Err(Error::RankDeficient {
            rank: rank(y),
            expected: r,
        });
    }
    if !(y * &a1.to_rat()).is_integral() {
        return Err(Error::Precondition("Y A1 is not integral".into()));
    }
    let delta = det(a1)?.abs();
    if delta.is_zero() {
        return Err(Error::Singular);
    }

    let pi: Vec<Elem> = parallelepiped_pairs(&a1.transpose())?
        .into_iter()
        .map(|(_, lambda)| lambda)
        .collect();
    if BigInt::from(pi.len()) != delta {
        return Err(Error::Consistency("group order differs from the determinant".into()));
    }
    let members: std::collections::HashSet<&Elem> = pi.iter().collect();

    let gs: Vec<Elem> = (0..r).map(|i| y.row(i).iter().map(frac).collect()).collect();
    for (i, g) in gs.iter().enumerate() {
        if !members.contains(g) {
            return Err(Error::Consistency(format!("fractional part of row {i} is not in the group")));
        }
    }
    let g = RatMatrix::from_fn(n, r, |i, j| gs[j][i].clone());
    let v = IntMatrix::from_fn(n, r, |i, j| y[(j, i)].floor().to_integer());

    // subgroup elements with their coefficients on the generators so far
    let zero: Elem = vec![BigRational::zero(); n];
    let mut sub: HashMap<Elem, Vec<BigInt>> = HashMap::from([(zero.clone(), Vec::new())]);
    let mut chain_orders = Vec::with_capacity(r);
    let mut chain_alphas = Vec::with_capacity(r);
    let mut chain_betas = Vec::with_capacity(r);
    for (i, gi) in gs.iter().enumerate() {
        let mut alpha = 1usize;
        let mut mult = gi.clone();
        while !sub.contains_key(&mult) {
            alpha += 1;
            mult = add_mod1(&mult, gi);
            if alpha > pi.len() {
                return Err(Error::Consistency("subgroup closure exceeds the group order".into()));
            }
        }
        let betas = sub[&mult].clone();
        let mut next: HashMap<Elem, Vec<BigInt>> = HashMap::with_capacity(sub.len() * alpha);
        for (h, coeffs) in &sub {
            let mut cur = h.clone();
            for m in 0..alpha {
                let mut c = coeffs.clone();
                c.resize(i, BigInt::zero());
                c.push(BigInt::from(m));
                next.insert(cur.clone(), c);
                cur = add_mod1(&cur, gi);
            }
        }
        sub = next;
        if sub.len() > pi.len() {
            return Err(Error::Consistency("subgroup closure exceeds the group order".into()));
        }
        chain_orders.push(sub.len());
        chain_alphas.push(BigInt::from(alpha));
        let mut b = betas;
        b.resize(i, BigInt::zero());
        chain_betas.push(b);
    }

    let e = IntMatrix::from_fn(r, r, |i, j| match j.cmp(&i) {
        std::cmp::Ordering::Less => -chain_betas[i][j].clone(),
        std::cmp::Ordering::Equal => chain_alphas[i].clone(),
        std::cmp::Ordering::Greater => BigInt::zero(),
    });
    let ey = (&e.to_rat() * y)
        .to_int()
        .ok_or_else(|| Error::Consistency("E Y is not integral".into()))?;
    let det_e = chain_alphas.iter().fold(BigInt::one(), |acc, a| acc * a);
    if det_e > delta {
        return Err(Error::Consistency("det E exceeds the group order".into()));
    }
    Ok(GroupReduction {
        pi,
        g,
        v,
        e,
        ey,
        chain_orders,
        chain_alphas,
        chain_betas,
    })
}
