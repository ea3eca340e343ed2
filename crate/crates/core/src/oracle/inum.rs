//! Brute-force search for the smallest number of integrality rows.
//!
//! Rows range over primitive integer vectors with entries in `[-e, e]` and a
//! positive first nonzero entry. Replacing a row by its primitive part only
//! strengthens the constraint and negating it changes nothing, so this loses
//! no generality within the entry bound. Rows are combined without
//! repetition.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use super::instance::Instance;
use super::wmip::check_integrality;
use super::OracleCaps;
use crate::error::{Error, Result};
use crate::linalg::{binomial, IntMatrix};

pub const DEFAULT_ENTRY_BOUND: i64 = 2;

/// Caps for the exhaustive search, on top of the oracle caps used for each
/// candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InumCaps {
    /// Largest number of candidate matrices tried for a single `k`.
    pub candidates: u128,
    pub oracle: OracleCaps,
}

impl Default for InumCaps {
    fn default() -> Self {
        InumCaps {
            candidates: 200_000,
            oracle: OracleCaps::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InumResult {
    pub k: usize,
    pub w: IntMatrix,
    /// Candidate matrices checked in total, over all `k` tried.
    pub tried: u128,
}

/// Normalised candidate rows in lexicographic order.
pub fn candidate_rows(n: usize, entry_bound: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| -entry_bound..=entry_bound)
        .multi_cartesian_product()
        .filter(|v| match v.iter().find(|&&x| x != 0) {
            Some(&first) => first > 0 && v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1,
            None => false,
        })
        .collect()
}

/// Smallest `k <= k_max` for which some `W` built from the candidate rows
/// makes the mixed-integer hull integral, with the first such `W` in
/// enumeration order. `None` when no `k <= k_max` works. The answer is exact
/// only within the class of rows with entries bounded by `entry_bound`;
/// `k = n` always succeeds with the identity.
///
/// ```
/// use integrality::oracle::{integrality_number_bruteforce, Instance};
///
/// // -1/2 <= x1 <= 1/2, 0 <= x2 <= 1
/// let inst = Instance::from_i64(&[[2, 0], [-2, 0], [0, 1], [0, -1]], &[1, 1, 1, 0]).unwrap();
/// let r = integrality_number_bruteforce(&inst, 2, 2).unwrap().unwrap();
/// assert_eq!(r.k, 1);
/// ```
pub fn integrality_number_bruteforce(inst: &Instance, entry_bound: i64, k_max: usize) -> Result<Option<InumResult>> {
    integrality_number_bruteforce_with_caps(inst, entry_bound, k_max, &InumCaps::default())
}

pub fn integrality_number_bruteforce_with_caps(
    inst: &Instance,
    entry_bound: i64,
    k_max: usize,
    caps: &InumCaps,
) -> Result<Option<InumResult>> {
    if entry_bound < 1 {
        return Err(Error::Precondition(format!("entry bound must be positive, got {entry_bound}")));
    }
    let n = inst.n();
    let rows = candidate_rows(n, entry_bound);
    let mut tried: u128 = 0;
    for k in 0..=k_max {
        let count = binomial(rows.len(), k);
        if count > caps.candidates {
            return Err(Error::cap("integrality matrices", count, caps.candidates));
        }
        let combos: Vec<Vec<usize>> = (0..rows.len()).combinations(k).collect();
        let found = combos.into_par_iter().find_map_first(|combo| {
            let w = IntMatrix::from_fn(k, n, |i, j| BigInt::from(rows[combo[i]][j]));
            match check_integrality(inst, &w, &caps.oracle) {
                Ok(c) if c.integral => Some(Ok(w)),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            }
        });
        tried += count;
        if let Some(w) = found {
            return Ok(Some(InumResult { k, w: w?, tried }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_rows_are_normalised() {
        let rows = candidate_rows(2, 1);
        assert_eq!(rows, vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
        let rows2 = candidate_rows(2, 2);
        assert!(!rows2.contains(&vec![2, 0]));
        assert!(!rows2.contains(&vec![2, 2]));
        assert!(rows2.contains(&vec![2, 1]));
        assert_eq!(rows2.len(), 8);
    }

    #[test]
    fn integral_polytope_needs_nothing() {
        let inst = Instance::from_i64(&[[1, 0], [0, 1], [-1, 0], [0, -1]], &[1, 1, 0, 0]).unwrap();
        let r = integrality_number_bruteforce(&inst, 2, 2).unwrap().unwrap();
        assert_eq!(r.k, 0);
        assert_eq!(r.w.rows(), 0);
    }

    #[test]
    fn split_instance_needs_one_row() {
        let inst = Instance::from_i64(&[[2, 0], [-2, 0], [0, 1], [0, -1]], &[1, 1, 1, 0]).unwrap();
        let r = integrality_number_bruteforce(&inst, 2, 2).unwrap().unwrap();
        assert_eq!(r.k, 1);
        assert_eq!(r.w, IntMatrix::from_i64(&[[1, 0]]).unwrap());
    }

    #[test]
    fn never_exceeds_the_dimension() {
        // triangle with a fractional apex
        let inst = Instance::from_i64(&[[0, -1], [-3, 2], [3, 2]], &[0, 0, 6]).unwrap();
        let r = integrality_number_bruteforce(&inst, 1, 2).unwrap().unwrap();
        assert!(r.k <= 2);
        assert!(r.k >= 1);
    }

    #[test]
    fn k_max_too_small() {
        let inst = Instance::from_i64(&[[2], [-2]], &[1, 1]).unwrap();
        assert_eq!(integrality_number_bruteforce(&inst, 1, 0).unwrap(), None);
    }
}
