#![allow(dead_code)]

use integrality::linalg::{hnf, int_rank, IntMatrix};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(m, n, |_, _| BigInt::from(rng.random_range(-bound..=bound)))
}

pub fn random_full_rank(rng: &mut ChaCha8Rng, m: usize, n: usize, bound: i64) -> IntMatrix {
    loop {
        let a = random_matrix(rng, m, n, bound);
        if int_rank(&a) == n {
            return a;
        }
    }
}

/// Product of `steps` elementary column operations on the identity.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        match rng.random_range(0..3) {
            0 if i != j => {
                let f = BigInt::from(rng.random_range(-2..=2i64));
                for r in 0..n {
                    let add = &u[(r, j)] * &f;
                    u[(r, i)] += add;
                }
            }
            1 if i != j => {
                for r in 0..n {
                    let tmp = u[(r, i)].clone();
                    u[(r, i)] = u[(r, j)].clone();
                    u[(r, j)] = tmp;
                }
            }
            _ => {
                for r in 0..n {
                    u[(r, i)] = -u[(r, i)].clone();
                }
            }
        }
    }
    u
}

/// Random full column rank matrices with `n` in `{2, 3, 4}`, `m <= n + 3`,
/// entries in `[-3, 3]` and normal-form determinant at most 50.
pub fn desk_matrices(seed: u64, count: usize, max_n: usize) -> Vec<IntMatrix> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = r.random_range(2..=max_n);
        let m = r.random_range(n..=n + 3);
        let a = random_full_rank(&mut r, m, n, 3);
        let delta = hnf(&a).unwrap().delta.to_u64().unwrap();
        if delta <= 50 {
            out.push(a);
        }
    }
    out
}

pub fn random_b(rng: &mut ChaCha8Rng, m: usize, bound: i64) -> Vec<BigInt> {
    (0..m).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect()
}
