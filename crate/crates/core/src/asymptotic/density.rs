use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::goodset::{Asymptotic, HyperplaneFamily};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub const DEFAULT_DENSITY_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DensityMode {
    /// Every `b` in `{-t, ..., t}^m`.
    Enumerate,
    /// Uniform draws; draw `i` uses stream `i` of a generator seeded with
    /// `seed`, so results do not depend on the thread count.
    Sample { seed: u64, samples: u64 },
}

/// Counts over a finite cube of right-hand sides. This is evidence at a fixed
/// radius, not the limit itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityEstimate {
    pub t: u64,
    pub mode: DensityMode,
    pub total: u128,
    pub good: u128,
    /// Right-hand sides with `P(A, b)` empty; these count as good.
    pub empty: u128,
    /// Bad right-hand sides that lie on none of the bad hyperplanes. Always
    /// zero; kept as a running check.
    pub bad_off_hyperplanes: u128,
    /// `good / total`.
    pub fraction: BigRational,
}

impl DensityEstimate {
    pub fn fraction_f64(&self) -> f64 {
        self.good as f64 / self.total as f64
    }

    /// Binomial standard error of the fraction.
    pub fn std_error(&self) -> f64 {
        let p = self.fraction_f64();
        (p * (1.0 - p) / self.total as f64).sqrt()
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    good: u128,
    empty: u128,
    off: u128,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            good: self.good + o.good,
            empty: self.empty + o.empty,
            off: self.off + o.off,
        }
    }
}

fn classify(ctx: &Asymptotic, families: &[HyperplaneFamily], b: &[BigInt]) -> Result<Tally> {
    let r = ctx.in_good_set(b)?;
    let off = !r.in_good_set && !families.iter().any(|f| f.residue(b).is_some());
    Ok(Tally {
        good: r.in_good_set as u128,
        empty: r.empty_p as u128,
        off: off as u128,
    })
}

impl Asymptotic {
    pub fn density_estimate(&self, t: u64, mode: DensityMode, cap: u128) -> Result<DensityEstimate> {
        let m = self.m();
        let side = 2 * t + 1;
        let families = self.hyperplane_families();
        let (total, tally) = match mode {
            DensityMode::Enumerate => {
                let total = (side as u128)
                    .checked_pow(m as u32)
                    .filter(|&x| x <= cap)
                    .ok_or_else(|| Error::cap("right-hand sides", (side as u128).saturating_pow(m as u32), cap))?;
                let tally = (0..total as u64)
                    .into_par_iter()
                    .map(|mut idx| {
                        let mut b = vec![BigInt::default(); m];
                        for i in (0..m).rev() {
                            b[i] = BigInt::from(idx % side) - BigInt::from(t);
                            idx /= side;
                        }
                        classify(self, &families, &b)
                    })
                    .try_reduce(Tally::default, |x, y| Ok(x.add(y)))?;
                (total, tally)
            }
            DensityMode::Sample { seed, samples } => {
                if samples == 0 {
                    return Err(Error::Precondition("at least one sample is needed".into()));
                }
                let t = t as i64;
                let tally = (0..samples)
                    .into_par_iter()
                    .map(|i| {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        rng.set_stream(i);
                        let b: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.random_range(-t..=t))).collect();
                        classify(self, &families, &b)
                    })
                    .try_reduce(Tally::default, |x, y| Ok(x.add(y)))?;
                (samples as u128, tally)
            }
        };
        Ok(DensityEstimate {
            t,
            mode,
            total,
            good: tally.good,
            empty: tally.empty,
            bad_off_hyperplanes: tally.off,
            fraction: BigRational::new(BigInt::from(tally.good), BigInt::from(total)),
        })
    }
}

/// Fraction of right-hand sides in `{-t, ..., t}^m` that are good.
///
/// ```
/// use integrality::asymptotic::{density_estimate, DensityMode};
/// use integrality::linalg::IntMatrix;
/// use num_rational::BigRational;
///
/// let a = IntMatrix::from_i64(&[[1]]).unwrap();
/// let d = density_estimate(&a, 4, DensityMode::Enumerate).unwrap();
/// assert_eq!(d.total, 9);
/// assert_eq!(d.fraction, BigRational::from_integer(1.into()));
/// ```
pub fn density_estimate(a: &IntMatrix, t: u64, mode: DensityMode) -> Result<DensityEstimate> {
    Asymptotic::new(a)?.density_estimate(t, mode, DEFAULT_DENSITY_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desk() -> IntMatrix {
        IntMatrix::from_i64(&[[1, 0], [0, 1], [-1, -1], [-1, 1]]).unwrap()
    }

    #[test]
    fn enumeration_counts_exactly() {
        let d = density_estimate(&desk(), 2, DensityMode::Enumerate).unwrap();
        assert_eq!(d.total, 625);
        assert_eq!(d.bad_off_hyperplanes, 0);
        assert!(d.good >= d.empty);
    }

    #[test]
    fn sampling_is_reproducible() {
        let mode = DensityMode::Sample { seed: 7, samples: 300 };
        let x = density_estimate(&desk(), 3, mode).unwrap();
        let y = density_estimate(&desk(), 3, mode).unwrap();
        assert_eq!(x, y);
        let z = density_estimate(&desk(), 3, DensityMode::Sample { seed: 8, samples: 300 }).unwrap();
        assert_eq!(z.total, 300);
    }

    #[test]
    fn sampling_agrees_with_enumeration() {
        let exact = density_estimate(&desk(), 3, DensityMode::Enumerate).unwrap();
        let est = density_estimate(&desk(), 3, DensityMode::Sample { seed: 1, samples: 4000 }).unwrap();
        let p = exact.fraction_f64();
        let sigma = (p * (1.0 - p) / 4000.0).sqrt();
        assert!((est.fraction_f64() - p).abs() <= 3.0 * sigma + 1e-12);
    }

    #[test]
    fn cap_applies_to_enumeration() {
        let ctx = Asymptotic::new(&desk()).unwrap();
        assert!(matches!(
            ctx.density_estimate(10, DensityMode::Enumerate, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }
}
