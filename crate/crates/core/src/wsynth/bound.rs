use num_bigint::{BigInt, BigUint};
use num_traits::{FromPrimitive, One, ToPrimitive};

use crate::error::{Error, Result};

/// Upper bound on the number of distinct columns of a rank-`r` integer
/// matrix whose `r x r` minors are at most `delta` in absolute value:
/// `1` when `r = 0`, `r^2 + r + 1` when `delta = 1`, and
/// `ceil(delta^(2 + log2 log2 delta) * r^2 + 1)` otherwise.
///
/// ```
/// use integrality::wsynth::c_bound;
/// use num_bigint::{BigInt, BigUint};
///
/// assert_eq!(c_bound(0, &BigInt::from(9)).unwrap(), BigUint::from(1u8));
/// assert_eq!(c_bound(2, &BigInt::from(1)).unwrap(), BigUint::from(7u8));
/// assert_eq!(c_bound(2, &BigInt::from(2)).unwrap(), BigUint::from(17u8));
/// ```
pub fn c_bound(r: usize, delta: &BigInt) -> Result<BigUint> {
    if delta < &BigInt::one() {
        return Err(Error::Precondition(format!("delta must be at least 1, got {delta}")));
    }
    if r == 0 {
        return Ok(BigUint::one());
    }
    let r = BigUint::from(r);
    let r2 = &r * &r;
    if delta.is_one() {
        return Ok(&r2 + &r + 1u32);
    }
    let d = delta.magnitude();
    // exact when log2(delta) is itself a power of two
    if d.count_ones() == 1 {
        let log = d.bits() - 1;
        if log.is_power_of_two() {
            let exp = 2 + log.trailing_zeros();
            return Ok(d.pow(exp) * r2 + 1u32);
        }
    }
    let df = d
        .to_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Precondition("delta too large for the bound".into()))?;
    let exp = 2.0 + df.log2().log2();
    let value = df.powf(exp) * r2.to_f64().unwrap_or(f64::INFINITY) + 1.0;
    if !value.is_finite() {
        return Err(Error::Precondition("bound overflows".into()));
    }
    BigUint::from_f64(value.ceil()).ok_or_else(|| Error::Consistency("bound conversion failed".into()))
}

/// `4 sqrt(delta) + log2(delta)` for the box cover of the triangular block.
pub fn box_factor(delta: &BigInt) -> f64 {
    let d = delta.to_f64().unwrap_or(f64::INFINITY);
    4.0 * d.sqrt() + d.log2()
}

/// The product bound `box_factor(delta) * min(c2, c)`.
pub fn k_bound(delta: &BigInt, c_a2: &BigUint, c_a: &BigUint) -> f64 {
    let c = c_a2.min(c_a);
    box_factor(delta) * c.to_f64().unwrap_or(f64::INFINITY)
}

pub(crate) fn fits(k: usize, bound: f64) -> bool {
    (k as f64) <= bound * (1.0 + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(r: usize, d: i64) -> BigUint {
        c_bound(r, &BigInt::from(d)).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(c(0, 1), BigUint::from(1u8));
        assert_eq!(c(0, 1000), BigUint::from(1u8));
        assert_eq!(c(2, 1), BigUint::from(7u8));
        assert_eq!(c(3, 1), BigUint::from(13u8));
    }

    #[test]
    fn exact_powers() {
        assert_eq!(c(2, 2), BigUint::from(17u8));
        // log2 log2 4 = 1
        assert_eq!(c(1, 4), BigUint::from(65u8));
        // log2 log2 16 = 2
        assert_eq!(c(1, 16), BigUint::from(65537u32));
    }

    #[test]
    fn inexact_values_round_up() {
        // 3^(2 + log2 log2 3) is about 11.5
        let v = c(1, 3).to_u64().unwrap();
        let exact = 3f64.powf(2.0 + 3f64.log2().log2()) + 1.0;
        assert_eq!(v, exact.ceil() as u64);
    }

    #[test]
    fn monotone_in_delta() {
        let mut prev = c(2, 1);
        for d in 2..200 {
            let cur = c(2, d);
            assert!(cur >= prev, "delta {d}");
            prev = cur;
        }
    }

    #[test]
    fn zero_delta_rejected() {
        assert!(c_bound(1, &BigInt::from(0)).is_err());
    }

    #[test]
    fn box_factor_values() {
        assert_eq!(box_factor(&BigInt::from(1)), 4.0);
        assert!((box_factor(&BigInt::from(4)) - 10.0).abs() < 1e-12);
    }
}
