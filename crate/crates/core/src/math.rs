//! Entropy and exact-combinatorics helpers shared by every module.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Binary entropy H(p) = -p log2(p) - (1-p) log2(1-p), with 0 log2(0) = 0.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    Ok(binary_entropy_unchecked(p))
}

/// H(p) for a probability already known to lie in [0, 1].
pub(crate) fn binary_entropy_unchecked(p: f64) -> f64 {
    -xlog2x(p) - xlog2x(1.0 - p)
}

/// x log2(x) with the 0 log2(0) = 0 convention.
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Exact binomial coefficient. Returns 0 for k < 0 or k > n.
pub fn binom(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient as f64 (exact below 2^53, correctly rounded above).
pub fn binom_f64(n: u64, k: i64) -> f64 {
    big_to_f64(&binom(n, k))
}

/// log2 of a positive big integer.
pub fn log2_big(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero(), "log2 of zero");
    big_to_f64(x).log2()
}

pub(crate) fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().expect("BigUint always converts to f64")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn entropy_symmetric_maximum() {
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < TOL);
    }

    #[test]
    fn entropy_degenerate_is_zero() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
    }

    #[test]
    fn entropy_reference_point() {
        // -0.2 log2 0.2 - 0.8 log2 0.8, checked against a high-precision evaluation.
        assert!((binary_entropy(0.2).unwrap() - 0.7219280948873623).abs() < TOL);
    }

    #[test]
    fn entropy_rejects_out_of_range() {
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(4, 2), BigUint::from(6u32));
        assert_eq!(binom(3, 5), BigUint::zero());
        assert_eq!(binom(3, -1), BigUint::zero());
        assert_eq!(binom(0, 0), BigUint::from(1u32));
    }

    #[test]
    fn binom_matches_pascal_triangle() {
        // Independent oracle: build Pascal's triangle row by row.
        let mut row = vec![BigUint::from(1u32)];
        for n in 0..=30u64 {
            for (k, value) in row.iter().enumerate() {
                assert_eq!(&binom(n, k as i64), value, "binom({n}, {k})");
            }
            let mut next = vec![BigUint::from(1u32)];
            for k in 1..row.len() {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(BigUint::from(1u32));
            row = next;
        }
        assert_eq!(binom(30, 15), BigUint::from(155117520u64));
    }

    #[test]
    fn binom_large_is_exact() {
        // n = 64 stays within exact integer arithmetic.
        let total: BigUint = (0..=64).map(|k| binom(64, k)).sum();
        assert_eq!(total, BigUint::from(2u32).pow(64));
    }

    #[test]
    fn log2_of_big_power() {
        let x = BigUint::from(2u32).pow(200);
        assert!((log2_big(&x) - 200.0).abs() < 1e-9);
    }
}
