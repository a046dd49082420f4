//! Achievable interval complexity via the splitting recursion.
//!
//! Writing h(a, b, n) = 2^C for the interval [a, b] over n nodes, letting the
//! last node transmit first splits the problem into the shifted interval on
//! one side and the unshifted one on the other:
//!
//! ```text
//! h(a, b, n) <= h(a-1, b-1, n-1) + h(a, b, n-1)
//! ```
//!
//! seeded with the exact threshold, co-threshold and delta counts. The
//! resulting value is sandwiched between the closed-form bounds.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::math::{binom, log2_big};
use crate::{Error, Result};

/// log2 of the recursion's value for the interval [a, b] over n nodes.
pub fn interval_recursion_upper(a: usize, b: usize, n: usize) -> Result<f64> {
    if a < 1 || a > b || b > n {
        return Err(Error::IntervalRange { a, b, n });
    }
    let mut memo = HashMap::new();
    let h = recurse(a as i64, b as i64, n as u64, &mut memo);
    Ok(log2_big(&h))
}

fn recurse(a: i64, b: i64, n: u64, memo: &mut HashMap<(i64, i64, u64), BigUint>) -> BigUint {
    if let Some(v) = memo.get(&(a, b, n)) {
        return v.clone();
    }
    let v = boundary(a, b, n)
        .unwrap_or_else(|| recurse(a - 1, b - 1, n - 1, memo) + recurse(a, b, n - 1, memo));
    memo.insert((a, b, n), v.clone());
    v
}

/// Exact seed values: constants cost nothing; [a, n] is the threshold a;
/// [0, b] is the complement of threshold b+1; [a, a] is the delta count
/// binom(n, a-1) + binom(n, a) + binom(n, a+1).
fn boundary(a: i64, b: i64, n: u64) -> Option<BigUint> {
    let one = BigUint::from(1u32);
    if a <= 0 && b >= n as i64 {
        return Some(one); // constant 1
    }
    if a > n as i64 {
        return Some(one); // constant 0
    }
    if a <= 0 {
        return Some(binom(n + 1, b + 1)); // co-threshold
    }
    if b >= n as i64 {
        return Some(binom(n + 1, a)); // threshold
    }
    if a == b {
        return Some(binom(n, a - 1) + binom(n, a) + binom(n, a + 1));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::binom_f64;

    const TOL: f64 = 1e-9;

    #[test]
    fn collapses_to_delta() {
        // [theta, theta] equals the delta count.
        for n in 2..=8usize {
            for theta in 1..=n {
                let expect = binom_f64(n as u64, theta as i64 - 1)
                    + binom_f64(n as u64, theta as i64)
                    + binom_f64(n as u64, theta as i64 + 1);
                let got = interval_recursion_upper(theta, theta, n).unwrap();
                assert!((got - expect.log2()).abs() < TOL, "delta {theta} of {n}");
            }
        }
    }

    #[test]
    fn full_interval_is_or() {
        for n in 1..=10usize {
            let got = interval_recursion_upper(1, n, n).unwrap();
            assert!((got - ((n + 1) as f64).log2()).abs() < TOL);
        }
    }

    #[test]
    fn sits_below_closed_form_bound() {
        // [2, 3] over 5 nodes: recursion <= log2(binom(6,4) + 2 binom(5,1)).
        let got = interval_recursion_upper(2, 3, 5).unwrap();
        let bound = (binom_f64(6, 4) + 2.0 * binom_f64(5, 1)).log2();
        assert!(got <= bound + TOL);
        // Exact value worked out by hand: h = h(1,2,4) + h(2,3,4) = 12 + 12.
        assert!((got - 24f64.log2()).abs() < TOL);
    }

    #[test]
    fn rejects_invalid_interval() {
        assert!(interval_recursion_upper(0, 2, 4).is_err());
        assert!(interval_recursion_upper(3, 2, 4).is_err());
        assert!(interval_recursion_upper(1, 5, 4).is_err());
    }
}
