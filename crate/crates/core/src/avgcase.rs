//! Average-case block computation with i.i.d. measurements.
//!
//! Nodes transmit in reverse order n, ..., 1; each codes only the instances
//! of the block that are not yet determined, where an instance is determined
//! once theta ones have been recorded for it. With idealized per-instance
//! description length H(p), the expected total for a block of N instances is
//!
//! ```text
//! theta N H(p) + N H(p) R,   R = sum_{t=theta}^{n-1} P(Bin(t, p) <= theta-1)
//! ```
//!
//! (the t-th transmitter codes an instance iff fewer than theta of the t
//! previous transmitters recorded a one there). R is bounded by
//! theta (1-p)/p, so the per-instance rate never exceeds theta H(p)/p —
//! a constant in n. The inner-sum indexing is pinned by an independent
//! binomial-tail oracle in the test suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::math::{binary_entropy_unchecked, binom_f64};
use crate::{Error, Result};

/// Closed-form expected cost of the reverse-order discard strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticCost {
    pub n: usize,
    pub theta: usize,
    pub p: f64,
    pub num_instances: usize,
    /// Expected total bits for the whole block.
    pub total_bits: f64,
    /// Expected bits per instance.
    pub rate: f64,
    /// The discard correction R (zero when theta = n).
    pub r_value: f64,
    /// The n-independent ceiling theta H(p) / p.
    pub rate_bound: f64,
}

/// Evaluates the expected cost formula. Requires 0 < p < 1 (degenerate
/// distributions make the entropy accounting vacuous).
pub fn analytic_cost(n: usize, theta: usize, p: f64, num_instances: usize) -> Result<AnalyticCost> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::ProbabilityInterior(p));
    }
    if theta < 1 || theta > n {
        return Err(Error::ThresholdRange { theta, max: n });
    }
    if num_instances == 0 {
        return Err(Error::EmptyBlock);
    }
    let h = binary_entropy_unchecked(p);
    let r = r_value(n, theta, p);
    let rate = h * (theta as f64 + r);
    Ok(AnalyticCost {
        n,
        theta,
        p,
        num_instances,
        total_bits: rate * num_instances as f64,
        rate,
        r_value: r,
        rate_bound: theta as f64 * h / p,
    })
}

/// R for one (n, theta, p): the double sum over undetermined probabilities.
pub fn r_value(n: usize, theta: usize, p: f64) -> f64 {
    let mut r = 0.0;
    for t in theta..n {
        for j in 0..theta {
            r += binom_f64(t as u64, j as i64)
                * p.powi(j as i32)
                * (1.0 - p).powi((t - j) as i32);
        }
    }
    r
}

/// R over a range of n, with the proof's ceiling theta (1-p)/p.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RSeries {
    pub theta: usize,
    pub p: f64,
    /// (n, R) pairs for n = theta ..= n_max.
    pub values: Vec<(usize, f64)>,
    pub bound: f64,
}

pub fn r_series(theta: usize, p: f64, n_max: usize) -> Result<RSeries> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::ProbabilityInterior(p));
    }
    if theta < 1 || theta > n_max {
        return Err(Error::ThresholdRange { theta, max: n_max });
    }
    let values = (theta..=n_max).map(|n| (n, r_value(n, theta, p))).collect();
    Ok(RSeries {
        theta,
        p,
        values,
        bound: theta as f64 * (1.0 - p) / p,
    })
}

/// How each surviving instance's bits are billed in the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscardCoding {
    /// H(p) per coded instance (the amortized-code idealization; default).
    Idealized,
    /// Real Huffman coding of the surviving instances in 8-bit chunks.
    EmpiricalHuffman,
}

/// One simulated run of the reverse-order discard strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscardRun {
    pub n: usize,
    pub theta: usize,
    pub p: f64,
    pub num_instances: usize,
    pub seed: u64,
    pub coding: DiscardCoding,
    /// Undetermined (coded) instance counts per transmission, in the
    /// transmission order n, n-1, ..., 1. Non-increasing.
    pub coded_per_node: Vec<usize>,
    pub total_bits: f64,
    pub rate: f64,
    /// Every node reconstructed the exact function block.
    pub zero_error: bool,
}

/// Draws an i.i.d. block and runs the discard strategy. Although the nodes
/// are exchangeable, the reverse order n, ..., 1 is kept as stated.
pub fn simulate_discard(
    n: usize,
    theta: usize,
    p: f64,
    num_instances: usize,
    seed: u64,
    coding: DiscardCoding,
) -> Result<DiscardRun> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::ProbabilityRange(p));
    }
    if theta < 1 || theta > n {
        return Err(Error::ThresholdRange { theta, max: n });
    }
    if num_instances == 0 {
        return Err(Error::EmptyBlock);
    }
    let h = binary_entropy_unchecked(p);

    // Node-major draw order, node 1 first, regardless of transmission order.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bits = vec![vec![0u8; num_instances]; n];
    for row in bits.iter_mut() {
        for b in row.iter_mut() {
            *b = (rng.gen::<f64>() < p) as u8;
        }
    }
    let truth: Vec<u8> = (0..num_instances)
        .map(|j| {
            let sum: usize = (0..n).map(|i| bits[i][j] as usize).sum();
            (sum >= theta) as u8
        })
        .collect();

    let mut ones_so_far = vec![0usize; num_instances];
    let mut decoded: Vec<Option<u8>> = vec![None; num_instances];
    let mut coded_per_node = Vec::with_capacity(n);
    let mut total_bits = 0.0;
    let mut zero_error = true;

    for node in (1..=n).rev() {
        let surviving: Vec<usize> = (0..num_instances)
            .filter(|&j| ones_so_far[j] < theta)
            .collect();
        coded_per_node.push(surviving.len());
        let symbols: Vec<u8> = surviving.iter().map(|&j| bits[node - 1][j]).collect();
        match coding {
            DiscardCoding::Idealized => total_bits += surviving.len() as f64 * h,
            DiscardCoding::EmpiricalHuffman => {
                if !symbols.is_empty() {
                    let (bit_len, round_trip) = crate::blockcoding::code_bits(&symbols);
                    total_bits += bit_len as f64;
                    zero_error &= round_trip == symbols;
                }
            }
        }
        for (&j, &b) in surviving.iter().zip(&symbols) {
            ones_so_far[j] += b as usize;
            if ones_so_far[j] >= theta {
                decoded[j] = Some(1);
            }
        }
    }
    // Instances never determined had every bit announced: value < theta.
    for d in decoded.iter_mut() {
        if d.is_none() {
            *d = Some(0);
        }
    }
    zero_error &= decoded
        .iter()
        .zip(&truth)
        .all(|(d, t)| d.as_ref() == Some(t));

    Ok(DiscardRun {
        n,
        theta,
        p,
        num_instances,
        seed,
        coding,
        rate: total_bits / num_instances as f64,
        coded_per_node,
        total_bits,
        zero_error,
    })
}

/// Max absolute error of the derivative identity across thetas and a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorReport {
    pub theta_max: usize,
    pub max_abs_error: f64,
}

/// Checks, by exact polynomial differentiation, that the (theta-1)-th
/// derivative of x^theta / (1-x) equals (theta-1)! (1/(1-x)^theta - 1).
///
/// The left side is differentiated symbolically as P(x)/(1-x)^k with exact
/// integer coefficients. Each grid point, itself a rational number, is then
/// substituted into both sides in exact rational arithmetic, so the reported
/// error carries no floating-point differentiation or evaluation noise.
pub fn check_taylor_lemma(theta_max: usize, grid: &[f64]) -> Result<TaylorReport> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Signed, ToPrimitive};

    if theta_max < 1 || theta_max > 8 {
        return Err(Error::SizeCap {
            what: "derivative identity check",
            n: theta_max,
            cap: 8,
        });
    }
    for &x in grid {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::ProbabilityInterior(x));
        }
    }
    let points: Vec<BigRational> = grid
        .iter()
        .map(|&x| BigRational::from_float(x).expect("grid point is finite"))
        .collect();

    let mut max_abs_error: f64 = 0.0;
    for theta in 1..=theta_max {
        // g = x^theta / (1-x).
        let mut poly = vec![0i128; theta + 1];
        poly[theta] = 1;
        let mut g = RationalPower { poly, denom_pow: 1 };
        for _ in 1..theta {
            g = g.derivative();
        }
        let factorial: BigInt = (1..theta as u64).map(BigInt::from).product();
        for x in &points {
            let one_minus_x = BigRational::one() - x;
            let lhs = g.eval_exact(x) / pow_rational(&one_minus_x, g.denom_pow);
            let rhs = BigRational::from(factorial.clone())
                * (BigRational::one() / pow_rational(&one_minus_x, theta as u32)
                    - BigRational::one());
            let diff = (lhs - rhs).abs();
            max_abs_error = max_abs_error.max(diff.to_f64().unwrap_or(f64::INFINITY));
        }
    }
    Ok(TaylorReport {
        theta_max,
        max_abs_error,
    })
}

fn pow_rational(x: &num_rational::BigRational, k: u32) -> num_rational::BigRational {
    use num_traits::One;
    let mut acc = num_rational::BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// P(x) / (1-x)^k with exact integer coefficients.
struct RationalPower {
    poly: Vec<i128>,
    denom_pow: u32,
}

impl RationalPower {
    /// d/dx [P/(1-x)^k] = (P'(1-x) + kP) / (1-x)^{k+1}.
    fn derivative(&self) -> RationalPower {
        let p = &self.poly;
        let k = self.denom_pow as i128;
        // P'
        let dp: Vec<i128> = (1..p.len()).map(|i| p[i] * i as i128).collect();
        // P'(1-x) + kP
        let mut out = vec![0i128; p.len() + 1];
        for (i, &c) in dp.iter().enumerate() {
            out[i] += c;
            out[i + 1] -= c;
        }
        for (i, &c) in p.iter().enumerate() {
            out[i] += k * c;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        RationalPower {
            poly: out,
            denom_pow: self.denom_pow + 1,
        }
    }

    /// Numerator polynomial evaluated exactly at a rational point.
    fn eval_exact(&self, x: &num_rational::BigRational) -> num_rational::BigRational {
        use num_traits::Zero;
        let mut acc = num_rational::BigRational::zero();
        for &c in self.poly.iter().rev() {
            acc = acc * x + num_rational::BigRational::from(num_bigint::BigInt::from(c));
        }
        acc
    }

    #[cfg(test)]
    fn eval(&self, x: f64) -> f64 {
        let num = self
            .poly
            .iter()
            .rev()
            .fold(0.0f64, |acc, &c| acc * x + c as f64);
        num / (1.0 - x).powi(self.denom_pow as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn theta_one_closed_form() {
        // R for theta = 1 telescopes to ((1-p) - (1-p)^n) / p.
        for p in [0.2f64, 0.5, 0.8] {
            for n in 1..=20usize {
                let expect = ((1.0 - p) - (1.0 - p).powi(n as i32)) / p;
                assert!((r_value(n, 1, p) - expect).abs() < TOL);
                let cost = analytic_cost(n, 1, p, 1).unwrap();
                assert!(cost.rate < cost.rate_bound + TOL);
            }
        }
    }

    #[test]
    fn theta_equals_n_has_no_discount() {
        // Nothing is ever determined early: the sum is empty.
        let cost = analytic_cost(5, 5, 0.3, 100).unwrap();
        assert_eq!(cost.r_value, 0.0);
        let h = crate::math::binary_entropy(0.3).unwrap();
        assert!((cost.rate - 5.0 * h).abs() < TOL);
    }

    #[test]
    fn r_bound_holds_broadly() {
        for theta in 1..=6usize {
            for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let series = r_series(theta, p, 200).unwrap();
                for (n, r) in series.values {
                    assert!(r <= series.bound + TOL, "R({n},{theta},{p})");
                }
            }
        }
    }

    #[test]
    fn rejects_degenerate_p() {
        assert!(analytic_cost(5, 2, 0.0, 10).is_err());
        assert!(analytic_cost(5, 2, 1.0, 10).is_err());
    }

    #[test]
    fn discard_simulation_matches_analytic() {
        let run =
            simulate_discard(8, 2, 0.5, 1 << 16, 11, DiscardCoding::Idealized).unwrap();
        assert!(run.zero_error);
        let analytic = analytic_cost(8, 2, 0.5, 1 << 16).unwrap();
        let gap = (run.rate - analytic.rate).abs() / analytic.rate;
        assert!(gap < 0.03, "gap {gap}");
        // Undetermined counts never increase.
        for w in run.coded_per_node.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn or_rate_stays_under_bound() {
        let run = simulate_discard(8, 1, 0.5, 1 << 16, 3, DiscardCoding::Idealized).unwrap();
        assert!(run.rate < 2.0); // theta H(p) / p = 2
    }

    #[test]
    fn theta_equals_n_codes_everything() {
        let run = simulate_discard(4, 4, 0.6, 4096, 5, DiscardCoding::Idealized).unwrap();
        assert_eq!(run.coded_per_node, vec![4096; 4]);
        let h = crate::math::binary_entropy(0.6).unwrap();
        assert!((run.rate - 4.0 * h).abs() < TOL);
    }

    #[test]
    fn seed_repeat_determinism() {
        let a = simulate_discard(6, 2, 0.4, 8192, 77, DiscardCoding::EmpiricalHuffman).unwrap();
        let b = simulate_discard(6, 2, 0.4, 8192, 77, DiscardCoding::EmpiricalHuffman).unwrap();
        assert_eq!(a, b);
        assert!(a.zero_error);
    }

    #[test]
    fn empirical_huffman_close_to_idealized() {
        let run =
            simulate_discard(8, 2, 0.5, 1 << 16, 13, DiscardCoding::EmpiricalHuffman).unwrap();
        let analytic = analytic_cost(8, 2, 0.5, 1 << 16).unwrap();
        let gap = (run.rate - analytic.rate).abs() / analytic.rate;
        assert!(gap < 0.03, "gap {gap}");
    }

    #[test]
    fn derivative_identity() {
        let grid: Vec<f64> = (1..20).map(|i| i as f64 / 20.0).collect();
        let report = check_taylor_lemma(8, &grid).unwrap();
        assert!(report.max_abs_error <= 1e-9, "err {}", report.max_abs_error);
    }

    #[test]
    fn derivative_identity_point_value() {
        // theta = 3 at x = 0.5: both sides are 2! (8 - 1) = 14.
        let mut g = RationalPower {
            poly: vec![0, 0, 0, 1],
            denom_pow: 1,
        };
        g = g.derivative().derivative();
        assert!((g.eval(0.5) - 14.0).abs() < TOL);
    }

    #[test]
    fn parallel_schemes_compose() {
        // Two thresholds run side by side cost at most (t1 + t2) H(p) / p.
        let p = 0.4;
        let h = crate::math::binary_entropy(p).unwrap();
        for (t1, t2) in [(1, 2), (2, 3), (1, 5)] {
            let c1 = analytic_cost(50, t1, p, 1).unwrap();
            let c2 = analytic_cost(50, t2, p, 1).unwrap();
            assert!(c1.rate + c2.rate <= (t1 + t2) as f64 * h / p + TOL);
        }
    }
}
