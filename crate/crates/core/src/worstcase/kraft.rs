//! Kraft-feasible codeword lengths for the threshold achievability scheme.
//!
//! The first transmitter sends its whole block of N bits with a prefix-free
//! code whose length depends only on the block's symbol counts (w0, w1).
//! Lengths are kept real-valued (idealized); rounding each up to an integer
//! costs at most one bit per node, amortized away over long blocks. The
//! ceiling-rounded integer plan is reported alongside.

use serde::{Deserialize, Serialize};

use crate::math::{big_to_f64, binom_f64, log2_big};
use crate::{Error, Result};

/// One entry per symbol-count class of the transmitter's block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KraftEntry {
    /// (w0, w1): number of zero and one instances in the block.
    pub counts: (usize, usize),
    /// Number of distinct blocks in this class, binom(N, w1).
    pub multiplicity: f64,
    /// Idealized real-valued codeword length.
    pub length: f64,
    /// Integer plan: the idealized length rounded up.
    pub length_ceil: u64,
    /// Codeword length plus the residual cost the remaining nodes pay:
    /// identical across classes by construction.
    pub total_cost: f64,
}

/// Codeword lengths l(X^N) for the first transmitter when computing a
/// Boolean threshold over n nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeLengthPlan {
    pub n: usize,
    pub theta: usize,
    pub block_len: usize,
    pub entries: Vec<KraftEntry>,
}

impl CodeLengthPlan {
    /// Kraft sum of the idealized lengths; exactly 1 by construction.
    pub fn kraft_sum(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.multiplicity * 2f64.powf(-e.length))
            .sum()
    }

    /// Kraft sum of the ceiling-rounded integer lengths; at most 1.
    pub fn kraft_sum_ceil(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.multiplicity * 2f64.powf(-(e.length_ceil as f64)))
            .sum()
    }

    /// Worst-case bits over all blocks: N log2 binom(n+1, theta).
    pub fn worst_total(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.total_cost)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Builds the idealized length assignment
/// l = N log2 binom(n+1, theta) - w0 log2 binom(n, theta) - w1 log2 binom(n, theta-1),
/// under which every block has the same total cost and the Kraft sum is 1.
pub fn kraft_plan(n: usize, theta: usize, block_len: usize) -> Result<CodeLengthPlan> {
    if theta < 1 || theta > n {
        return Err(Error::ThresholdRange { theta, max: n });
    }
    if block_len < 1 {
        return Err(Error::EmptyBlock);
    }
    let nn = n as u64;
    let t = theta as i64;
    let total = log2_big(&(crate::math::binom(nn + 1, t)));
    // Residual per-instance complexities after a 0 / 1 is known. binom(n, n)
    // or binom(n, 0) = 1 gives cost 0, covering the AND/OR boundary cases.
    let cost0 = binom_f64(nn, t).log2();
    let cost1 = binom_f64(nn, t - 1).log2();

    let big_n = block_len as u64;
    let mut entries = Vec::with_capacity(block_len + 1);
    for w1 in 0..=block_len {
        let w0 = block_len - w1;
        let length = big_n as f64 * total - w0 as f64 * cost0 - w1 as f64 * cost1;
        let multiplicity = mult(big_n, w1 as i64);
        entries.push(KraftEntry {
            counts: (w0, w1),
            multiplicity,
            length,
            length_ceil: length.ceil() as u64,
            total_cost: length + w0 as f64 * cost0 + w1 as f64 * cost1,
        });
    }
    Ok(CodeLengthPlan {
        n,
        theta,
        block_len,
        entries,
    })
}

fn mult(n: u64, k: i64) -> f64 {
    big_to_f64(&crate::math::binom(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn two_node_or_sums_to_one() {
        // n = 2, theta = 1, N = 1: lengths log2(3) - w0; Kraft sum (2+1)/3.
        let plan = kraft_plan(2, 1, 1).unwrap();
        assert!((plan.kraft_sum() - 1.0).abs() < TOL);
        let l_zero = plan.entries.iter().find(|e| e.counts == (1, 0)).unwrap();
        assert!((l_zero.length - (3f64.log2() - 1.0)).abs() < TOL);
        let l_one = plan.entries.iter().find(|e| e.counts == (0, 1)).unwrap();
        assert!((l_one.length - 3f64.log2()).abs() < TOL);
    }

    #[test]
    fn three_node_block_of_two() {
        let plan = kraft_plan(3, 2, 2).unwrap();
        assert!((plan.kraft_sum() - 1.0).abs() < TOL);
        assert!((plan.worst_total() - 2.0 * 6f64.log2()).abs() < TOL);
    }

    #[test]
    fn and_case_total_is_block_times_log() {
        // theta = n: the all-ones block pays l = N log2((n+1)/n) and total
        // N log2(n+1).
        for n in 2..=6 {
            let big_n = 4;
            let plan = kraft_plan(n, n, big_n).unwrap();
            let all_ones = plan
                .entries
                .iter()
                .find(|e| e.counts == (0, big_n))
                .unwrap();
            let expect = big_n as f64 * ((n as f64 + 1.0).log2() - (n as f64).log2());
            assert!((all_ones.length - expect).abs() < TOL);
            assert!(
                (plan.worst_total() - big_n as f64 * (n as f64 + 1.0).log2()).abs() < TOL
            );
        }
    }

    #[test]
    fn ceiling_plan_stays_feasible() {
        for (n, theta, len) in [(3, 2, 4), (5, 3, 6), (4, 1, 3)] {
            let plan = kraft_plan(n, theta, len).unwrap();
            assert!(plan.kraft_sum_ceil() <= 1.0 + TOL);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(kraft_plan(3, 0, 2).is_err());
        assert!(kraft_plan(3, 4, 2).is_err());
        assert!(kraft_plan(3, 2, 0).is_err());
    }
}
