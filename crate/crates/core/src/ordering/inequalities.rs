//! Numeric verification of the loaded induction hypothesis behind the rule.
//!
//! The optimality proof tracks three families of differences between DP
//! costs when the rule's node (k+1) or a contender i transmits first, and
//! bounds each by a cost-function expression. With C(S, t) the optimal DP
//! cost and writing p for the profile, the quantities over the m least
//! likely nodes are:
//!
//!   T(m,k,i)  = p_{k+1} C(full_m - (k+1), m-k-1) + (1-p_{k+1}) C(full_m - (k+1), m-k)
//!             - p_i C(full_m - i, m-k-1) - (1-p_i) C(full_m - i, m-k)
//!   S1(m,k,i) = (p_{k+1} - p_i) C(full_m - (k+1) - i, m-k-1)
//!             + (1-p_{k+1}) C(full_m - (k+1), m-k) - (1-p_i) C(full_m - i, m-k)
//!   S2(m,k,i) = (p_i - p_{k+1}) C(full_m - (k+1) - i, m-k-1)
//!             + p_{k+1} C(full_m - (k+1), m-k-1) - p_i C(full_m - i, m-k-1)
//!
//! and the claimed bounds are
//!
//!   (a) T  <= f(p_i) - f(p_{k+1})                    for 0 <= k <= m-1, 1 <= i <= m
//!   (b) S1 <= (1-p_{k+1}) f(p_i) - (1-p_i) f(p_{k+1}) for k <= m-2, k+2 <= i <= m
//!   (c) S2 <= p_{k+1} f(p_i) - p_i f(p_{k+1})         for 0 <= k <= m-1, 1 <= i <= k
//!
//! This module evaluates every quantity from solved DP values and reports
//! the slack bound - value, which must never be meaningfully negative when
//! the cost function satisfies the rule's two hypotheses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{DpSolver, DpState};
use crate::{CostKind, NodeSet, ProbProfile, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisPart {
    /// T(m,k,i) <= f(p_i) - f(p_{k+1}).
    A,
    /// S1(m,k,i) <= (1-p_{k+1}) f(p_i) - (1-p_i) f(p_{k+1}).
    B,
    /// S2(m,k,i) <= p_{k+1} f(p_i) - p_i f(p_{k+1}).
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub part: HypothesisPart,
    pub m: usize,
    pub k: usize,
    pub i: usize,
    pub value: f64,
    pub bound: f64,
    /// bound - value; negative means a violation.
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub cost: CostKind,
    pub records: Vec<InequalityRecord>,
    pub min_slack: f64,
}

impl InequalityReport {
    /// Largest violation observed (0 when every inequality holds).
    pub fn max_violation(&self) -> f64 {
        (-self.min_slack).max(0.0)
    }

    pub fn worst(&self) -> Option<&InequalityRecord> {
        self.records
            .iter()
            .min_by(|a, b| a.slack.total_cmp(&b.slack))
    }
}

/// Evaluates all three families over every m <= n (the m least likely
/// nodes), all k and all valid i, for one profile.
pub fn check_appendix_inequalities(
    profile: &ProbProfile,
    cost: CostKind,
) -> Result<InequalityReport> {
    let mut solver = DpSolver::new(profile, cost)?;
    let f = |p: f64| cost.evaluate(p);
    let mut records = Vec::new();

    for m in 1..=profile.n() {
        let full = NodeSet::full(m);
        for k in 0..m {
            let lead = k + 1; // the rule's node
            let p_lead = profile.p(lead);
            let t_hi = m - k; // residual threshold before any transmission
            let t_lo = t_hi - 1;

            let lead_lo = solver.cost_of(DpState::new(full.without(lead), t_lo));
            let lead_hi = solver.cost_of(DpState::new(full.without(lead), t_hi));

            for i in 1..=m {
                let p_i = profile.p(i);
                let i_lo = solver.cost_of(DpState::new(full.without(i), t_lo));
                let i_hi = solver.cost_of(DpState::new(full.without(i), t_hi));

                // Part (a) for every i; T(m, k, k+1) = 0 with bound 0.
                let t_value =
                    p_lead * lead_lo + (1.0 - p_lead) * lead_hi - p_i * i_lo - (1.0 - p_i) * i_hi;
                let t_bound = f(p_i) - f(p_lead);
                records.push(InequalityRecord {
                    part: HypothesisPart::A,
                    m,
                    k,
                    i,
                    value: t_value,
                    bound: t_bound,
                    slack: t_bound - t_value,
                });

                if i == lead {
                    continue;
                }
                let pair_lo = solver.cost_of(DpState::new(full.without(lead).without(i), t_lo));

                if i >= k + 2 && k + 1 <= m - 1 {
                    let value = (p_lead - p_i) * pair_lo + (1.0 - p_lead) * lead_hi
                        - (1.0 - p_i) * i_hi;
                    let bound = (1.0 - p_lead) * f(p_i) - (1.0 - p_i) * f(p_lead);
                    records.push(InequalityRecord {
                        part: HypothesisPart::B,
                        m,
                        k,
                        i,
                        value,
                        bound,
                        slack: bound - value,
                    });
                }

                if i <= k {
                    let value = (p_i - p_lead) * pair_lo + p_lead * lead_lo - p_i * i_lo;
                    let bound = p_lead * f(p_i) - p_i * f(p_lead);
                    records.push(InequalityRecord {
                        part: HypothesisPart::C,
                        m,
                        k,
                        i,
                        value,
                        bound,
                        slack: bound - value,
                    });
                }
            }
        }
    }

    let min_slack = records
        .iter()
        .map(|r| r.slack)
        .fold(f64::INFINITY, f64::min);
    Ok(InequalityReport {
        cost,
        records,
        min_slack,
    })
}

/// Draws seeded random sorted profiles and returns the report with the
/// smallest slack across all of them.
pub fn sample_appendix_inequalities(
    n: usize,
    cost: CostKind,
    trials: usize,
    seed: u64,
) -> Result<InequalityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: Option<InequalityReport> = None;
    for _ in 0..trials {
        let mut probs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.001..0.999)).collect();
        probs.sort_by(f64::total_cmp);
        let profile = ProbProfile::new(probs)?;
        let report = check_appendix_inequalities(&profile, cost)?;
        worst = match worst {
            None => Some(report),
            Some(w) if report.min_slack < w.min_slack => Some(report),
            Some(w) => Some(w),
        };
    }
    Ok(worst.expect("at least one trial"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn unit_cost_random_profiles_hold() {
        let report = sample_appendix_inequalities(4, CostKind::Unit, 50, 3).unwrap();
        assert!(report.min_slack >= -TOL, "worst: {:?}", report.worst());
    }

    #[test]
    fn rule_node_itself_gives_equality() {
        let profile = ProbProfile::new(vec![0.2, 0.5, 0.8]).unwrap();
        let report = check_appendix_inequalities(&profile, CostKind::Unit).unwrap();
        for r in report
            .records
            .iter()
            .filter(|r| matches!(r.part, HypothesisPart::A) && r.i == r.k + 1)
        {
            assert!(r.value.abs() < TOL);
            assert!(r.bound.abs() < TOL);
        }
    }

    #[test]
    fn k_zero_large_i_part_b_is_zero() {
        // With k = 0 the three thresholds exceed the remaining set sizes, so
        // every cost term is 0 and S1 = 0 <= bound.
        let profile = ProbProfile::new(vec![0.3, 0.6, 0.9]).unwrap();
        let report = check_appendix_inequalities(&profile, CostKind::BinaryEntropy).unwrap();
        for r in report
            .records
            .iter()
            .filter(|r| matches!(r.part, HypothesisPart::B) && r.k == 0)
        {
            assert!(r.value.abs() < TOL);
            assert!(r.slack >= -TOL);
        }
    }

    #[test]
    fn all_cost_kinds_hold_on_fixed_profile() {
        let profile = ProbProfile::new(vec![0.1, 0.25, 0.5, 0.7, 0.95]).unwrap();
        for cost in CostKind::ALL {
            let report = check_appendix_inequalities(&profile, cost).unwrap();
            assert!(
                report.min_slack >= -TOL,
                "{cost}: worst {:?}",
                report.worst()
            );
        }
    }
}
