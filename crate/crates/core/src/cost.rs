//! Per-transmission cost models for the ordering dynamic program.

use serde::{Deserialize, Serialize};

use crate::math::binary_entropy_unchecked;

/// Cost f(p) of one transmission by a node with P(X = 1) = p.
///
/// All three kinds satisfy the two hypotheses the k-th least-likely rule
/// rests on: f(p) = f(1-p) and f(p)/p non-increasing on (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostKind {
    /// One bit per transmission (single-instance computation).
    Unit,
    /// H(p) bits per instance (coherent block computation).
    BinaryEntropy,
    /// min(p, 1-p) expected pulses (energy model, silence is free).
    PulseMin,
}

impl CostKind {
    /// Evaluates f(p). The probability must already lie in [0, 1].
    pub fn evaluate(self, p: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&p));
        match self {
            CostKind::Unit => 1.0,
            CostKind::BinaryEntropy => binary_entropy_unchecked(p),
            CostKind::PulseMin => p.min(1.0 - p),
        }
    }

    pub const ALL: [CostKind; 3] = [CostKind::Unit, CostKind::BinaryEntropy, CostKind::PulseMin];
}

impl std::fmt::Display for CostKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CostKind::Unit => "unit",
            CostKind::BinaryEntropy => "entropy",
            CostKind::PulseMin => "pulse",
        };
        write!(f, "{name}")
    }
}

impl std::str::FromStr for CostKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unit" => Ok(CostKind::Unit),
            "entropy" => Ok(CostKind::BinaryEntropy),
            "pulse" => Ok(CostKind::PulseMin),
            other => Err(format!("unknown cost kind '{other}' (expected unit|entropy|pulse)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The two hypotheses behind the ordering rule, checked on a dense grid:
    /// symmetry f(p) = f(1-p), and f(p)/p non-increasing on (0, 1].
    #[test]
    fn rule_hypotheses_hold_on_grid() {
        for cost in CostKind::ALL {
            let mut prev_ratio = f64::INFINITY;
            for i in 0..=10_000 {
                let p = i as f64 / 10_000.0;
                let f = cost.evaluate(p);
                assert!(
                    (f - cost.evaluate(1.0 - p)).abs() <= 1e-12,
                    "{cost}: f({p}) != f(1-{p})"
                );
                if p > 0.0 {
                    let ratio = f / p;
                    assert!(
                        ratio <= prev_ratio + 1e-12,
                        "{cost}: f(p)/p increased at p = {p}"
                    );
                    prev_ratio = ratio;
                }
            }
        }
    }

    #[test]
    fn point_values() {
        assert_eq!(CostKind::Unit.evaluate(0.3), 1.0);
        assert!((CostKind::BinaryEntropy.evaluate(0.5) - 1.0).abs() < 1e-12);
        assert!((CostKind::PulseMin.evaluate(0.3) - 0.3).abs() < 1e-12);
        assert!((CostKind::PulseMin.evaluate(0.9) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn parse_round_trip() {
        for cost in CostKind::ALL {
            let parsed: CostKind = cost.to_string().parse().unwrap();
            assert_eq!(parsed, cost);
        }
        assert!("bogus".parse::<CostKind>().is_err());
    }
}
