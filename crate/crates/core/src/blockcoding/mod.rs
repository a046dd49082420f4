//! Coherent block computation of threshold functions.
//!
//! In a coherent strategy the selected node announces its entire current
//! subblock before the computation recurses on the instances where it sent
//! 0 and where it sent 1. With idealized per-instance description length
//! H(p), the optimal coherent cost solves the ordering DP under the
//! binary-entropy cost, and the k-th least-likely rule realizes it.

mod huffman;
mod partition;
mod simulate;

pub use huffman::HuffmanCode;
pub use partition::{
    conjecture_check, partition_lower_bound, ConjectureReport, ConjectureRow, CoordSet,
    PartitionBound, PartitionCandidate, Rectangle, PARTITION_NODE_CAP,
};
pub(crate) use simulate::code_bits;
pub use simulate::{simulate_block, BlockSimRun, CHUNK_BITS};

use serde::{Deserialize, Serialize};

use crate::measurement::TranscriptEntry;
use crate::ordering::{rule_choice, solve_dp, DpState};
use crate::{CostKind, Error, NodeSet, ProbProfile, Result, Transcript};

/// The recursive block-splitting schedule realized by the rule under the
/// entropy cost. Each decision node announces its whole current subblock;
/// the transcript prefix identifies which instances belong to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputationTree {
    pub state: DpState,
    /// Bits already announced on the path to this subblock.
    pub path: Transcript,
    pub choice: Option<ComputationNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputationNode {
    pub transmitter: usize,
    /// Idealized bits per surviving instance for this announcement.
    pub entropy_cost: f64,
    pub on_zero: Box<ComputationTree>,
    pub on_one: Box<ComputationTree>,
}

/// Optimal coherent cost plus the tree realizing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherentCost {
    pub bits_per_instance: f64,
    pub tree: ComputationTree,
}

/// Solves the entropy-cost ordering DP and reads off the rule's computation
/// tree. The returned cost is exactly the DP root value.
pub fn coherent_cost(profile: &ProbProfile, theta: usize) -> Result<CoherentCost> {
    let n = profile.n();
    if theta < 1 || theta > n {
        return Err(Error::ThresholdRange { theta, max: n });
    }
    let table = solve_dp(profile, theta, CostKind::BinaryEntropy)?;
    let root = DpState::new(NodeSet::full(n), theta);
    let tree = build_tree(profile, root, &mut Vec::new());
    Ok(CoherentCost {
        bits_per_instance: table.root_cost(),
        tree,
    })
}

fn build_tree(
    profile: &ProbProfile,
    state: DpState,
    path: &mut Vec<TranscriptEntry>,
) -> ComputationTree {
    let transcript = Transcript::new(profile.n(), path.clone()).expect("path is a valid prefix");
    if state.is_terminal() {
        return ComputationTree {
            state,
            path: transcript,
            choice: None,
        };
    }
    let transmitter = rule_choice(state);
    path.push(TranscriptEntry {
        node: transmitter,
        symbol: 0,
    });
    let on_zero = build_tree(profile, state.after(transmitter, 0), path);
    path.pop();
    path.push(TranscriptEntry {
        node: transmitter,
        symbol: 1,
    });
    let on_one = build_tree(profile, state.after(transmitter, 1), path);
    path.pop();
    ComputationTree {
        state,
        path: transcript,
        choice: Some(ComputationNode {
            transmitter,
            entropy_cost: CostKind::BinaryEntropy.evaluate(profile.p(transmitter)),
            on_zero: Box::new(on_zero),
            on_one: Box::new(on_one),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn profile(p: &[f64]) -> ProbProfile {
        ProbProfile::new(p.to_vec()).unwrap()
    }

    #[test]
    fn two_node_or_both_orders_by_hand() {
        // H(0.6) + 0.4 H(0.2) beats H(0.2) + 0.8 H(0.6).
        let c = coherent_cost(&profile(&[0.2, 0.6]), 1).unwrap();
        let expect = crate::math::binary_entropy(0.6).unwrap()
            + 0.4 * crate::math::binary_entropy(0.2).unwrap();
        assert!((c.bits_per_instance - expect).abs() < TOL);
        assert_eq!(c.tree.choice.as_ref().unwrap().transmitter, 2);
    }

    #[test]
    fn single_node_announces_its_block() {
        let c = coherent_cost(&profile(&[0.3]), 1).unwrap();
        assert!((c.bits_per_instance - crate::math::binary_entropy(0.3).unwrap()).abs() < TOL);
    }

    #[test]
    fn three_node_majority_root_is_node_two() {
        let c = coherent_cost(&profile(&[0.3, 0.5, 0.7]), 2).unwrap();
        assert_eq!(c.tree.choice.as_ref().unwrap().transmitter, 2);
    }

    #[test]
    fn matches_dp_and_policy_evaluation() {
        use crate::ordering::{policy_cost, rule_policy};
        let p = profile(&[0.25, 0.4, 0.65, 0.8]);
        for theta in 1..=4 {
            let c = coherent_cost(&p, theta).unwrap();
            let dp = solve_dp(&p, theta, CostKind::BinaryEntropy).unwrap();
            assert_eq!(c.bits_per_instance, dp.root_cost());
            let tree = rule_policy(&p, theta).unwrap();
            let via_policy = policy_cost(&tree, &p, theta, CostKind::BinaryEntropy).unwrap();
            assert!((via_policy - c.bits_per_instance).abs() < TOL);
        }
    }

    #[test]
    fn paths_identify_subblocks() {
        let c = coherent_cost(&profile(&[0.3, 0.5, 0.7]), 2).unwrap();
        let root = c.tree.choice.as_ref().unwrap();
        assert!(c.tree.path.is_empty());
        assert_eq!(root.on_zero.path.entries()[0].node, 2);
        assert_eq!(root.on_zero.path.entries()[0].symbol, 0);
        assert_eq!(root.on_one.path.entries()[0].symbol, 1);
    }
}
