//! Policy trees and the k-th least-likely selection rule.
//!
//! At a state computing a threshold over m remaining nodes with t ones still
//! needed, write k = m - t. The rule transmits the (k+1)-th least likely
//! remaining node. Each 1-bit decrements both t and m (k unchanged until a
//! re-rank), each 0-bit decrements m only; ranks are recomputed among the
//! remaining nodes after every transmission. The re-rank after a 0-bit is
//! forced by the state transition of the dynamic program, which the rule is
//! read off from.

use serde::{Deserialize, Serialize};

use super::DpState;
use crate::{CostKind, Error, NodeSet, ProbProfile, Result};

/// A dynamic ordering strategy: which node transmits at every reachable
/// transcript prefix. Leaves carry terminal states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyTree {
    pub state: DpState,
    /// `None` at terminal leaves.
    pub choice: Option<PolicyNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyNode {
    pub transmitter: usize,
    pub on_zero: Box<PolicyTree>,
    pub on_one: Box<PolicyTree>,
}

impl PolicyTree {
    /// Number of decision nodes (transmitting states).
    pub fn decision_count(&self) -> usize {
        match &self.choice {
            None => 0,
            Some(c) => 1 + c.on_zero.decision_count() + c.on_one.decision_count(),
        }
    }
}

/// The rule's transmitter at one state: with m remaining and t still needed,
/// the (m - t + 1)-th smallest-probability remaining node. Equal
/// probabilities resolve to the lowest node id (the profile is sorted, so
/// ascending id is ascending probability with ties by id).
pub fn rule_choice(state: DpState) -> usize {
    debug_assert!(!state.is_terminal());
    let k = state.remaining.len() - state.needed;
    state
        .remaining
        .nth(k)
        .expect("non-terminal state has at least needed nodes")
}

/// Builds the rule's full policy tree for threshold `theta`.
pub fn rule_policy(profile: &ProbProfile, theta: usize) -> Result<PolicyTree> {
    let n = profile.n();
    if theta < 1 || theta > n {
        return Err(Error::ThresholdRange { theta, max: n });
    }
    Ok(build_rule_tree(DpState::new(NodeSet::full(n), theta)))
}

fn build_rule_tree(state: DpState) -> PolicyTree {
    if state.is_terminal() {
        return PolicyTree {
            state,
            choice: None,
        };
    }
    let transmitter = rule_choice(state);
    PolicyTree {
        state,
        choice: Some(PolicyNode {
            transmitter,
            on_zero: Box::new(build_rule_tree(state.after(transmitter, 0))),
            on_one: Box::new(build_rule_tree(state.after(transmitter, 1))),
        }),
    }
}

/// A static policy that transmits in the fixed order given, regardless of
/// the bits observed (stopping at terminal states).
pub fn static_order_policy(n: usize, theta: usize, order: &[usize]) -> Result<PolicyTree> {
    if theta < 1 || theta > n {
        return Err(Error::ThresholdRange { theta, max: n });
    }
    let mut seen = NodeSet::EMPTY;
    for &node in order {
        if node < 1 || node > n {
            return Err(Error::NodeRange(node, n));
        }
        if seen.contains(node) {
            return Err(Error::MalformedPolicy(format!(
                "node {node} repeated in static order"
            )));
        }
        seen = seen.with(node);
    }
    if seen.len() != n {
        return Err(Error::MalformedPolicy(
            "static order must cover every node".into(),
        ));
    }
    Ok(build_static_tree(
        DpState::new(NodeSet::full(n), theta),
        order,
    ))
}

fn build_static_tree(state: DpState, order: &[usize]) -> PolicyTree {
    if state.is_terminal() {
        return PolicyTree {
            state,
            choice: None,
        };
    }
    let (pos, transmitter) = order
        .iter()
        .enumerate()
        .find(|(_, node)| state.remaining.contains(**node))
        .map(|(i, node)| (i, *node))
        .expect("non-terminal state has remaining nodes");
    let rest = &order[pos + 1..];
    PolicyTree {
        state,
        choice: Some(PolicyNode {
            transmitter,
            on_zero: Box::new(build_static_tree(state.after(transmitter, 0), rest)),
            on_one: Box::new(build_static_tree(state.after(transmitter, 1), rest)),
        }),
    }
}

/// Exact expected cost of an arbitrary policy tree, by expectation over the
/// branch probabilities. Validates the tree's internal consistency.
pub fn policy_cost(
    policy: &PolicyTree,
    profile: &ProbProfile,
    theta: usize,
    cost: CostKind,
) -> Result<f64> {
    let expected_root = DpState::new(NodeSet::full(profile.n()), theta);
    if policy.state != expected_root {
        return Err(Error::MalformedPolicy(format!(
            "root state {:?} does not match profile/threshold {:?}",
            policy.state, expected_root
        )));
    }
    eval_policy(policy, profile, cost)
}

fn eval_policy(tree: &PolicyTree, profile: &ProbProfile, cost: CostKind) -> Result<f64> {
    let state = tree.state;
    match &tree.choice {
        None => {
            if !state.is_terminal() {
                return Err(Error::MalformedPolicy(format!(
                    "leaf at non-terminal state {state:?}"
                )));
            }
            Ok(0.0)
        }
        Some(node) => {
            if state.is_terminal() {
                return Err(Error::MalformedPolicy(format!(
                    "decision at terminal state {state:?}"
                )));
            }
            let t = node.transmitter;
            if !state.remaining.contains(t) {
                return Err(Error::MalformedPolicy(format!(
                    "transmitter {t} not in remaining set {:?}",
                    state.remaining
                )));
            }
            if node.on_zero.state != state.after(t, 0) || node.on_one.state != state.after(t, 1) {
                return Err(Error::MalformedPolicy(format!(
                    "child states inconsistent below {state:?}"
                )));
            }
            let p = profile.p(t);
            let mut v = cost.evaluate(p);
            if p > 0.0 {
                v += p * eval_policy(&node.on_one, profile, cost)?;
            }
            if p < 1.0 {
                v += (1.0 - p) * eval_policy(&node.on_zero, profile, cost)?;
            }
            Ok(v)
        }
    }
}

/// One state where the rule's choice fell outside the DP argmin set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleViolation {
    pub state: DpState,
    pub rule_node: usize,
    pub argmin: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleVerdict {
    pub holds: bool,
    pub violation: Option<RuleViolation>,
}

/// Checks that the rule's choice lies in the DP argmin set at every state
/// reachable from the root by any transmission sequence.
pub fn verify_rule(profile: &ProbProfile, theta: usize, cost: CostKind) -> Result<RuleVerdict> {
    let table = super::solve_dp(profile, theta, cost)?;
    for (state, entry) in table.states() {
        let rule_node = rule_choice(*state);
        if !entry.argmin.contains(&rule_node) {
            return Ok(RuleVerdict {
                holds: false,
                violation: Some(RuleViolation {
                    state: *state,
                    rule_node,
                    argmin: entry.argmin.clone(),
                }),
            });
        }
    }
    Ok(RuleVerdict {
        holds: true,
        violation: None,
    })
}
