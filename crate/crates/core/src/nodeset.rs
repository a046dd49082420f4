//! Immutable index subsets of the node set {1, ..., n}.
//!
//! Removing a node from consideration never re-indexes the others: a
//! `NodeSet` is a view over the global (sorted) profile, so "node 3" means
//! the same node before and after any removals.

use serde::{Deserialize, Serialize};

/// A subset of 1-based node ids, stored as a bitmask (bit i-1 = node i).
#[derive(Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(u32);

/// Largest node id representable by a `NodeSet`.
pub const MAX_NODES: usize = 32;

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    /// The full set {1, ..., n}.
    pub fn full(n: usize) -> NodeSet {
        assert!(n <= MAX_NODES, "NodeSet supports at most {MAX_NODES} nodes");
        if n == 0 {
            NodeSet(0)
        } else {
            NodeSet(u32::MAX >> (32 - n))
        }
    }

    pub fn from_nodes(nodes: &[usize]) -> NodeSet {
        let mut s = NodeSet(0);
        for &i in nodes {
            s = s.with(i);
        }
        s
    }

    pub fn contains(self, node: usize) -> bool {
        debug_assert!((1..=MAX_NODES).contains(&node));
        self.0 & (1 << (node - 1)) != 0
    }

    #[must_use]
    pub fn with(self, node: usize) -> NodeSet {
        debug_assert!((1..=MAX_NODES).contains(&node));
        NodeSet(self.0 | (1 << (node - 1)))
    }

    #[must_use]
    pub fn without(self, node: usize) -> NodeSet {
        debug_assert!((1..=MAX_NODES).contains(&node));
        NodeSet(self.0 & !(1 << (node - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Node ids in ascending order. On a sorted profile this is also
    /// ascending probability order, ties broken by lowest id.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let node = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(node)
            }
        })
    }

    /// The k-th member in ascending id order (0-based rank).
    pub fn nth(self, rank: usize) -> Option<usize> {
        self.iter().nth(rank)
    }

    pub fn bits(self) -> u32 {
        self.0
    }
}

impl std::fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_membership() {
        let s = NodeSet::full(5);
        assert_eq!(s.len(), 5);
        assert!(s.contains(1) && s.contains(5));
        let t = s.without(3);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![1, 2, 4, 5]);
        assert_eq!(t.nth(2), Some(4));
        assert_eq!(t.nth(4), None);
    }

    #[test]
    fn empty_set() {
        assert!(NodeSet::full(0).is_empty());
        assert_eq!(NodeSet::EMPTY.iter().count(), 0);
    }
}
