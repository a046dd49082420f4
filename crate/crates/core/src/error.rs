//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(f64),

    #[error("probability {0} must lie strictly inside (0, 1)")]
    ProbabilityInterior(f64),

    #[error("profile must be non-empty")]
    EmptyProfile,

    #[error("profile entries must be non-decreasing (violated at position {0})")]
    ProfileUnsorted(usize),

    #[error("threshold {theta} outside 1..={max}")]
    ThresholdRange { theta: usize, max: usize },

    #[error("interval [{a}, {b}] invalid for n = {n}; need 1 <= a <= b <= n")]
    IntervalRange { a: usize, b: usize, n: usize },

    #[error("alphabet size {0} invalid; need m >= 1")]
    AlphabetRange(usize),

    #[error("alphabet has {got} entries but the network has {n} nodes")]
    AlphabetLength { got: usize, n: usize },

    #[error("measurement vector has {got} entries but the network has {n} nodes")]
    VectorLength { got: usize, n: usize },

    #[error("measurement value {value} at node {node} exceeds alphabet bound {bound}")]
    VectorRange { node: usize, value: u32, bound: u32 },

    #[error("node id {0} outside 1..={1}")]
    NodeRange(usize, usize),

    #[error("duplicate node id {0} in transcript")]
    DuplicateTranscriptNode(usize),

    #[error("{op} does not support this function kind")]
    UnsupportedKind { op: &'static str },

    #[error("{what}: n = {n} exceeds cap {cap}")]
    SizeCap { what: &'static str, n: usize, cap: usize },

    #[error("budget {budget} outside 0..={n}")]
    BudgetRange { budget: usize, n: usize },

    #[error("block length must be >= 1")]
    EmptyBlock,

    #[error("malformed policy tree: {0}")]
    MalformedPolicy(String),
}
