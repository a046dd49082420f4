//! Computation of symmetric Boolean (and integer) functions in collocated
//! broadcast networks.
//!
//! A collocated network is one where every transmission is heard by every
//! node, and at most one node transmits at a time. Given marginal Bernoulli
//! parameters for the nodes' Boolean measurements, this crate answers two
//! families of questions about computing a symmetric function of those
//! measurements with zero error at every node:
//!
//! * **Worst case** ([`worstcase`]): closed-form per-instance bit complexity
//!   for threshold, delta, interval, general integer threshold and MAX
//!   functions, cross-checked by two independent oracles — fooling-set
//!   enumeration (lower bound) and Kraft-feasible codelength construction
//!   (achievability).
//! * **Average case** ([`ordering`], [`blockcoding`], [`avgcase`]): the
//!   subset dynamic program for optimal transmission ordering, the k-th
//!   least-likely selection rule and its verification against the DP,
//!   coherent block computation with real Huffman codes, the
//!   protocol-partition entropy lower bound, and the O(theta) discard
//!   strategy for i.i.d. measurements.
//!
//! [`approx`] covers the complementary budgeted setting: how well can the
//! function be approximated when only a fixed number of bits may be spent.
//!
//! Node ids are 1-based everywhere, and probability profiles are kept sorted
//! non-decreasing; removing a node never re-indexes the others.

pub mod approx;
pub mod avgcase;
pub mod blockcoding;
pub mod cost;
pub mod error;
pub mod function;
pub mod math;
pub mod measurement;
pub mod nodeset;
pub mod ordering;
pub mod profile;
pub mod worstcase;

pub use cost::CostKind;
pub use error::Error;
pub use function::{FunctionKind, FunctionSpec};
pub use measurement::{MeasurementVector, Transcript};
pub use nodeset::NodeSet;
pub use profile::ProbProfile;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Default absolute tolerance for floating-point assertions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance when matching values printed to four decimal places.
pub const PRINTED_VALUE_TOL: f64 = 5e-4;
