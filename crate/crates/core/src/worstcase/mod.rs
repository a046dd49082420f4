//! Worst-case per-instance broadcast complexity of symmetric functions.
//!
//! Closed forms: threshold theta costs log2 binom(n+1, theta) bits per
//! instance (AND and OR are theta = n and theta = 1); the delta at theta
//! costs log2 of the weight-class count binom(n,theta-1) + binom(n,theta) +
//! binom(n,theta+1); the general integer threshold costs log2 of the two
//! generating-polynomial coefficients [Y^theta] + [Y^{theta-1}]. Interval
//! and MAX get bound pairs rather than exact values.

mod fooling;
mod genpoly;
mod interval;
mod kraft;

pub use fooling::{
    fooling_lower_bound, is_fooling_set, max_fooling_set, FoolingSet, FoolingVerdict,
    ENUM_CANDIDATE_CAP, ENUM_NODE_CAP,
};
pub use genpoly::{gen_threshold_fooling_count, GenPoly};
pub use interval::interval_recursion_upper;
pub use kraft::{kraft_plan, CodeLengthPlan, KraftEntry};

use serde::{Deserialize, Serialize};

use crate::math::{binom, binom_f64, log2_big};
use crate::{Error, FunctionKind, FunctionSpec, Result, DEFAULT_TOL};

/// Worst-case bits per instance: a lower bound, an upper bound, and whether
/// they coincide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityResult {
    pub lower_bits: f64,
    pub upper_bits: f64,
    pub exact: bool,
}

impl ComplexityResult {
    fn exact(bits: f64) -> Self {
        ComplexityResult {
            lower_bits: bits,
            upper_bits: bits,
            exact: true,
        }
    }

    fn bounds(lower_bits: f64, upper_bits: f64) -> Self {
        ComplexityResult {
            lower_bits,
            upper_bits,
            exact: (upper_bits - lower_bits).abs() <= DEFAULT_TOL,
        }
    }
}

/// Worst-case per-instance complexity of the given function.
///
/// Threshold, delta and general-threshold values are exact; interval and MAX
/// return bound pairs. MAX requires a uniform alphabet (the bound pair
/// log2(mn+1) vs log2 binom(n+m, m) is only stated for equal bounds);
/// parity is not covered by the closed forms.
pub fn complexity(spec: &FunctionSpec) -> Result<ComplexityResult> {
    let n = spec.n() as u64;
    match spec.kind() {
        FunctionKind::Threshold { theta } => {
            let count = binom(n + 1, *theta as i64);
            Ok(ComplexityResult::exact(log2_big(&count)))
        }
        FunctionKind::Delta { theta } => {
            let t = *theta as i64;
            // Weight-class count; equals binom(n+1, theta) + binom(n, theta+1)
            // by Pascal's rule (asserted in tests).
            let count = binom(n, t - 1) + binom(n, t) + binom(n, t + 1);
            Ok(ComplexityResult::exact(log2_big(&count)))
        }
        FunctionKind::Interval { a, b } => {
            let (a, b) = (*a as i64, *b as i64);
            let width = (b - a + 1) as u32;
            let (lower, upper) = if a + b <= n as i64 {
                (
                    binom(n + 1, b + 1) + binom(n, a - 1),
                    binom(n + 1, b + 1) + binom(n, a - 1) * width,
                )
            } else {
                (
                    binom(n + 1, a) + binom(n, b + 1),
                    binom(n + 1, a) + binom(n, b + 1) * width,
                )
            };
            Ok(ComplexityResult::bounds(log2_big(&lower), log2_big(&upper)))
        }
        FunctionKind::GeneralThreshold { theta, alphabet } => {
            let count = gen_threshold_fooling_count(*theta, alphabet)?;
            Ok(ComplexityResult::exact(log2_big(&count)))
        }
        FunctionKind::Max { alphabet } => {
            let m = alphabet[0];
            if alphabet.iter().any(|&mi| mi != m) {
                return Err(Error::UnsupportedKind {
                    op: "complexity of MAX with a non-uniform alphabet",
                });
            }
            let lower = ((m as u64 * n + 1) as f64).log2();
            let upper = binom_f64(n + m as u64, m as i64).log2();
            Ok(ComplexityResult::bounds(lower, upper))
        }
        FunctionKind::Parity => Err(Error::UnsupportedKind { op: "complexity" }),
    }
}
