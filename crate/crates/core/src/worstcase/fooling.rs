//! Fooling-set constructions and the pairwise validity check.
//!
//! A fooling set is a set of single-instance measurement vectors (columns)
//! no two of which may share a monochromatic protocol rectangle; its log2
//! size lower-bounds the per-instance complexity. Block-level validity
//! follows from the product construction over columns, so only the
//! single-column condition is checked here.

use serde::{Deserialize, Serialize};

use crate::{Error, FunctionKind, FunctionSpec, MeasurementVector, Result};

/// Caps for exhaustive column enumeration; desk-scale verification only.
pub const ENUM_NODE_CAP: usize = 20;
pub const ENUM_CANDIDATE_CAP: u64 = 1 << 20;

/// A set of measurement columns together with the spec it was built for.
/// The implied block-level family is every N-column matrix over these
/// columns, of size |columns|^N.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoolingSet {
    pub spec: FunctionSpec,
    pub columns: Vec<MeasurementVector>,
}

impl FoolingSet {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Per-instance lower bound log2 |columns|.
    pub fn log2_size(&self) -> f64 {
        (self.columns.len() as f64).log2()
    }
}

/// Outcome of the pairwise fooling check: either valid, or a witness pair
/// violating both clauses of the definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoolingVerdict {
    pub valid: bool,
    pub witness: Option<(MeasurementVector, MeasurementVector)>,
}

/// Checks the single-column fooling condition for every pair of distinct
/// columns: either the function values differ, or replacing one row of one
/// column by the other column's row changes that column's function value.
pub fn is_fooling_set(spec: &FunctionSpec, columns: &[MeasurementVector]) -> Result<FoolingVerdict> {
    let values: Vec<u64> = columns
        .iter()
        .map(|c| spec.evaluate(c))
        .collect::<Result<_>>()?;
    for (i, x) in columns.iter().enumerate() {
        for (j, y) in columns.iter().enumerate().skip(i + 1) {
            if x == y {
                continue;
            }
            if values[i] != values[j] {
                continue;
            }
            if !row_swap_changes_value(spec, x, y, values[i])? {
                return Ok(FoolingVerdict {
                    valid: false,
                    witness: Some((x.clone(), y.clone())),
                });
            }
        }
    }
    Ok(FoolingVerdict {
        valid: true,
        witness: None,
    })
}

fn row_swap_changes_value(
    spec: &FunctionSpec,
    x: &MeasurementVector,
    y: &MeasurementVector,
    value: u64,
) -> Result<bool> {
    for node in 1..=spec.n() {
        if x.value(node) == y.value(node) {
            continue;
        }
        if spec.evaluate(&x.with_value(node, y.value(node)))? != value
            || spec.evaluate(&y.with_value(node, x.value(node)))? != value
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The paper-sized fooling-set construction for the given function kind:
/// threshold uses column sums {theta-1, theta}; delta {theta-1, theta,
/// theta+1}; interval {a-1, b, b+1} when a+b <= n and {a-1, a, b+1}
/// otherwise; general threshold uses integer sums {theta-1, theta}; MAX uses
/// the all-zero column plus every single-nonzero column.
pub fn max_fooling_set(spec: &FunctionSpec) -> Result<FoolingSet> {
    let columns = match spec.kind() {
        FunctionKind::Threshold { theta } => {
            columns_with_sums(spec, &[*theta as i64 - 1, *theta as i64])?
        }
        FunctionKind::Delta { theta } => columns_with_sums(
            spec,
            &[*theta as i64 - 1, *theta as i64, *theta as i64 + 1],
        )?,
        FunctionKind::Interval { a, b } => {
            let (a, b, n) = (*a as i64, *b as i64, spec.n() as i64);
            let sums = if a + b <= n {
                [a - 1, b, b + 1]
            } else {
                [a - 1, a, b + 1]
            };
            columns_with_sums(spec, &sums)?
        }
        FunctionKind::GeneralThreshold { theta, .. } => {
            columns_with_sums(spec, &[*theta as i64 - 1, *theta as i64])?
        }
        FunctionKind::Max { alphabet } => max_columns(alphabet),
        FunctionKind::Parity => {
            return Err(Error::UnsupportedKind {
                op: "max_fooling_set",
            })
        }
    };
    Ok(FoolingSet {
        spec: spec.clone(),
        columns,
    })
}

/// All measurement columns whose coordinate sum lies in `sums`, found by
/// exhaustive enumeration over the alphabet product.
fn columns_with_sums(spec: &FunctionSpec, sums: &[i64]) -> Result<Vec<MeasurementVector>> {
    let n = spec.n();
    if n > ENUM_NODE_CAP {
        return Err(Error::SizeCap {
            what: "fooling-set enumeration",
            n,
            cap: ENUM_NODE_CAP,
        });
    }
    let candidates: u64 = (1..=n)
        .map(|i| spec.alphabet_size(i) as u64 + 1)
        .product();
    if candidates > ENUM_CANDIDATE_CAP {
        return Err(Error::SizeCap {
            what: "fooling-set candidate columns",
            n: candidates as usize,
            cap: ENUM_CANDIDATE_CAP as usize,
        });
    }
    let mut columns = Vec::new();
    let mut v = vec![0u32; n];
    loop {
        let sum = v.iter().map(|&x| x as i64).sum::<i64>();
        if sums.contains(&sum) {
            columns.push(MeasurementVector::new(v.clone()));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(columns);
            }
            if v[i] < spec.alphabet_size(i + 1) as u32 {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// The zero column plus every column with exactly one nonzero coordinate:
/// sum(m_i) + 1 columns in total ((mn + 1) for a uniform alphabet).
fn max_columns(alphabet: &[usize]) -> Vec<MeasurementVector> {
    let n = alphabet.len();
    let mut columns = vec![MeasurementVector::new(vec![0; n])];
    for (i, &m) in alphabet.iter().enumerate() {
        for value in 1..=m as u32 {
            let mut v = vec![0u32; n];
            v[i] = value;
            columns.push(MeasurementVector::new(v));
        }
    }
    columns
}

/// Convenience wrapper: log2 of the constructed fooling-set size.
pub fn fooling_lower_bound(spec: &FunctionSpec) -> Result<f64> {
    let set = max_fooling_set(spec)?;
    Ok(set.log2_size())
}
