//! Sorted Bernoulli parameter profiles.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The marginal probabilities (p_1, ..., p_n) of the nodes' Boolean
/// measurements, kept in non-decreasing order. Node ids are 1-based, so the
/// least likely node is node 1 and the most likely is node n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbProfile {
    probs: Vec<f64>,
}

impl ProbProfile {
    /// Builds a profile, requiring entries in [0, 1] sorted non-decreasing.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyProfile);
        }
        for (i, &p) in probs.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(Error::ProbabilityRange(p));
            }
            if i > 0 && p < probs[i - 1] {
                return Err(Error::ProfileUnsorted(i));
            }
        }
        Ok(ProbProfile { probs })
    }

    /// Sorts arbitrary probabilities into a profile. Also returns, for each
    /// rank id (1-based sorted position), the original 1-based position, so
    /// callers can report results in the caller's own numbering.
    pub fn from_unsorted(probs: &[f64]) -> Result<(Self, Vec<usize>)> {
        let mut order: Vec<usize> = (0..probs.len()).collect();
        order.sort_by(|&a, &b| probs[a].total_cmp(&probs[b]));
        let sorted: Vec<f64> = order.iter().map(|&i| probs[i]).collect();
        let profile = ProbProfile::new(sorted)?;
        Ok((profile, order.into_iter().map(|i| i + 1).collect()))
    }

    pub fn n(&self) -> usize {
        self.probs.len()
    }

    /// Probability of the 1-based node id.
    pub fn p(&self, node: usize) -> f64 {
        self.probs[node - 1]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// The sub-profile of the m least likely nodes (m smallest entries).
    pub fn prefix(&self, m: usize) -> ProbProfile {
        assert!(m >= 1 && m <= self.n());
        ProbProfile {
            probs: self.probs[..m].to_vec(),
        }
    }
}

impl TryFrom<Vec<f64>> for ProbProfile {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        ProbProfile::new(probs)
    }
}

impl From<ProbProfile> for Vec<f64> {
    fn from(profile: ProbProfile) -> Vec<f64> {
        profile.probs
    }
}
