//! Measurement vectors and broadcast transcripts.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One measurement per node; node i's value lives in {0, ..., m_i}
/// (m_i = 1 for Boolean functions). Bounds are checked against a
/// `FunctionSpec`, not stored here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MeasurementVector {
    values: Vec<u32>,
}

impl MeasurementVector {
    pub fn new(values: Vec<u32>) -> Self {
        MeasurementVector { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value of the 1-based node id.
    pub fn value(&self, node: usize) -> u32 {
        self.values[node - 1]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Copy with the given node's value replaced (the row-swap move of the
    /// fooling-set argument).
    #[must_use]
    pub fn with_value(&self, node: usize, value: u32) -> Self {
        let mut values = self.values.clone();
        values[node - 1] = value;
        MeasurementVector { values }
    }

    pub fn sum(&self) -> u64 {
        self.values.iter().map(|&x| x as u64).sum()
    }
}

/// One step of a broadcast transcript: the transmitting node and the symbol
/// (bit or pulse) it sent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub node: usize,
    pub symbol: u8,
}

/// An ordered record of who transmitted what for a single instance. Node ids
/// are distinct and the length never exceeds n.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transcript {
    entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn new(n: usize, entries: Vec<TranscriptEntry>) -> Result<Self> {
        if entries.len() > n {
            return Err(Error::VectorLength {
                got: entries.len(),
                n,
            });
        }
        for (i, e) in entries.iter().enumerate() {
            if e.node < 1 || e.node > n {
                return Err(Error::NodeRange(e.node, n));
            }
            if entries[..i].iter().any(|prev| prev.node == e.node) {
                return Err(Error::DuplicateTranscriptNode(e.node));
            }
        }
        Ok(Transcript { entries })
    }

    pub fn entries(&self) -> &[TranscriptEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
