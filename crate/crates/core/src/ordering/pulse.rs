//! Bit-to-pulse mapping for the energy model.
//!
//! Under the pulse model a node signals with a unit-energy pulse or stays
//! silent (free). A Boolean value maps to pulse/silence in one of two ways;
//! sending the pulse on the less likely value minimizes expected energy,
//! giving per-transmission cost min(p, 1-p).

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseMeaning {
    /// Pulse transmitted when X = 1, silence when X = 0.
    SignalsOne,
    /// Pulse transmitted when X = 0, silence when X = 1.
    SignalsZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseMapping {
    pub meaning: PulseMeaning,
    pub expected_energy: f64,
}

/// Optimal mapping for a node with P(X = 1) = p: pulse on the ones when
/// p <= 1/2, on the zeros otherwise. At p = 1/2 both cost the same and the
/// ones mapping is returned.
pub fn pulse_mapping(p: f64) -> Result<PulseMapping> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::ProbabilityRange(p));
    }
    let meaning = if p <= 0.5 {
        PulseMeaning::SignalsOne
    } else {
        PulseMeaning::SignalsZero
    };
    Ok(PulseMapping {
        meaning,
        expected_energy: p.min(1.0 - p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlikely_ones_get_the_pulse() {
        let m = pulse_mapping(0.3).unwrap();
        assert_eq!(m.meaning, PulseMeaning::SignalsOne);
        assert!((m.expected_energy - 0.3).abs() < 1e-12);
    }

    #[test]
    fn likely_ones_stay_silent() {
        let m = pulse_mapping(0.9).unwrap();
        assert_eq!(m.meaning, PulseMeaning::SignalsZero);
        assert!((m.expected_energy - 0.1).abs() < 1e-12);
    }

    #[test]
    fn symmetric_point() {
        let m = pulse_mapping(0.5).unwrap();
        assert!((m.expected_energy - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(pulse_mapping(-0.2).is_err());
        assert!(pulse_mapping(1.2).is_err());
    }
}
