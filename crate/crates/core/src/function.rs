//! Symmetric function specifications.

use serde::{Deserialize, Serialize};

use crate::measurement::MeasurementVector;
use crate::{Error, Result};

/// Which symmetric function of the n measurements is being computed.
///
/// Boolean kinds take measurements in {0, 1}; `Max` and `GeneralThreshold`
/// allow node i values in {0, ..., m_i}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionKind {
    /// 1 iff the number of ones is >= theta.
    Threshold { theta: usize },
    /// 1 iff the number of ones is exactly theta.
    Delta { theta: usize },
    /// 1 iff the number of ones lies in [a, b].
    Interval { a: usize, b: usize },
    /// 1 iff the number of ones is odd.
    Parity,
    /// The largest measurement; node i draws from {0, ..., m_i}.
    Max { alphabet: Vec<usize> },
    /// 1 iff the integer sum is >= theta; node i draws from {0, ..., m_i}.
    GeneralThreshold { theta: usize, alphabet: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionSpec {
    n: usize,
    #[serde(flatten)]
    kind: FunctionKind,
}

impl FunctionSpec {
    pub fn threshold(n: usize, theta: usize) -> Result<Self> {
        if theta < 1 || theta > n {
            return Err(Error::ThresholdRange { theta, max: n });
        }
        Ok(FunctionSpec {
            n,
            kind: FunctionKind::Threshold { theta },
        })
    }

    /// AND of n Boolean variables, i.e. threshold n.
    pub fn and(n: usize) -> Result<Self> {
        FunctionSpec::threshold(n, n)
    }

    /// OR of n Boolean variables, i.e. threshold 1.
    pub fn or(n: usize) -> Result<Self> {
        FunctionSpec::threshold(n, 1)
    }

    pub fn delta(n: usize, theta: usize) -> Result<Self> {
        if theta < 1 || theta > n {
            return Err(Error::ThresholdRange { theta, max: n });
        }
        Ok(FunctionSpec {
            n,
            kind: FunctionKind::Delta { theta },
        })
    }

    pub fn interval(n: usize, a: usize, b: usize) -> Result<Self> {
        if a < 1 || a > b || b > n {
            return Err(Error::IntervalRange { a, b, n });
        }
        Ok(FunctionSpec {
            n,
            kind: FunctionKind::Interval { a, b },
        })
    }

    pub fn parity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyProfile);
        }
        Ok(FunctionSpec {
            n,
            kind: FunctionKind::Parity,
        })
    }

    pub fn max(alphabet: Vec<usize>) -> Result<Self> {
        validate_alphabet(&alphabet)?;
        Ok(FunctionSpec {
            n: alphabet.len(),
            kind: FunctionKind::Max { alphabet },
        })
    }

    pub fn general_threshold(theta: usize, alphabet: Vec<usize>) -> Result<Self> {
        validate_alphabet(&alphabet)?;
        let total: usize = alphabet.iter().sum();
        if theta < 1 || theta > total {
            return Err(Error::ThresholdRange { theta, max: total });
        }
        Ok(FunctionSpec {
            n: alphabet.len(),
            kind: FunctionKind::GeneralThreshold { theta, alphabet },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    /// Alphabet bound m_i for the 1-based node id (1 for Boolean kinds).
    pub fn alphabet_size(&self, node: usize) -> usize {
        match &self.kind {
            FunctionKind::Max { alphabet } | FunctionKind::GeneralThreshold { alphabet, .. } => {
                alphabet[node - 1]
            }
            _ => 1,
        }
    }

    pub fn validate_vector(&self, v: &MeasurementVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::VectorLength {
                got: v.len(),
                n: self.n,
            });
        }
        for node in 1..=self.n {
            let bound = self.alphabet_size(node) as u32;
            let value = v.value(node);
            if value > bound {
                return Err(Error::VectorRange { node, value, bound });
            }
        }
        Ok(())
    }

    /// Function value on a single measurement vector. Boolean kinds return
    /// 0/1; `Max` returns the maximum measurement.
    pub fn evaluate(&self, v: &MeasurementVector) -> Result<u64> {
        self.validate_vector(v)?;
        let sum: u64 = v.values().iter().map(|&x| x as u64).sum();
        Ok(match &self.kind {
            FunctionKind::Threshold { theta } | FunctionKind::GeneralThreshold { theta, .. } => {
                (sum >= *theta as u64) as u64
            }
            FunctionKind::Delta { theta } => (sum == *theta as u64) as u64,
            FunctionKind::Interval { a, b } => (sum >= *a as u64 && sum <= *b as u64) as u64,
            FunctionKind::Parity => sum % 2,
            FunctionKind::Max { .. } => *v.values().iter().max().unwrap() as u64,
        })
    }
}

fn validate_alphabet(alphabet: &[usize]) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::EmptyProfile);
    }
    for &m in alphabet {
        if m < 1 {
            return Err(Error::AlphabetRange(m));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(values: &[u32]) -> MeasurementVector {
        MeasurementVector::new(values.to_vec())
    }

    #[test]
    fn constructor_bounds() {
        assert!(FunctionSpec::threshold(3, 0).is_err());
        assert!(FunctionSpec::threshold(3, 4).is_err());
        assert!(FunctionSpec::interval(4, 0, 2).is_err());
        assert!(FunctionSpec::interval(4, 3, 2).is_err());
        assert!(FunctionSpec::interval(4, 1, 5).is_err());
        assert!(FunctionSpec::general_threshold(5, vec![2, 2]).is_err());
        assert!(FunctionSpec::general_threshold(4, vec![2, 2]).is_ok());
        assert!(FunctionSpec::max(vec![1, 0]).is_err());
    }

    #[test]
    fn evaluation() {
        let t = FunctionSpec::threshold(3, 2).unwrap();
        assert_eq!(t.evaluate(&mv(&[1, 1, 0])).unwrap(), 1);
        assert_eq!(t.evaluate(&mv(&[1, 0, 0])).unwrap(), 0);

        let d = FunctionSpec::delta(3, 1).unwrap();
        assert_eq!(d.evaluate(&mv(&[0, 1, 0])).unwrap(), 1);
        assert_eq!(d.evaluate(&mv(&[1, 1, 0])).unwrap(), 0);

        let i = FunctionSpec::interval(4, 1, 2).unwrap();
        assert_eq!(i.evaluate(&mv(&[0, 0, 0, 0])).unwrap(), 0);
        assert_eq!(i.evaluate(&mv(&[1, 1, 0, 0])).unwrap(), 1);
        assert_eq!(i.evaluate(&mv(&[1, 1, 1, 0])).unwrap(), 0);

        let p = FunctionSpec::parity(3).unwrap();
        assert_eq!(p.evaluate(&mv(&[1, 1, 1])).unwrap(), 1);

        let m = FunctionSpec::max(vec![2, 2]).unwrap();
        assert_eq!(m.evaluate(&mv(&[1, 2])).unwrap(), 2);

        let g = FunctionSpec::general_threshold(3, vec![2, 2]).unwrap();
        assert_eq!(g.evaluate(&mv(&[1, 2])).unwrap(), 1);
        assert_eq!(g.evaluate(&mv(&[1, 1])).unwrap(), 0);
    }

    #[test]
    fn vector_validation() {
        let t = FunctionSpec::threshold(2, 1).unwrap();
        assert!(t.evaluate(&mv(&[0, 2])).is_err());
        assert!(t.evaluate(&mv(&[0])).is_err());
    }

    #[test]
    fn json_shape_is_stable() {
        let spec = FunctionSpec::interval(4, 1, 2).unwrap();
        let json = serde_json::to_value(&spec).unwrap();
        assert_eq!(json["kind"], "interval");
        assert_eq!(json["n"], 4);
        assert_eq!(json["a"], 1);
        assert_eq!(json["b"], 2);
    }
}
