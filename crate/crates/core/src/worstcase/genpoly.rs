//! Generating polynomials counting measurement vectors by integer sum.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::{Error, Result};

/// The exact coefficients c_0..c_D of prod_i (1 + Y + ... + Y^{m_i}).
/// Coefficient j counts the vectors (X_1, ..., X_n), X_i in {0, ..., m_i},
/// whose sum is j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPoly {
    coeffs: Vec<BigUint>,
}

impl GenPoly {
    /// Builds the product polynomial for the given per-node alphabet bounds.
    pub fn product(alphabet: &[usize]) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::EmptyProfile);
        }
        let mut coeffs = vec![BigUint::from(1u32)];
        for &m in alphabet {
            if m < 1 {
                return Err(Error::AlphabetRange(m));
            }
            // Multiply by (1 + Y + ... + Y^m).
            let mut next = vec![BigUint::zero(); coeffs.len() + m];
            for (j, c) in coeffs.iter().enumerate() {
                for shift in 0..=m {
                    next[j + shift] += c;
                }
            }
            coeffs = next;
        }
        Ok(GenPoly { coeffs })
    }

    /// Coefficient of Y^j, zero outside 0..=degree.
    pub fn coeff(&self, j: i64) -> BigUint {
        if j < 0 || j as usize >= self.coeffs.len() {
            BigUint::zero()
        } else {
            self.coeffs[j as usize].clone()
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }
}

/// Size of the canonical fooling set for the general integer threshold:
/// the number of vectors summing to theta or theta - 1, i.e.
/// [Y^theta] + [Y^{theta-1}] of the product polynomial. Its log2 is the
/// per-instance complexity.
pub fn gen_threshold_fooling_count(theta: usize, alphabet: &[usize]) -> Result<BigUint> {
    let poly = GenPoly::product(alphabet)?;
    if theta < 1 || theta > poly.degree() {
        return Err(Error::ThresholdRange {
            theta,
            max: poly.degree(),
        });
    }
    Ok(poly.coeff(theta as i64) + poly.coeff(theta as i64 - 1))
}
