// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::matrix::{CMatrix, UnitaryOperator, C0, C1};
use crate::error::{QcaError, Result};

/// States whose norm deviates from one by less than this are silently
/// renormalized; larger deviations are rejected.
pub const RENORMALIZE_TOL: f64 = 1e-6;

/// Pure state of `n` qubits. Qubit 0 is the most significant bit of the
/// amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Validates and normalizes an amplitude list.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_dim(amps.len())?;
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QcaError::NonFinite("state amplitudes"));
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() >= RENORMALIZE_TOL {
            return Err(QcaError::NotNormalized { norm });
        }
        let amps = if norm == 1.0 {
            amps
        } else {
            amps.into_iter().map(|z| z / norm).collect()
        };
        Ok(StateVector { n_qubits, amps })
    }

    /// Normalizes an arbitrary nonzero amplitude list.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(QcaError::NotNormalized { norm });
        }
        Self::new(amps.into_iter().map(|z| z / norm).collect())
    }

    /// Computational basis state `|index⟩` over `n_qubits`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > super::MAX_QUBITS {
            return Err(QcaError::RegisterTooLarge {
                requested: n_qubits,
                limit: super::MAX_QUBITS,
                unit: "qubits",
            });
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(QcaError::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amps = vec![C0; dim];
        amps[index] = C1;
        Ok(StateVector { n_qubits, amps })
    }

    /// Basis state from a bit string such as `"0110"` (leftmost = qubit 0).
    pub fn from_bitstring(bits: &str) -> Result<Self> {
        let mut index = 0usize;
        for ch in bits.chars() {
            let bit = match ch {
                '0' => 0,
                '1' => 1,
                other => {
                    return Err(QcaError::InvalidParameter(format!(
                        "invalid character {other:?} in bit string"
                    )))
                }
            };
            index = (index << 1) | bit;
        }
        if bits.is_empty() {
            return Err(QcaError::InvalidParameter("empty bit string".into()));
        }
        Self::basis(bits.len(), index)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(QcaError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        }
    }

    pub fn with_global_phase(&self, phase: f64) -> StateVector {
        let k = Complex64::from_polar(1.0, phase);
        StateVector {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|z| z * k).collect(),
        }
    }

    /// Applies a full-register unitary.
    pub fn apply(&self, op: &UnitaryOperator) -> Result<StateVector> {
        if op.dim() != self.dim() {
            return Err(QcaError::DimensionMismatch {
                expected: self.dim(),
                found: op.dim(),
            });
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amps: op.matrix().mul_vec(&self.amps),
        })
    }

    /// Applies a `2^k`-dimensional operator to the qubits listed in
    /// `targets`; `targets[0]` is the most significant factor of `op`.
    ///
    /// The operator is not required to be unitary; callers that need a
    /// normalized result pass unitaries.
    pub fn apply_local(&self, op: &CMatrix, targets: &[usize]) -> Result<StateVector> {
        let k = targets.len();
        if op.dim() != 1usize << k {
            return Err(QcaError::DimensionMismatch {
                expected: 1usize << k,
                found: op.dim(),
            });
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.n_qubits {
                return Err(QcaError::OperandOutOfRange {
                    index: t,
                    size: self.n_qubits,
                });
            }
            if targets[..i].contains(&t) {
                return Err(QcaError::RepeatedOperand(t));
            }
        }
        let shifts: Vec<usize> = targets.iter().map(|&t| self.n_qubits - 1 - t).collect();
        let mask: usize = shifts.iter().map(|s| 1usize << s).sum();
        let sub = 1usize << k;
        // offsets[j] = full-index bits for local index j
        let offsets: Vec<usize> = (0..sub)
            .map(|j| {
                (0..k)
                    .filter(|&b| j >> (k - 1 - b) & 1 == 1)
                    .map(|b| 1usize << shifts[b])
                    .sum()
            })
            .collect();

        let mut out = self.amps.clone();
        let mut local = vec![C0; sub];
        for base in 0..self.dim() {
            if base & mask != 0 {
                continue;
            }
            for (j, off) in offsets.iter().enumerate() {
                local[j] = self.amps[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                out[base | off] = (0..sub).map(|c| op[(r, c)] * local[c]).sum();
            }
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amps: out,
        })
    }
}

pub(crate) fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(QcaError::NotPowerOfTwo(dim));
    }
    let n = dim.trailing_zeros() as usize;
    if n > super::MAX_QUBITS {
        return Err(QcaError::RegisterTooLarge {
            requested: n,
            limit: super::MAX_QUBITS,
            unit: "qubits",
        });
    }
    Ok(n)
}

/// `|⟨psi|phi⟩|²`, clamped to `[0, 1]`.
pub fn state_fidelity(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    Ok(psi.inner(phi)?.norm_sqr().clamp(0.0, 1.0))
}
