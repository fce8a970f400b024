// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the simulator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QcaError {
    #[error("operator is not Hermitian: max |H - H^dagger| = {deviation:.3e}")]
    NonHermitianInput { deviation: f64 },

    #[error("operator is not unitary: max |U^dagger U - I| = {deviation:.3e}")]
    NonUnitaryInput { deviation: f64 },

    #[error("merged spin operator is not unitary: max |E^dagger E - I| = {deviation:.3e}")]
    NonUnitaryMerge { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Pauli string length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("state norm {norm} is too far from 1 to renormalize")]
    NotNormalized { norm: f64 },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("operand {index} out of range for a register of {size} logic qubits")]
    OperandOutOfRange { index: usize, size: usize },

    #[error("CPF operands must be distinct (both are {0})")]
    RepeatedOperand(usize),

    #[error("output leaked out of the code space: weight {weight:.3e}")]
    LeakageDetected { weight: f64 },

    #[error("register of {requested} {unit} exceeds the limit of {limit}")]
    RegisterTooLarge {
        requested: usize,
        limit: usize,
        unit: &'static str,
    },

    #[error("register must hold at least one logic qubit")]
    EmptyRegister,

    #[error("state of {0} qubits cannot be split into encoded pairs")]
    DimensionNotPairEven(usize),

    #[error("expected a {expected}-qubit Pauli string, found {found} qubits")]
    WrongQubitCount { expected: usize, found: usize },

    #[error("Pauli string must carry a unit coefficient")]
    NonUnitCoefficient,

    #[error("pulse set is not a group: {0}")]
    NotAGroup(String),

    #[error("sampling range [{lo}, {hi}) is empty")]
    EmptyRange { lo: f64, hi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    CircuitSyntax { line: usize, message: String },
}

impl QcaError {
    /// True for violations of a numerical contract (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            QcaError::NonHermitianInput { .. }
                | QcaError::NonUnitaryInput { .. }
                | QcaError::NonUnitaryMerge { .. }
                | QcaError::LeakageDetected { .. }
                | QcaError::NonFinite(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, QcaError>;
