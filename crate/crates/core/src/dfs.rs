// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Decoherence-free encoding `|0_L⟩ = |01⟩`, `|1_L⟩ = |10⟩` on spin pairs,
//! the collective dephasing channel, and Pauli error classification.
//!
//! Physical ordering is pair-major: `(i₁, i₁′, i₂, i₂′, …)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QcaError, Result};
use crate::linalg::{CMatrix, HermitianOperator, PauliString, StateVector, C0, C1};

/// Largest register: 6 logic qubits, 12 spins.
pub const MAX_LOGIC_QUBITS: usize = 6;

/// Leakage below this is treated as rounding noise by [`decode`].
pub const LEAKAGE_RENORMALIZE_TOL: f64 = 1e-9;

/// Physical two-spin index of a logical bit: `0 → |01⟩ = 1`, `1 → |10⟩ = 2`.
pub fn pair_index(bit: bool) -> usize {
    if bit {
        0b10
    } else {
        0b01
    }
}

/// Maps a logical basis index over `n_logic` qubits to its physical index.
pub fn physical_index(logical: usize, n_logic: usize) -> usize {
    (0..n_logic).fold(0, |acc, k| {
        let bit = logical >> (n_logic - 1 - k) & 1 == 1;
        (acc << 2) | pair_index(bit)
    })
}

/// `n` logic qubits stored as `2n` physical spins.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedRegister {
    n_logic: usize,
    state: StateVector,
}

impl EncodedRegister {
    /// Wraps a physical state, checking the register size.
    pub fn from_state(state: StateVector) -> Result<Self> {
        let n_logic = logic_qubits(&state)?;
        Ok(EncodedRegister { n_logic, state })
    }

    /// Encodes logical amplitudes (length `2^n`).
    pub fn from_logical(amps: &[Complex64]) -> Result<Self> {
        let logical = StateVector::new(amps.to_vec())?;
        let n_logic = logical.n_qubits();
        check_logic_size(n_logic)?;
        let mut phys = vec![C0; 1usize << (2 * n_logic)];
        for (idx, a) in logical.amplitudes().iter().enumerate() {
            phys[physical_index(idx, n_logic)] = *a;
        }
        Ok(EncodedRegister {
            n_logic,
            state: StateVector::new(phys)?,
        })
    }

    pub fn n_logic(&self) -> usize {
        self.n_logic
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn into_state(self) -> StateVector {
        self.state
    }

    pub fn leakage_weight(&self) -> f64 {
        decode(&self.state).map(|d| d.leakage_weight).unwrap_or(1.0)
    }
}

fn check_logic_size(n_logic: usize) -> Result<()> {
    if n_logic == 0 {
        return Err(QcaError::EmptyRegister);
    }
    if n_logic > MAX_LOGIC_QUBITS {
        return Err(QcaError::RegisterTooLarge {
            requested: n_logic,
            limit: MAX_LOGIC_QUBITS,
            unit: "logic qubits",
        });
    }
    Ok(())
}

fn logic_qubits(state: &StateVector) -> Result<usize> {
    let n = state.n_qubits();
    if !n.is_multiple_of(2) || n == 0 {
        return Err(QcaError::DimensionNotPairEven(n));
    }
    check_logic_size(n / 2)?;
    Ok(n / 2)
}

/// Product state with logic bit `k` encoded on pair `k`.
pub fn encode_basis(bits: &[bool]) -> Result<EncodedRegister> {
    check_logic_size(bits.len())?;
    let logical = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
    let n = bits.len();
    let state = StateVector::basis(2 * n, physical_index(logical, n))?;
    Ok(EncodedRegister { n_logic: n, state })
}

/// All-`|0_L⟩` register: top line all up, bottom line all down.
pub fn init_register(n: usize) -> Result<EncodedRegister> {
    encode_basis(&vec![false; n])
}

/// Code-space projection of a physical state.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    /// Amplitudes on the logical basis, length `2^n`.
    pub logical_amps: Vec<Complex64>,
    /// `1 − Σ|logical_amps|²` before any renormalization.
    pub leakage_weight: f64,
    /// False when leakage exceeded [`LEAKAGE_RENORMALIZE_TOL`] and the
    /// amplitudes are returned raw.
    pub renormalized: bool,
}

pub fn decode(state: &StateVector) -> Result<Decoded> {
    let n_logic = logic_qubits(state)?;
    let amps = state.amplitudes();
    let mut logical: Vec<Complex64> = (0..1usize << n_logic)
        .map(|l| amps[physical_index(l, n_logic)])
        .collect();
    let kept: f64 = logical.iter().map(|z| z.norm_sqr()).sum();
    let leakage_weight = (1.0 - kept).clamp(0.0, 1.0);
    let renormalized = leakage_weight <= LEAKAGE_RENORMALIZE_TOL && kept > 0.0;
    if renormalized {
        let norm = kept.sqrt();
        for z in &mut logical {
            *z /= norm;
        }
    }
    Ok(Decoded {
        logical_amps: logical,
        leakage_weight,
        renormalized,
    })
}

/// Collective dephasing generator `Σ_k σ_z^(k)`, stored by its integer
/// diagonal (a dense 4096×4096 operator would be wasteful at 12 spins).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectiveZ {
    n_physical: usize,
    eigenvalues: Vec<i32>,
}

impl CollectiveZ {
    pub fn n_physical(&self) -> usize {
        self.n_physical
    }

    /// Diagonal entries: (#up − #down) for each basis index.
    pub fn eigenvalues(&self) -> &[i32] {
        &self.eigenvalues
    }

    pub fn to_operator(&self) -> HermitianOperator {
        let diag: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&e| Complex64::new(e as f64, 0.0))
            .collect();
        HermitianOperator::new(CMatrix::from_diagonal(&diag)).expect("real diagonal")
    }

    pub fn apply(&self, state: &StateVector) -> Result<Vec<Complex64>> {
        if state.dim() != self.eigenvalues.len() {
            return Err(QcaError::DimensionMismatch {
                expected: self.eigenvalues.len(),
                found: state.dim(),
            });
        }
        Ok(state
            .amplitudes()
            .iter()
            .zip(&self.eigenvalues)
            .map(|(a, &e)| a * e as f64)
            .collect())
    }
}

pub fn collective_z(n_physical: usize) -> Result<CollectiveZ> {
    if n_physical > 2 * MAX_LOGIC_QUBITS {
        return Err(QcaError::RegisterTooLarge {
            requested: n_physical,
            limit: 2 * MAX_LOGIC_QUBITS,
            unit: "physical qubits",
        });
    }
    let n = n_physical as i32;
    let eigenvalues = (0..1usize << n_physical)
        .map(|idx| n - 2 * idx.count_ones() as i32)
        .collect();
    Ok(CollectiveZ {
        n_physical,
        eigenvalues,
    })
}

/// `exp(−iφ Z_total)·state`. Code-space amplitudes sit on the zero eigenvalue
/// and are left bit-for-bit unchanged.
pub fn apply_collective_dephasing(state: &StateVector, phi: f64) -> Result<StateVector> {
    let n = state.n_qubits();
    if !n.is_multiple_of(2) {
        return Err(QcaError::DimensionNotPairEven(n));
    }
    if !phi.is_finite() {
        return Err(QcaError::NonFinite("dephasing angle"));
    }
    let z = collective_z(n)?;
    let amps = state
        .amplitudes()
        .iter()
        .zip(z.eigenvalues())
        .map(|(a, &e)| {
            if e == 0 {
                *a
            } else {
                a * Complex64::from_polar(1.0, -phi * e as f64)
            }
        })
        .collect();
    StateVector::new(amps)
}

/// How a two-qubit Pauli acts on one encoded pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ErrorClass {
    /// Preserves the code space and acts as a multiple of the identity on it.
    IdentityOnCode,
    /// Preserves the code space but acts nontrivially on it.
    LogicError,
    /// Maps some code state out of the code space.
    Leakage,
}

impl std::fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ErrorClass::IdentityOnCode => "IdentityOnCode",
            ErrorClass::LogicError => "LogicError",
            ErrorClass::Leakage => "Leakage",
        };
        f.write_str(s)
    }
}

/// Classifies a unit-coefficient two-qubit Pauli against span{|01⟩, |10⟩}.
///
/// A Pauli string is a signed permutation of basis states, so it suffices to
/// track where each code basis state goes.
pub fn classify_pauli(p: &PauliString) -> Result<ErrorClass> {
    if p.n_qubits() != 2 {
        return Err(QcaError::WrongQubitCount {
            expected: 2,
            found: p.n_qubits(),
        });
    }
    if (p.coefficient() - C1).norm() > 1e-12 {
        return Err(QcaError::NonUnitCoefficient);
    }
    let m = p.matrix();
    let code = [pair_index(false), pair_index(true)];
    // image of each code state: (destination index, phase)
    let image = |src: usize| -> (usize, Complex64) {
        (0..4)
            .find_map(|r| (m[(r, src)] != C0).then(|| (r, m[(r, src)])))
            .expect("Pauli matrices have one nonzero per column")
    };
    let (d0, ph0) = image(code[0]);
    let (d1, ph1) = image(code[1]);
    if !code.contains(&d0) || !code.contains(&d1) {
        return Ok(ErrorClass::Leakage);
    }
    if d0 == code[0] && d1 == code[1] && (ph0 - ph1).norm() < 1e-12 {
        Ok(ErrorClass::IdentityOnCode)
    } else {
        Ok(ErrorClass::LogicError)
    }
}
