// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra for small tensor-product Hilbert spaces.
//!
//! Ordering convention used throughout the crate: in `A ⊗ B` the left factor
//! is the more significant one, so qubit 0 is the highest bit of a basis
//! index. `|01⟩` is index 1, `|10⟩` is index 2.

mod matrix;
mod pauli;
mod state;

use std::fmt;
use std::str::FromStr;

use nalgebra::linalg::{SymmetricEigen, SVD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use matrix::{CMatrix, HermitianOperator, UnitaryOperator, HERMITIAN_TOL, UNITARY_TOL};
pub use pauli::{Pauli, PauliString};
pub use state::{state_fidelity, StateVector, RENORMALIZE_TOL};

#[cfg(test)]
pub(crate) use matrix::CI;
pub(crate) use matrix::{C0, C1};

use crate::error::{QcaError, Result};

/// Largest register handled by the dense simulator (dimension 4096).
pub const MAX_QUBITS: usize = 12;

/// Rotation axis on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn pauli(self) -> Pauli {
        match self {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        };
        f.write_str(s)
    }
}

impl FromStr for Axis {
    type Err = QcaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(QcaError::InvalidParameter(format!("unknown axis {other:?}"))),
        }
    }
}

/// Kronecker product, left operand most significant.
pub trait Tensor {
    fn tensor(&self, other: &Self) -> Self;
}

impl Tensor for CMatrix {
    fn tensor(&self, other: &Self) -> Self {
        self.kron(other)
    }
}

impl Tensor for UnitaryOperator {
    fn tensor(&self, other: &Self) -> Self {
        UnitaryOperator::tensor(self, other)
    }
}

impl Tensor for StateVector {
    fn tensor(&self, other: &Self) -> Self {
        StateVector::tensor(self, other)
    }
}

pub fn tensor<T: Tensor>(a: &T, b: &T) -> T {
    a.tensor(b)
}

/// `R_k(θ) = exp(-iθσ_k/2) = cos(θ/2) I - i sin(θ/2) σ_k`.
pub fn rotation(axis: Axis, theta: f64) -> UnitaryOperator {
    let (s, c) = (theta / 2.0).sin_cos();
    let sigma = axis.pauli().matrix();
    let m = &CMatrix::identity(2).scale(Complex64::new(c, 0.0)) - &sigma.scale(Complex64::new(0.0, s));
    UnitaryOperator::new(m).expect("closed-form rotation is unitary")
}

/// `exp(-iHt)` through the eigendecomposition of `H`.
pub fn expm_hermitian(h: &HermitianOperator, t: f64) -> Result<UnitaryOperator> {
    if !t.is_finite() {
        return Err(QcaError::NonFinite("evolution time"));
    }
    let dim = h.dim();
    let eig = SymmetricEigen::new(h.matrix().to_nalgebra());
    let phases: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&e| Complex64::from_polar(1.0, -e * t))
        .collect();
    let v = &eig.eigenvectors;
    let m = CMatrix::from_fn(dim, |r, c| {
        (0..dim).map(|k| v[(r, k)] * phases[k] * v[(c, k)].conj()).sum()
    });
    UnitaryOperator::new(m)
}

/// `|tr(U†V)| / d`: 1 exactly when `V = e^{iα} U`.
pub fn gate_similarity(u: &UnitaryOperator, v: &UnitaryOperator) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(QcaError::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(overlap_trace(u.matrix(), v.matrix()).norm() / u.dim() as f64)
}

/// `tr(A†B)` without forming the product.
pub(crate) fn overlap_trace(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.entries().iter().zip(b.entries()).map(|(x, y)| x.conj() * y).sum()
}

/// Phase `α` such that `V ≈ e^{iα} U`, taken from `arg tr(U†V)`.
pub fn relative_phase(u: &UnitaryOperator, v: &UnitaryOperator) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(QcaError::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(overlap_trace(u.matrix(), v.matrix()).arg())
}

/// Nearest unitary in Frobenius norm (unitary factor of the polar
/// decomposition), `W = U Vᴴ` for `M = U Σ Vᴴ`.
pub fn nearest_unitary(m: &CMatrix) -> Result<UnitaryOperator> {
    if !m.is_finite() {
        return Err(QcaError::NonFinite("matrix to project"));
    }
    let svd = SVD::new(m.to_nalgebra(), true, true);
    let (u, v_t) = match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => return Err(QcaError::NonFinite("singular value decomposition")),
    };
    if svd.singular_values.iter().any(|&s| s <= f64::EPSILON) {
        return Err(QcaError::InvalidParameter(
            "cannot project a singular matrix onto the unitary group".into(),
        ));
    }
    UnitaryOperator::new(CMatrix::from_nalgebra(&(u * v_t)))
}
