// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::matrix::{CMatrix, C0, C1, CI};
use crate::error::{QcaError, Result};

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// `self · other = phase · product`, with phase in {1, i, -1, -i}.
    pub fn times(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (C1, p),
            (a, b) if a == b => (C1, I),
            (X, Y) => (CI, Z),
            (Y, Z) => (CI, X),
            (Z, X) => (CI, Y),
            (Y, X) => (-CI, Z),
            (Z, Y) => (-CI, X),
            (X, Z) => (-CI, Y),
            _ => unreachable!(),
        }
    }

    pub fn commutes_with(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    pub fn matrix(self) -> CMatrix {
        let entries = match self {
            Pauli::I => [C1, C0, C0, C1],
            Pauli::X => [C0, C1, C1, C0],
            Pauli::Y => [C0, -CI, CI, C0],
            Pauli::Z => [C1, C0, C0, -C1],
        };
        CMatrix::from_fn(2, |r, c| entries[2 * r + c])
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis with a complex coefficient.
/// Factor 0 acts on qubit 0 (most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    factors: Vec<Pauli>,
    coefficient: Complex64,
}

impl PauliString {
    pub fn new(factors: Vec<Pauli>) -> Self {
        PauliString {
            factors,
            coefficient: C1,
        }
    }

    pub fn with_coefficient(factors: Vec<Pauli>, coefficient: Complex64) -> Self {
        PauliString { factors, coefficient }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::new(vec![Pauli::I; n_qubits])
    }

    pub fn factors(&self) -> &[Pauli] {
        &self.factors
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn n_qubits(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|&p| p == Pauli::I)
    }

    /// Same factors with coefficient 1.
    pub fn unsigned(&self) -> PauliString {
        PauliString::new(self.factors.clone())
    }

    /// All `4^n` unit-coefficient strings on `n` qubits, in lexicographic
    /// `I < X < Y < Z` order.
    pub fn all(n_qubits: usize) -> Vec<PauliString> {
        let mut out = vec![Vec::with_capacity(n_qubits)];
        for _ in 0..n_qubits {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    Pauli::ALL.into_iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.push(p);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(PauliString::new).collect()
    }

    /// Factor-wise product with accumulated phase.
    pub fn mul(&self, other: &PauliString) -> Result<PauliString> {
        if self.n_qubits() != other.n_qubits() {
            return Err(QcaError::LengthMismatch {
                left: self.n_qubits(),
                right: other.n_qubits(),
            });
        }
        let mut coefficient = self.coefficient * other.coefficient;
        let factors = self
            .factors
            .iter()
            .zip(&other.factors)
            .map(|(&a, &b)| {
                let (phase, p) = a.times(b);
                coefficient *= phase;
                p
            })
            .collect();
        Ok(PauliString { factors, coefficient })
    }

    /// True when the strings commute (an even number of anticommuting factors).
    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        if self.n_qubits() != other.n_qubits() {
            return Err(QcaError::LengthMismatch {
                left: self.n_qubits(),
                right: other.n_qubits(),
            });
        }
        let anti = self
            .factors
            .iter()
            .zip(&other.factors)
            .filter(|(a, b)| !a.commutes_with(**b))
            .count();
        Ok(anti % 2 == 0)
    }

    /// Dense matrix including the coefficient.
    pub fn matrix(&self) -> CMatrix {
        let m = self
            .factors
            .iter()
            .fold(CMatrix::identity(1), |acc, p| acc.kron(&p.matrix()));
        m.scale(self.coefficient)
    }

    /// Label such as `XZ`, without the coefficient.
    pub fn label(&self) -> String {
        self.factors.iter().map(|p| p.symbol()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficient;
        if c != C1 {
            if c == -C1 {
                write!(f, "-")?;
            } else if c == CI {
                write!(f, "i")?;
            } else if c == -CI {
                write!(f, "-i")?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
        }
        write!(f, "{}", self.label())
    }
}

impl FromStr for PauliString {
    type Err = QcaError;

    /// Parses labels like `XZ`, `-IY`, `iZZ`, `-iXX`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (coefficient, body) = if let Some(rest) = s.strip_prefix("-i") {
            (-CI, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (-C1, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (C1, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (CI, rest)
        } else {
            (C1, s)
        };
        if body.is_empty() {
            return Err(QcaError::InvalidParameter(format!("empty Pauli string {s:?}")));
        }
        let factors = body
            .chars()
            .map(|ch| match ch.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(QcaError::InvalidParameter(format!(
                    "invalid Pauli symbol {other:?} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString { factors, coefficient })
    }
}
