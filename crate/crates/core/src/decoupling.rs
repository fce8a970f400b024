// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! First-order (average Hamiltonian) analysis of Bang-Bang pulse groups on
//! one encoded pair.
//!
//! Cycling through a group `G` of Pauli pulses turns an error term `H` into
//! `(1/|G|) Σ_g g† H g`. For Pauli `H` every conjugation gives `±H`, so the
//! average is `H · (#commuting − #anticommuting)/|G|`.

use serde::{Deserialize, Serialize};

use crate::error::{QcaError, Result};
use crate::linalg::{Pauli, PauliString, C1};

/// Set of unit-coefficient Pauli strings closed under multiplication up to
/// phase and containing the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseGroup {
    elements: Vec<PauliString>,
}

impl PulseGroup {
    pub fn new(elements: Vec<PauliString>) -> Result<Self> {
        let n = match elements.first() {
            Some(p) => p.n_qubits(),
            None => return Err(QcaError::NotAGroup("empty element list".into())),
        };
        let mut canon: Vec<PauliString> = Vec::with_capacity(elements.len());
        for e in &elements {
            if e.n_qubits() != n {
                return Err(QcaError::LengthMismatch {
                    left: n,
                    right: e.n_qubits(),
                });
            }
            if (e.coefficient().norm() - 1.0).abs() > 1e-12 {
                return Err(QcaError::NotAGroup(format!("{e} does not have a unit coefficient")));
            }
            let u = e.unsigned();
            if !canon.contains(&u) {
                canon.push(u);
            }
        }
        if !canon.iter().any(|e| e.is_identity()) {
            return Err(QcaError::NotAGroup("identity element missing".into()));
        }
        for a in &canon {
            for b in &canon {
                let prod = a.mul(b)?.unsigned();
                if !canon.contains(&prod) {
                    return Err(QcaError::NotAGroup(format!(
                        "{} * {} = {} is not an element",
                        a.label(),
                        b.label(),
                        prod.label()
                    )));
                }
            }
        }
        Ok(PulseGroup { elements: canon })
    }

    /// Parses labels such as `["II", "XX", "YY", "ZZ"]`.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let elements = labels
            .iter()
            .map(|l| l.as_ref().parse())
            .collect::<Result<Vec<PauliString>>>()?;
        Self::new(elements)
    }

    pub fn trivial(n_qubits: usize) -> Self {
        PulseGroup {
            elements: vec![PauliString::identity(n_qubits)],
        }
    }

    pub fn elements(&self) -> &[PauliString] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.elements[0].n_qubits()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.label()).collect()
    }

    /// Averaging factor `(#commuting − #anticommuting)/|G|` for a Pauli.
    pub fn averaging_factor(&self, p: &PauliString) -> Result<f64> {
        let mut signed = 0i64;
        for g in &self.elements {
            signed += if g.commutes_with(p)? { 1 } else { -1 };
        }
        Ok(signed as f64 / self.order() as f64)
    }
}

/// Group generated by the union of two groups, with canonical `+1` phases.
pub fn compose_groups(g1: &PulseGroup, g2: &PulseGroup) -> Result<PulseGroup> {
    let mut elements: Vec<PauliString> = Vec::new();
    for a in &g1.elements {
        for b in &g2.elements {
            let p = a.mul(b)?.unsigned();
            if !elements.contains(&p) {
                elements.push(p);
            }
        }
    }
    // products of two groups of commuting-up-to-phase Paulis already close,
    // but close explicitly so the constructor check never has to fail
    loop {
        let mut added = false;
        let snapshot = elements.clone();
        for a in &snapshot {
            for b in &snapshot {
                let p = a.mul(b)?.unsigned();
                if !elements.contains(&p) {
                    elements.push(p);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    PulseGroup::new(elements)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorTerm {
    pub pauli: String,
    pub coefficient: f64,
}

impl ErrorTerm {
    pub fn new(pauli: &PauliString, coefficient: f64) -> Self {
        ErrorTerm {
            pauli: pauli.label(),
            coefficient,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragedTerm {
    pub pauli: String,
    pub original: f64,
    pub surviving: f64,
}

impl AveragedTerm {
    pub fn suppressed(&self) -> bool {
        self.surviving == 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageReport {
    pub terms: Vec<AveragedTerm>,
}

impl AverageReport {
    pub fn suppressed(&self) -> Vec<&str> {
        self.terms
            .iter()
            .filter(|t| t.suppressed())
            .map(|t| t.pauli.as_str())
            .collect()
    }

    pub fn surviving(&self) -> Vec<&str> {
        self.terms
            .iter()
            .filter(|t| !t.suppressed())
            .map(|t| t.pauli.as_str())
            .collect()
    }
}

pub fn average_hamiltonian(terms: &[ErrorTerm], group: &PulseGroup) -> Result<AverageReport> {
    let terms = terms
        .iter()
        .map(|t| {
            if !t.coefficient.is_finite() {
                return Err(QcaError::NonFinite("error term coefficient"));
            }
            let p: PauliString = t.pauli.parse()?;
            if p.coefficient() != C1 {
                return Err(QcaError::NonUnitCoefficient);
            }
            let factor = group.averaging_factor(&p)?;
            Ok(AveragedTerm {
                pauli: p.label(),
                original: t.coefficient,
                // factor is exactly 0 or ±1 for Pauli groups
                surviving: t.coefficient * factor,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AverageReport { terms })
}

/// Single-spin and mixed operators that take an encoded pair out of the code
/// space.
pub fn leakage_operators() -> Vec<PauliString> {
    ["XI", "IX", "YI", "IY", "XZ", "ZX", "YZ", "ZY"]
        .iter()
        .map(|s| s.parse().expect("static labels"))
        .collect()
}

/// The correlated `σ_r ⊗ σ_r` error terms.
pub fn logic_operators() -> Vec<PauliString> {
    [Pauli::X, Pauli::Y, Pauli::Z]
        .iter()
        .map(|&p| PauliString::new(vec![p, p]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuppressionEntry {
    pub pauli: String,
    pub suppressed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuppressionReport {
    pub leakage: Vec<SuppressionEntry>,
    pub logic: Vec<SuppressionEntry>,
}

impl SuppressionReport {
    pub fn all_leakage_suppressed(&self) -> bool {
        self.leakage.iter().all(|e| e.suppressed)
    }

    pub fn logic_surviving(&self) -> Vec<&str> {
        self.logic
            .iter()
            .filter(|e| !e.suppressed)
            .map(|e| e.pauli.as_str())
            .collect()
    }
}

/// Evaluates a two-qubit group on the fixed leakage and logic error sets.
pub fn suppression_report(group: &PulseGroup) -> Result<SuppressionReport> {
    if group.n_qubits() != 2 {
        return Err(QcaError::WrongQubitCount {
            expected: 2,
            found: group.n_qubits(),
        });
    }
    let entries = |ops: Vec<PauliString>| -> Result<Vec<SuppressionEntry>> {
        let terms: Vec<ErrorTerm> = ops.iter().map(|p| ErrorTerm::new(p, 1.0)).collect();
        Ok(average_hamiltonian(&terms, group)?
            .terms
            .into_iter()
            .map(|t| SuppressionEntry {
                suppressed: t.suppressed(),
                pauli: t.pauli,
            })
            .collect())
    };
    Ok(SuppressionReport {
        leakage: entries(leakage_operators())?,
        logic: entries(logic_operators())?,
    })
}
