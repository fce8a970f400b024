// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! One QCA gate cycle: two electrons enter the four-dot cell in the polarized
//! charge state `|−⟩` (sites A, C), tunnel coherently between `|−⟩` and
//! `|+⟩` (sites B, D) while charge-conditioned spin rotations are applied,
//! and are then returned to their dots.
//!
//! The charge qubit uses basis order `(|+⟩, |−⟩)`. Full-space operators are
//! ordered `charge ⊗ spin0 ⊗ spin1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QcaError, Result};
use crate::linalg::{expm_hermitian, rotation, Axis, CMatrix, HermitianOperator, StateVector, UnitaryOperator, C0};

/// Tolerance for the unitarity check on the merged spin operator.
pub const MERGE_TOL: f64 = 1e-9;

/// Parameters of the cell Hamiltonian and the tunneling window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QcaParams {
    omega0: f64,
    gamma: f64,
    duration: f64,
}

impl QcaParams {
    pub fn new(omega0: f64, gamma: f64, duration: f64) -> Result<Self> {
        if !(omega0.is_finite() && gamma.is_finite() && duration.is_finite()) {
            return Err(QcaError::NonFinite("QCA parameters"));
        }
        if gamma <= 0.0 {
            return Err(QcaError::InvalidParameter(format!(
                "tunneling rate must be positive, got {gamma}"
            )));
        }
        if duration < 0.0 {
            return Err(QcaError::InvalidParameter(format!(
                "duration must be non-negative, got {duration}"
            )));
        }
        Ok(QcaParams {
            omega0,
            gamma,
            duration,
        })
    }

    /// Symmetric cell (`ω₀ = 0`) stopped at `t = π/(2γ)`.
    pub fn symmetric_quarter(gamma: f64) -> Result<Self> {
        Self::new(0.0, gamma, PI / (2.0 * gamma))
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// Accumulated tunneling angle `γ·t`.
    pub fn charge_angle(&self) -> f64 {
        self.gamma * self.duration
    }

    pub fn with_duration(&self, duration: f64) -> Result<Self> {
        Self::new(self.omega0, self.gamma, duration)
    }
}

/// Polarized charge configurations of the cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChargeBasis {
    /// Electrons on sites B and D.
    Plus,
    /// Electrons on sites A and C; every cycle starts here.
    Minus,
}

impl ChargeBasis {
    pub fn index(self) -> usize {
        match self {
            ChargeBasis::Plus => 0,
            ChargeBasis::Minus => 1,
        }
    }
}

/// Spin rotation applied to one of the two electrons in the cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseSpec {
    /// 0: electron from dot i (site A or B); 1: electron from dot j (site C or D).
    pub target: usize,
    pub axis: Axis,
    pub angle: f64,
}

impl PulseSpec {
    pub fn new(target: usize, axis: Axis, angle: f64) -> Result<Self> {
        if target > 1 {
            return Err(QcaError::InvalidParameter(format!(
                "pulse target must be 0 or 1, got {target}"
            )));
        }
        if !angle.is_finite() {
            return Err(QcaError::NonFinite("pulse angle"));
        }
        Ok(PulseSpec { target, axis, angle })
    }

    /// The rotation embedded in the two-spin space.
    pub fn two_spin_operator(&self) -> UnitaryOperator {
        let r = rotation(self.axis, self.angle);
        let id = UnitaryOperator::identity(2);
        if self.target == 0 {
            r.tensor(&id)
        } else {
            id.tensor(&r)
        }
    }
}

/// Full program for one cell operation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateCycle {
    pub params: QcaParams,
    /// Rotations applied while the charge is in `|−⟩` (forming `U_AC`).
    pub pulses_minus: Vec<PulseSpec>,
    /// Rotations applied while the charge is in `|+⟩` (forming `U_BD`).
    pub pulses_plus: Vec<PulseSpec>,
}

impl GateCycle {
    pub fn new(params: QcaParams, pulses_minus: Vec<PulseSpec>, pulses_plus: Vec<PulseSpec>) -> Result<Self> {
        for p in pulses_minus.iter().chain(&pulses_plus) {
            PulseSpec::new(p.target, p.axis, p.angle)?;
        }
        Ok(GateCycle {
            params,
            pulses_minus,
            pulses_plus,
        })
    }

    /// `U_AC`: ordered product of the `|−⟩` pulses, first pulse applied first.
    pub fn u_minus(&self) -> UnitaryOperator {
        pulse_product(&self.pulses_minus)
    }

    /// `U_BD`: ordered product of the `|+⟩` pulses.
    pub fn u_plus(&self) -> UnitaryOperator {
        pulse_product(&self.pulses_plus)
    }
}

fn pulse_product(pulses: &[PulseSpec]) -> UnitaryOperator {
    pulses.iter().fold(UnitaryOperator::identity(4), |acc, p| {
        p.two_spin_operator().compose(&acc).expect("4x4 operands")
    })
}

/// Cell Hamiltonian `(ω₀/2)(|+⟩⟨+| − |−⟩⟨−|) + (γ/2)(|+⟩⟨−| + |−⟩⟨+|)`.
pub fn charge_hamiltonian(params: &QcaParams) -> HermitianOperator {
    let w = Complex64::new(params.omega0 / 2.0, 0.0);
    let g = Complex64::new(params.gamma / 2.0, 0.0);
    let m = CMatrix::from_row_major(vec![w, g, g, -w]).expect("2x2");
    HermitianOperator::new(m).expect("real symmetric matrix")
}

/// `exp(−i H_QCA t)` for the configured window.
pub fn charge_propagator(params: &QcaParams) -> UnitaryOperator {
    expm_hermitian(&charge_hamiltonian(params), params.duration).expect("2x2 Hermitian evolution is unitary")
}

/// Charge-controlled pulse operator `|−⟩⟨−| ⊗ U_AC + |+⟩⟨+| ⊗ U_BD`
/// (block-diagonal `diag(U_BD, U_AC)` in charge basis order).
pub fn conditional_pulse_operator(cycle: &GateCycle) -> UnitaryOperator {
    let plus = cycle.u_plus();
    let minus = cycle.u_minus();
    let m = CMatrix::from_fn(8, |r, c| {
        let (cr, sr) = (r / 4, r % 4);
        let (cc, sc) = (c / 4, c % 4);
        if cr != cc {
            C0
        } else if cr == ChargeBasis::Plus.index() {
            plus.matrix()[(sr, sc)]
        } else {
            minus.matrix()[(sr, sc)]
        }
    });
    UnitaryOperator::new(m).expect("block-diagonal of unitaries")
}

/// Total charge⊗spin operator of a cycle before the return to the dots:
/// charge evolution followed by the conditional pulses.
pub fn cycle_operator(cycle: &GateCycle) -> UnitaryOperator {
    let evolve = charge_propagator(&cycle.params).tensor(&UnitaryOperator::identity(4));
    conditional_pulse_operator(cycle)
        .compose(&evolve)
        .expect("8x8 operands")
}

/// Effective spin operator obtained by starting in `|−⟩` and merging both
/// charge branches back onto the dots (sum over the final charge index).
/// Unitarity is not checked here.
pub fn merged_effective(cycle: &GateCycle) -> CMatrix {
    let total = cycle_operator(cycle);
    let t = total.matrix();
    let start = 4 * ChargeBasis::Minus.index();
    CMatrix::from_fn(4, |r, c| t[(r, start + c)] + t[(4 + r, start + c)])
}

/// Closed-form shortcut `α·U_AC + β·U_BD` with `|−⟩ → α|−⟩ + β|+⟩`.
pub fn shortcut_effective(cycle: &GateCycle) -> CMatrix {
    let prop = charge_propagator(&cycle.params);
    let minus = ChargeBasis::Minus.index();
    let alpha = prop.matrix()[(minus, minus)];
    let beta = prop.matrix()[(ChargeBasis::Plus.index(), minus)];
    &cycle.u_minus().matrix().scale(alpha) + &cycle.u_plus().matrix().scale(beta)
}

/// Result of one simulated cycle on a two-spin input.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleOutcome {
    pub spin_out: StateVector,
    pub effective: UnitaryOperator,
}

/// Runs the full charge⊗spin pipeline and returns the output spin state and
/// the merged effective operator, which must be unitary within [`MERGE_TOL`].
pub fn run_gate_cycle(cycle: &GateCycle, spin_in: &StateVector) -> Result<CycleOutcome> {
    if spin_in.dim() != 4 {
        return Err(QcaError::DimensionMismatch {
            expected: 4,
            found: spin_in.dim(),
        });
    }
    let effective = checked_effective(cycle)?;
    let spin_out = spin_in.apply(&effective)?;
    Ok(CycleOutcome { spin_out, effective })
}

/// Merged effective operator with the unitarity contract enforced.
pub fn checked_effective(cycle: &GateCycle) -> Result<UnitaryOperator> {
    let merged = merged_effective(cycle);
    let deviation = merged.unitarity_deviation();
    if deviation > MERGE_TOL {
        return Err(QcaError::NonUnitaryMerge { deviation });
    }
    UnitaryOperator::with_tolerance(merged, MERGE_TOL)
}
