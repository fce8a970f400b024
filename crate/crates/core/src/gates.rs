// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Canonical gate programs: the encoded Hadamard `H_L` and the controlled
//! phase flip, both realized as one QCA cycle, plus the optical phase gate
//! `Q_L(θ)` and the ideal logical matrices they implement.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QcaError, Result};
use crate::linalg::{relative_phase, Axis, CMatrix, UnitaryOperator, C1, UNITARY_TOL};
use crate::qca::{GateCycle, PulseSpec, QcaParams};

/// `H_L` with the default tunneling rate `γ = 1`.
pub fn hl_cycle() -> GateCycle {
    hl_cycle_with(QcaParams::symmetric_quarter(1.0).expect("valid defaults"))
}

/// `U_AC = R_x(π) ⊗ R_x(3π)`, `U_BD = R_z(3π) ⊗ I`.
pub fn hl_cycle_with(params: QcaParams) -> GateCycle {
    GateCycle {
        params,
        pulses_minus: vec![
            PulseSpec {
                target: 0,
                axis: Axis::X,
                angle: PI,
            },
            PulseSpec {
                target: 1,
                axis: Axis::X,
                angle: 3.0 * PI,
            },
        ],
        pulses_plus: vec![PulseSpec {
            target: 0,
            axis: Axis::Z,
            angle: 3.0 * PI,
        }],
    }
}

/// CPF with the default tunneling rate `γ = 1`.
pub fn cpf_cycle() -> GateCycle {
    cpf_cycle_with(QcaParams::symmetric_quarter(1.0).expect("valid defaults"))
}

/// `Ū_AC = R_z(π/2) ⊗ R_z(π/2)`, `Ū_BD = R_z(3π/2) ⊗ R_z(3π/2)`.
pub fn cpf_cycle_with(params: QcaParams) -> GateCycle {
    GateCycle {
        params,
        pulses_minus: vec![
            PulseSpec {
                target: 0,
                axis: Axis::Z,
                angle: FRAC_PI_2,
            },
            PulseSpec {
                target: 1,
                axis: Axis::Z,
                angle: FRAC_PI_2,
            },
        ],
        pulses_plus: vec![
            PulseSpec {
                target: 0,
                axis: Axis::Z,
                angle: 3.0 * FRAC_PI_2,
            },
            PulseSpec {
                target: 1,
                axis: Axis::Z,
                angle: 3.0 * FRAC_PI_2,
            },
        ],
    }
}

/// Spin-selective optical phases: `e^{iδ₀}` on `|0⟩`, `e^{iδ₁}` on `|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QlSpec {
    pub delta0: f64,
    pub delta1: f64,
}

impl QlSpec {
    pub fn new(delta0: f64, delta1: f64) -> Result<Self> {
        if !(delta0.is_finite() && delta1.is_finite()) {
            return Err(QcaError::NonFinite("Faraday phases"));
        }
        Ok(QlSpec { delta0, delta1 })
    }

    /// Spec realizing logical angle `theta` with `δ₁ = 0`.
    pub fn from_theta(theta: f64) -> Result<Self> {
        Self::new(theta, 0.0)
    }

    /// `θ = δ₀ − δ₁`, wrapped into `(−π, π]`.
    pub fn theta(&self) -> f64 {
        wrap_angle(self.delta0 - self.delta1)
    }
}

/// Physical operator on a bottom-line dot: `diag(e^{iδ₀}, e^{iδ₁})`.
pub fn ql_operator(spec: &QlSpec) -> UnitaryOperator {
    let m = CMatrix::from_diagonal(&[
        Complex64::from_polar(1.0, spec.delta0),
        Complex64::from_polar(1.0, spec.delta1),
    ]);
    UnitaryOperator::new(m).expect("diagonal phases")
}

/// Logical gate families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    Hl,
    Ql(f64),
    Cpf,
}

/// Target logical matrices.
pub fn ideal_gate(kind: GateKind) -> UnitaryOperator {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let m = match kind {
        GateKind::Hl => CMatrix::from_row_major(vec![h, h, h, -h]).expect("2x2"),
        GateKind::Ql(theta) => CMatrix::from_diagonal(&[C1, Complex64::from_polar(1.0, theta)]),
        GateKind::Cpf => CMatrix::from_diagonal(&[C1, C1, C1, -C1]),
    };
    UnitaryOperator::new(m).expect("ideal gates are unitary")
}

/// Angles of `e^{iφ} · QL(α) · HL · QL(β) · HL · QL(γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma_angle: f64,
    pub global_phase: f64,
}

impl EulerAngles {
    pub fn reconstruct(&self) -> UnitaryOperator {
        let hl = ideal_gate(GateKind::Hl);
        [
            ideal_gate(GateKind::Ql(self.alpha)),
            hl.clone(),
            ideal_gate(GateKind::Ql(self.beta)),
            hl,
            ideal_gate(GateKind::Ql(self.gamma_angle)),
        ]
        .iter()
        .fold(UnitaryOperator::identity(2), |acc, g| acc.compose(g).expect("2x2"))
        .with_global_phase(self.global_phase)
    }
}

/// Wraps into `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

const DEGENERATE_TOL: f64 = 1e-12;

/// ZXZ-type factorization over the gate set `{QL, HL}`.
///
/// `QL(a) = e^{ia/2} R_z(a)` and `HL·QL(b)·HL = e^{ib/2} R_x(b)`, so the
/// product is `R_z(α) R_x(β) R_z(γ)` up to phase. With `V = U/√det U`:
/// `cos(β/2) = |V₀₀|`, `α+γ = 2 arg V₁₁`, `α−γ = 2 arg V₁₀ + π`.
pub fn euler_decompose(target: &UnitaryOperator) -> Result<EulerAngles> {
    if target.dim() != 2 {
        return Err(QcaError::DimensionMismatch {
            expected: 2,
            found: target.dim(),
        });
    }
    let deviation = target.matrix().unitarity_deviation();
    if deviation > UNITARY_TOL {
        return Err(QcaError::NonUnitaryInput { deviation });
    }
    let m = target.matrix();
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let root = Complex64::from_polar(1.0, det.arg() / 2.0);
    let v00 = m[(0, 0)] / root;
    let v10 = m[(1, 0)] / root;
    let v11 = m[(1, 1)] / root;

    let beta = 2.0 * v10.norm().atan2(v00.norm());
    let (alpha, gamma_angle) = if v10.norm() < DEGENERATE_TOL {
        (2.0 * v11.arg(), 0.0)
    } else if v00.norm() < DEGENERATE_TOL {
        (2.0 * v10.arg() + PI, 0.0)
    } else {
        let sum = 2.0 * v11.arg();
        let diff = 2.0 * v10.arg() + PI;
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    let mut angles = EulerAngles {
        alpha: wrap_angle(alpha),
        beta: wrap_angle(beta),
        gamma_angle: wrap_angle(gamma_angle),
        global_phase: 0.0,
    };
    let phase = relative_phase(&angles.reconstruct(), target)?;
    angles.global_phase = if phase.abs() < DEGENERATE_TOL { 0.0 } else { phase };
    Ok(angles)
}
