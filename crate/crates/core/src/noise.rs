// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Control-imprecision model and fidelity experiments.
//!
//! Two error knobs are injected into a gate cycle:
//! - `epsilon`: phase error per `π/2` of nominal single-spin rotation,
//!   accumulated proportionally and with the sign of the rotation;
//! - `delta`: phase error of the tunneling window, added once per cycle to
//!   the accumulated charge angle `γ·t`.
//!
//! Perturbed cycles generally violate the unitary-merge condition slightly;
//! their effective operator is replaced by the nearest unitary and the
//! result is flagged.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dfs::apply_collective_dephasing;
use crate::error::{QcaError, Result};
use crate::gates::{cpf_cycle, hl_cycle};
use crate::linalg::{nearest_unitary, state_fidelity, StateVector, UnitaryOperator};
use crate::qca::{checked_effective, merged_effective, GateCycle, PulseSpec, MERGE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    epsilon: f64,
    delta: f64,
}

impl NoiseParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        for (name, v) in [("epsilon", epsilon), ("delta", delta)] {
            if !(v.is_finite() && (0.0..PI).contains(&v)) {
                return Err(QcaError::InvalidParameter(format!(
                    "{name} must lie in [0, pi), got {v}"
                )));
            }
        }
        Ok(NoiseParams { epsilon, delta })
    }

    pub fn none() -> Self {
        NoiseParams {
            epsilon: 0.0,
            delta: 0.0,
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Nominal angle `θ` becomes `θ + ε·(|θ|/(π/2))·sign θ`.
pub fn perturb_angle(angle: f64, epsilon: f64) -> f64 {
    angle + epsilon * (angle.abs() / FRAC_PI_2) * angle.signum()
}

pub fn perturb_cycle(cycle: &GateCycle, noise: &NoiseParams) -> Result<GateCycle> {
    let perturb = |pulses: &[PulseSpec]| -> Vec<PulseSpec> {
        pulses
            .iter()
            .map(|p| PulseSpec {
                angle: perturb_angle(p.angle, noise.epsilon),
                ..*p
            })
            .collect()
    };
    let params = &cycle.params;
    let charge_angle = params.charge_angle() + noise.delta;
    Ok(GateCycle {
        params: params.with_duration(charge_angle / params.gamma())?,
        pulses_minus: perturb(&cycle.pulses_minus),
        pulses_plus: perturb(&cycle.pulses_plus),
    })
}

/// Gates swept in fidelity experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NoisyGate {
    #[serde(rename = "HL")]
    Hl,
    #[serde(rename = "CPF")]
    Cpf,
}

impl NoisyGate {
    pub fn cycle(self) -> GateCycle {
        match self {
            NoisyGate::Hl => hl_cycle(),
            NoisyGate::Cpf => cpf_cycle(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            NoisyGate::Hl => "HL",
            NoisyGate::Cpf => "CPF",
        }
    }
}

impl fmt::Display for NoisyGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NoisyGate {
    type Err = QcaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "HL" => Ok(NoisyGate::Hl),
            "CPF" => Ok(NoisyGate::Cpf),
            other => Err(QcaError::InvalidParameter(format!(
                "unknown gate {other:?} (expected HL or CPF)"
            ))),
        }
    }
}

/// Effective operator of a perturbed cycle, projected onto the unitary group
/// when the merge is not unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisyEffective {
    pub operator: UnitaryOperator,
    pub projected: bool,
}

pub fn noisy_effective(cycle: &GateCycle, noise: &NoiseParams) -> Result<NoisyEffective> {
    let perturbed = perturb_cycle(cycle, noise)?;
    let merged = merged_effective(&perturbed);
    if merged.unitarity_deviation() <= MERGE_TOL {
        Ok(NoisyEffective {
            operator: UnitaryOperator::with_tolerance(merged, MERGE_TOL)?,
            projected: false,
        })
    } else {
        Ok(NoisyEffective {
            operator: nearest_unitary(&merged)?,
            projected: true,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyFidelity {
    pub fidelity: f64,
    pub projected: bool,
}

/// Fidelity between the ideal-cycle and perturbed-cycle outputs on `input`
/// (a two-spin state: one encoded pair for HL, two top-line spins for CPF).
pub fn noisy_gate_fidelity(gate: NoisyGate, input: &StateVector, noise: &NoiseParams) -> Result<NoisyFidelity> {
    if input.dim() != 4 {
        return Err(QcaError::DimensionMismatch {
            expected: 4,
            found: input.dim(),
        });
    }
    let cycle = gate.cycle();
    let ideal = input.apply(&checked_effective(&cycle)?)?;
    let noisy = noisy_effective(&cycle, noise)?;
    let actual = input.apply(&noisy.operator)?;
    Ok(NoisyFidelity {
        fidelity: state_fidelity(&ideal, &actual)?,
        projected: noisy.projected,
    })
}

/// Square lattice `[0, eps_max] × [0, delta_max]` with `steps` points per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    eps_max: f64,
    delta_max: f64,
    steps: usize,
}

impl SweepGrid {
    pub fn new(eps_max: f64, delta_max: f64, steps: usize) -> Result<Self> {
        for (name, v) in [("eps_max", eps_max), ("delta_max", delta_max)] {
            if !(v.is_finite() && v > 0.0 && v < PI) {
                return Err(QcaError::InvalidParameter(format!(
                    "{name} must lie in (0, pi), got {v}"
                )));
            }
        }
        if steps < 2 {
            return Err(QcaError::InvalidParameter(format!(
                "grid needs at least 2 steps per axis, got {steps}"
            )));
        }
        Ok(SweepGrid {
            eps_max,
            delta_max,
            steps,
        })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn epsilons(&self) -> Vec<f64> {
        axis(self.eps_max, self.steps)
    }

    pub fn deltas(&self) -> Vec<f64> {
        axis(self.delta_max, self.steps)
    }

    /// Row-major lattice points, epsilon outer.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let deltas = self.deltas();
        self.epsilons()
            .into_iter()
            .flat_map(|e| deltas.iter().map(move |&d| (e, d)))
            .collect()
    }
}

fn axis(max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                max
            } else {
                max * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// One gate/input surface of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTarget {
    pub gate: NoisyGate,
    pub label: String,
    pub input: StateVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityRecord {
    pub epsilon: f64,
    pub delta: f64,
    pub gate: NoisyGate,
    pub input_label: String,
    pub fidelity: f64,
    /// The perturbed merge needed nearest-unitary projection.
    pub projected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    /// Uses the ambient rayon thread pool.
    Parallel,
}

/// Evaluates every lattice point for every target. Output order is
/// lattice-major (ε outer, δ inner), then target order, regardless of
/// execution strategy.
pub fn sweep(targets: &[SweepTarget], grid: &SweepGrid, execution: Execution) -> Result<Vec<FidelityRecord>> {
    for t in targets {
        if t.input.dim() != 4 {
            return Err(QcaError::DimensionMismatch {
                expected: 4,
                found: t.input.dim(),
            });
        }
    }
    let points = grid.points();
    let eval = |&(epsilon, delta): &(f64, f64)| -> Result<Vec<FidelityRecord>> {
        let noise = NoiseParams::new(epsilon, delta)?;
        targets
            .iter()
            .map(|t| {
                let nf = noisy_gate_fidelity(t.gate, &t.input, &noise)?;
                Ok(FidelityRecord {
                    epsilon,
                    delta,
                    gate: t.gate,
                    input_label: t.label.clone(),
                    fidelity: nf.fidelity,
                    projected: nf.projected,
                })
            })
            .collect()
    };
    let chunks: Vec<Result<Vec<FidelityRecord>>> = match execution {
        Execution::Serial => points.iter().map(eval).collect(),
        Execution::Parallel => points.par_iter().map(eval).collect(),
    };
    let mut out = Vec::with_capacity(points.len() * targets.len());
    for chunk in chunks {
        out.extend(chunk?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DephasingSample {
    pub phi: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub mean_fidelity: f64,
    pub per_sample: Vec<DephasingSample>,
}

/// Collective dephasing angle for sample `index`: an independent ChaCha
/// stream per index, so the draw does not depend on evaluation order.
pub fn sample_phase(seed: u64, index: u64, lo: f64, hi: f64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.random_range(lo..hi)
}

/// Averages `|⟨ψ|exp(−iφZ)ψ⟩|²` over `φ` uniform in `[lo, hi)`.
pub fn monte_carlo_dephasing(
    state: &StateVector,
    n_samples: usize,
    phi_range: (f64, f64),
    seed: u64,
    execution: Execution,
) -> Result<MonteCarloResult> {
    let (lo, hi) = phi_range;
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(QcaError::EmptyRange { lo, hi });
    }
    if n_samples == 0 {
        return Err(QcaError::InvalidParameter("n_samples must be at least 1".into()));
    }
    if !state.n_qubits().is_multiple_of(2) {
        return Err(QcaError::DimensionNotPairEven(state.n_qubits()));
    }
    let one = |i: usize| -> Result<DephasingSample> {
        // a degenerate range [φ, φ] pins every sample to φ
        let phi = if hi == lo {
            lo
        } else {
            sample_phase(seed, i as u64, lo, hi)
        };
        let dephased = apply_collective_dephasing(state, phi)?;
        Ok(DephasingSample {
            phi,
            fidelity: state_fidelity(state, &dephased)?,
        })
    };
    let per_sample: Vec<DephasingSample> = match execution {
        Execution::Serial => (0..n_samples).map(one).collect::<Result<_>>()?,
        Execution::Parallel => (0..n_samples).into_par_iter().map(one).collect::<Result<_>>()?,
    };
    let mean_fidelity = per_sample.iter().map(|s| s.fidelity).sum::<f64>() / n_samples as f64;
    Ok(MonteCarloResult {
        mean_fidelity,
        per_sample,
    })
}
