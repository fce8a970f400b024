// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Scenario files: strict JSON objects describing one run of `qcasim`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::angle::Angle;
use crate::circuit::Mode;
use crate::decoupling::ErrorTerm;
use crate::dfs::encode_basis;
use crate::linalg::StateVector;
use crate::noise::NoisyGate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Gate,
    Circuit,
    Sweep,
    Dephase,
    Classify,
    Decouple,
}

impl Command {
    /// Scenario keys accepted by this command (besides the common ones).
    fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Gate => &["gate", "ql", "input", "qca", "noise"],
            Command::Circuit => &["circuit", "circuit_file", "n_logic", "mode", "input"],
            Command::Sweep => &["grid", "targets"],
            Command::Dephase => &["input", "samples", "seed", "phi_range"],
            Command::Classify => &["paulis"],
            Command::Decouple => &["group", "compose", "terms"],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Gate => "gate",
            Command::Circuit => "circuit",
            Command::Sweep => "sweep",
            Command::Dephase => "dephase",
            Command::Classify => "classify",
            Command::Decouple => "decouple",
        };
        f.write_str(s)
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        <Command as ValueEnum>::from_str(s.trim(), true)
            .map_err(|_| CliError::Validation(format!("unknown command {s:?}")))
    }
}

const COMMON_KEYS: [&str; 3] = ["command", "output", "format"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateName {
    #[serde(rename = "HL")]
    Hl,
    #[serde(rename = "CPF")]
    Cpf,
    #[serde(rename = "QL")]
    Ql,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QcaConfig {
    #[serde(default)]
    pub omega0: Angle,
    #[serde(default = "default_gamma")]
    pub gamma: Angle,
    #[serde(default = "default_duration")]
    pub duration: Angle,
}

fn default_gamma() -> Angle {
    Angle(1.0)
}

fn default_duration() -> Angle {
    Angle(std::f64::consts::FRAC_PI_2)
}

impl Default for QcaConfig {
    fn default() -> Self {
        QcaConfig {
            omega0: Angle(0.0),
            gamma: default_gamma(),
            duration: default_duration(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    #[serde(default)]
    pub epsilon: Angle,
    #[serde(default)]
    pub delta: Angle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QlConfig {
    pub delta0: Angle,
    #[serde(default)]
    pub delta1: Angle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub eps_max: Angle,
    pub delta_max: Angle,
    pub steps: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            eps_max: Angle(0.3),
            delta_max: Angle(0.3),
            steps: 31,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub gate: NoisyGate,
    pub input: InputSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Input state: a named state (`0L`, `1L`, `Phi`), a physical bit string,
/// an encoded logical bit string, or explicit `[re, im]` amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputSpec {
    Named(String),
    Basis { basis: String },
    Logical { logical: String },
    Amplitudes { amplitudes: Vec<[f64; 2]> },
}

impl InputSpec {
    pub fn label(&self) -> String {
        match self {
            InputSpec::Named(n) => n.clone(),
            InputSpec::Basis { basis } => format!("|{basis}>"),
            InputSpec::Logical { logical } => format!("L{logical}"),
            InputSpec::Amplitudes { .. } => "amplitudes".into(),
        }
    }

    pub fn resolve(&self) -> Result<StateVector, CliError> {
        let invalid = |e: crate::QcaError| CliError::Validation(format!("input: {e}"));
        match self {
            InputSpec::Named(name) => named_state(name),
            InputSpec::Basis { basis } => StateVector::from_bitstring(basis).map_err(invalid),
            InputSpec::Logical { logical } => {
                let bits = logical
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(CliError::Validation(format!("input: invalid logical bit {other:?}"))),
                    })
                    .collect::<Result<Vec<bool>, CliError>>()?;
                encode_basis(&bits).map(|r| r.into_state()).map_err(invalid)
            }
            InputSpec::Amplitudes { amplitudes } => {
                let amps: Vec<Complex64> = amplitudes.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                StateVector::new(amps).map_err(invalid)
            }
        }
    }
}

fn named_state(name: &str) -> Result<StateVector, CliError> {
    let key: String = name
        .chars()
        .filter(|c| !matches!(c, '|' | '>' | '_' | ' ' | '⟩'))
        .collect::<String>()
        .to_ascii_lowercase();
    let state = match key.as_str() {
        "0l" => StateVector::from_bitstring("01"),
        "1l" => StateVector::from_bitstring("10"),
        "phi" => StateVector::new(vec![Complex64::new(0.5, 0.0); 4]),
        _ => {
            return Err(CliError::Validation(format!(
                "input: unknown named state {name:?} (expected 0L, 1L or Phi)"
            )))
        }
    };
    state.map_err(|e| CliError::Validation(format!("input: {e}")))
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate: Option<GateName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ql: Option<QlConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qca: Option<QcaConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_logic: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<TargetConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_range: Option<[Angle; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paulis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compose: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<ErrorTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl Scenario {
    /// Keys present in the scenario, in declaration order.
    pub fn present_keys(&self) -> Vec<String> {
        match serde_json::to_value(self) {
            Ok(serde_json::Value::Object(map)) => map.keys().cloned().collect(),
            _ => Vec::new(),
        }
    }

    /// Rejects keys that do not apply to `command` and a mismatching
    /// embedded `command` field.
    pub fn check_command(&self, command: Command) -> Result<(), CliError> {
        if let Some(c) = self.command {
            if c != command {
                return Err(CliError::Validation(format!(
                    "scenario declares command {c:?} but {command} was requested"
                )));
            }
        }
        for key in self.present_keys() {
            if !COMMON_KEYS.contains(&key.as_str()) && !command.keys().contains(&key.as_str()) {
                return Err(CliError::Validation(format!(
                    "key {key:?} does not apply to the {command} command"
                )));
            }
        }
        Ok(())
    }
}

/// Strict parse: unknown keys are fatal and reported with their position.
pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        parse_scenario(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn minimal_gate_scenario_gets_defaults() {
        let s = parse_scenario(r#"{"gate": "HL"}"#).unwrap();
        assert_eq!(s.gate, Some(GateName::Hl));
        let qca = s.qca.unwrap_or_default();
        assert_eq!(qca.omega0.0, 0.0);
        assert_eq!(qca.gamma.0, 1.0);
        assert_eq!(qca.duration.0, FRAC_PI_2);
        assert_eq!(s.format.unwrap_or_default(), Format::Csv);
        s.check_command(Command::Gate).unwrap();
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse_scenario("{\n  \"noise\": {\"epsilonn\": 0.1}\n}").unwrap_err();
        match err {
            CliError::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("epsilonn"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_scenario(r#"{"epsilonn": 0.1}"#).unwrap_err();
        assert!(err.to_string().contains("epsilonn"));
    }

    #[test]
    fn zero_norm_amplitudes_fail_validation() {
        let s = parse_scenario(r#"{"input": {"amplitudes": [[0,0],[0,0]]}}"#).unwrap();
        assert!(matches!(s.input.unwrap().resolve(), Err(CliError::Validation(_))));
    }

    #[test]
    fn inapplicable_keys_are_rejected() {
        let s = parse_scenario(r#"{"gate": "HL", "seed": 3}"#).unwrap();
        assert!(matches!(s.check_command(Command::Gate), Err(CliError::Validation(_))));
        let s = parse_scenario(r#"{"command": "sweep"}"#).unwrap();
        assert!(s.check_command(Command::Gate).is_err());
        assert!(s.check_command(Command::Sweep).is_ok());
    }

    #[test]
    fn input_forms() {
        let named = InputSpec::Named("|0_L>".into()).resolve().unwrap();
        assert_eq!(named, StateVector::from_bitstring("01").unwrap());
        let logical = InputSpec::Logical { logical: "10".into() }.resolve().unwrap();
        assert_eq!(logical, StateVector::from_bitstring("1001").unwrap());
        let s: Scenario = r#"{"input": {"basis": "0110"}}"#.parse().unwrap();
        assert_eq!(s.input.unwrap().resolve().unwrap().dim(), 16);
        assert!(InputSpec::Named("2L".into()).resolve().is_err());
    }

    #[test]
    fn angles_accept_pi_expressions() {
        let s = parse_scenario(r#"{"qca": {"duration": "pi/4"}, "noise": {"delta": "pi/100"}}"#).unwrap();
        assert_eq!(s.qca.unwrap().duration.0, std::f64::consts::FRAC_PI_4);
        assert_eq!(s.noise.unwrap().delta.0, std::f64::consts::PI / 100.0);
    }
}
