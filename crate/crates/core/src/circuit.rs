// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Logical circuits over `{HL, QL, CPF}` and their execution on encoded
//! registers, either with ideal logical matrices or with the physical
//! cycle operators acting on spins.
//!
//! Text format, one instruction per line:
//!
//! ```text
//! # comment
//! HL 0
//! QL 1 pi/4
//! CPF 0 1
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::angle::parse_angle;
use crate::dfs::{self, physical_index, EncodedRegister, MAX_LOGIC_QUBITS};
use crate::error::{QcaError, Result};
use crate::gates::{cpf_cycle, hl_cycle, ideal_gate, ql_operator, GateKind, QlSpec};
use crate::linalg::{StateVector, UnitaryOperator, C0};
use crate::qca::checked_effective;

/// Code-space projection below `1 − LEAKAGE_TOL` is reported as leakage.
pub const LEAKAGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Instruction {
    Hl(usize),
    Ql(usize, QlSpec),
    Cpf(usize, usize),
}

impl Instruction {
    fn operands(&self) -> Vec<usize> {
        match *self {
            Instruction::Hl(q) | Instruction::Ql(q, _) => vec![q],
            Instruction::Cpf(a, b) => vec![a, b],
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Hl(q) => write!(f, "HL {q}"),
            Instruction::Ql(q, spec) => write!(f, "QL {q} {}", spec.theta()),
            Instruction::Cpf(a, b) => write!(f, "CPF {a} {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogicCircuit {
    n_logic: usize,
    instructions: Vec<Instruction>,
}

impl LogicCircuit {
    pub fn new(n_logic: usize, instructions: Vec<Instruction>) -> Result<Self> {
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
        for ins in &instructions {
            let ops = ins.operands();
            if let Some(&bad) = ops.iter().find(|&&q| q >= n_logic) {
                return Err(QcaError::OperandOutOfRange {
                    index: bad,
                    size: n_logic,
                });
            }
            if ops.len() == 2 && ops[0] == ops[1] {
                return Err(QcaError::RepeatedOperand(ops[0]));
            }
        }
        Ok(LogicCircuit { n_logic, instructions })
    }

    /// Parses the text format. With `n_logic = None` the register size is the
    /// largest operand plus one.
    pub fn parse(text: &str, n_logic: Option<usize>) -> Result<Self> {
        let instructions = parse_instructions(text)?;
        let n = match n_logic {
            Some(n) => n,
            None => instructions
                .iter()
                .flat_map(|i| i.operands())
                .max()
                .map_or(1, |m| m + 1),
        };
        Self::new(n, instructions)
    }

    pub fn n_logic(&self) -> usize {
        self.n_logic
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }
}

fn parse_instructions(text: &str) -> Result<Vec<Instruction>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| QcaError::CircuitSyntax {
            line: lineno + 1,
            message,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let qubit = |tok: &str| -> Result<usize> {
            tok.parse::<usize>()
                .map_err(|_| err(format!("invalid qubit index {tok:?}")))
        };
        let arity = |n: usize| -> Result<()> {
            if tokens.len() != n + 1 {
                Err(err(format!(
                    "{} takes {n} argument(s), found {}",
                    tokens[0],
                    tokens.len() - 1
                )))
            } else {
                Ok(())
            }
        };
        let ins = match tokens[0].to_ascii_uppercase().as_str() {
            "HL" => {
                arity(1)?;
                Instruction::Hl(qubit(tokens[1])?)
            }
            "QL" => {
                arity(2)?;
                let theta = parse_angle(tokens[2]).map_err(|e| err(e.to_string()))?;
                Instruction::Ql(qubit(tokens[1])?, QlSpec::from_theta(theta)?)
            }
            "CPF" => {
                arity(2)?;
                Instruction::Cpf(qubit(tokens[1])?, qubit(tokens[2])?)
            }
            other => return Err(err(format!("unknown gate {other:?}"))),
        };
        out.push(ins);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Logical matrices applied to decoded amplitudes.
    Ideal,
    /// Cycle operators applied to physical spins.
    Physical,
}

/// Physical operators for the canonical gates, computed once per run.
struct PhysicalGates {
    hl: UnitaryOperator,
    cpf: UnitaryOperator,
}

impl PhysicalGates {
    fn canonical() -> Result<Self> {
        Ok(PhysicalGates {
            hl: checked_effective(&hl_cycle())?,
            cpf: checked_effective(&cpf_cycle())?,
        })
    }
}

/// Applies one instruction to a physical register state.
///
/// HL acts on pair `(2k, 2k+1)`; QL acts on the bottom-line spin `2k+1`;
/// CPF acts on the top-line spins `(2j, 2k)`.
fn apply_physical(state: &StateVector, ins: &Instruction, gates: &PhysicalGates) -> Result<StateVector> {
    match *ins {
        Instruction::Hl(q) => state.apply_local(gates.hl.matrix(), &[2 * q, 2 * q + 1]),
        Instruction::Ql(q, spec) => state.apply_local(ql_operator(&spec).matrix(), &[2 * q + 1]),
        Instruction::Cpf(a, b) => state.apply_local(gates.cpf.matrix(), &[2 * a, 2 * b]),
    }
}

fn apply_ideal(logical: &StateVector, ins: &Instruction) -> Result<StateVector> {
    match *ins {
        Instruction::Hl(q) => logical.apply_local(ideal_gate(GateKind::Hl).matrix(), &[q]),
        Instruction::Ql(q, spec) => logical.apply_local(ideal_gate(GateKind::Ql(spec.theta())).matrix(), &[q]),
        Instruction::Cpf(a, b) => logical.apply_local(ideal_gate(GateKind::Cpf).matrix(), &[a, b]),
    }
}

/// Physical operator of a single instruction embedded in the full register
/// (dimension `4^n`); intended for small registers in analysis and tests.
pub fn physical_instruction_operator(n_logic: usize, ins: &Instruction) -> Result<UnitaryOperator> {
    let circuit = LogicCircuit::new(n_logic, vec![*ins])?;
    let gates = PhysicalGates::canonical()?;
    let dim = 1usize << (2 * n_logic);
    let mut columns = Vec::with_capacity(dim);
    for c in 0..dim {
        let basis = StateVector::basis(2 * n_logic, c)?;
        columns.push(apply_physical(&basis, &circuit.instructions[0], &gates)?);
    }
    let m = crate::linalg::CMatrix::from_fn(dim, |r, c| columns[c].amplitudes()[r]);
    UnitaryOperator::new(m)
}

/// Runs `circuit` on a physical input of dimension `4^n_logic`.
pub fn run_circuit(circuit: &LogicCircuit, input: &StateVector, mode: Mode) -> Result<StateVector> {
    let expected = 1usize << (2 * circuit.n_logic);
    if input.dim() != expected {
        return Err(QcaError::DimensionMismatch {
            expected,
            found: input.dim(),
        });
    }
    match mode {
        Mode::Physical => {
            let gates = PhysicalGates::canonical()?;
            let mut state = input.clone();
            for ins in &circuit.instructions {
                state = apply_physical(&state, ins, &gates)?;
            }
            let output_leak = dfs::decode(&state)?.leakage_weight;
            if output_leak > LEAKAGE_TOL {
                return Err(QcaError::LeakageDetected { weight: output_leak });
            }
            Ok(state)
        }
        Mode::Ideal => {
            let decoded = dfs::decode(input)?;
            if decoded.leakage_weight > LEAKAGE_TOL {
                return Err(QcaError::LeakageDetected {
                    weight: decoded.leakage_weight,
                });
            }
            let mut logical = StateVector::new(decoded.logical_amps)?;
            for ins in &circuit.instructions {
                logical = apply_ideal(&logical, ins)?;
            }
            let mut phys = vec![C0; expected];
            for (idx, a) in logical.amplitudes().iter().enumerate() {
                phys[physical_index(idx, circuit.n_logic)] = *a;
            }
            StateVector::new(phys)
        }
    }
}

/// Convenience wrapper: run on a register.
pub fn run_on_register(circuit: &LogicCircuit, reg: &EncodedRegister, mode: Mode) -> Result<EncodedRegister> {
    EncodedRegister::from_state(run_circuit(circuit, reg.state(), mode)?)
}
