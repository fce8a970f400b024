// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Batch runner behind the `qcasim` binary.
//!
//! Each subcommand reads a JSON scenario, runs one library routine and
//! writes a table as CSV or JSON. Exit status is 0 on success, 2 for
//! unreadable or invalid input and 3 when a numerical contract fails.

mod report;
mod scenario;

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use thiserror::Error;

pub use report::{format_number, Cell, Report, DECIMALS};
pub use scenario::{
    parse_scenario, Command, Format, GateName, GridConfig, InputSpec, NoiseConfig, QcaConfig, QlConfig, Scenario,
    TargetConfig,
};

use crate::circuit::{run_circuit, LogicCircuit, Mode};
use crate::decoupling::{average_hamiltonian, compose_groups, suppression_report, PulseGroup};
use crate::dfs::{classify_pauli, init_register};
use crate::gates::{cpf_cycle_with, hl_cycle_with, ql_operator, QlSpec};
use crate::linalg::{PauliString, StateVector};
use crate::noise::{
    monte_carlo_dephasing, noisy_effective, sweep, Execution, NoiseParams, NoisyGate, SweepGrid, SweepTarget,
};
use crate::qca::{run_gate_cycle, QcaParams};
use crate::QcaError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("scenario parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario: {0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
    #[error("numerical failure: {0}")]
    Numerical(QcaError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerical(_) => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        }
    }
}

impl From<QcaError> for CliError {
    fn from(e: QcaError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e)
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qcasim", version, about = "Batch simulator for QCA-driven DFS logic qubits")]
pub struct Args {
    /// What to run.
    #[arg(value_enum)]
    pub command: Command,
    /// JSON scenario file.
    #[arg(long, short = 'c', value_name = "FILE")]
    pub config: PathBuf,
    /// Output file (default: the scenario's "output", else stdout).
    #[arg(long, short = 'o', value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Random seed; overrides the scenario's "seed".
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for sweeps and sampling; 1 runs serially.
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Settings that come from the command line rather than the scenario.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    /// Directory against which relative `circuit_file` paths resolve.
    pub base_dir: Option<PathBuf>,
}

/// Runs a parsed scenario and returns the result table.
pub fn run(command: Command, scenario: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    scenario.check_command(command)?;
    match command {
        Command::Gate => run_gate(scenario),
        Command::Circuit => run_circuit_cmd(scenario, opts),
        Command::Sweep => run_sweep(scenario, opts),
        Command::Dephase => run_dephase(scenario, opts),
        Command::Classify => run_classify(scenario),
        Command::Decouple => run_decouple(scenario),
    }
}

/// Renders a report in the scenario's format.
pub fn render(report: &Report, scenario: &Scenario) -> String {
    match scenario.format.unwrap_or_default() {
        Format::Csv => report.to_csv(),
        Format::Json => {
            let value = serde_json::to_value(scenario).expect("scenario serializes");
            report.to_json(&value)
        }
    }
}

/// Full command-line flow: read, run, render, write.
pub fn execute(args: &Args) -> Result<Report, CliError> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", args.config.display())))?;
    let scenario = parse_scenario(&text)?;
    let opts = RunOptions {
        seed: args.seed,
        threads: args.threads,
        base_dir: args.config.parent().map(Path::to_path_buf),
    };
    let report = run(args.command, &scenario, &opts)?;
    let rendered = render(&report, &scenario);
    match args.out.as_ref().or(scenario.output.as_ref()) {
        Some(path) => {
            fs::write(path, rendered).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?
        }
        None => std::io::stdout()
            .lock()
            .write_all(rendered.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?,
    }
    Ok(report)
}

/// Entry point used by the binary; returns the process exit status.
pub fn main_with_args(args: &Args) -> u8 {
    match execute(args) {
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("qcasim: {e}");
            e.exit_code()
        }
    }
}

fn with_execution<T: Send>(threads: Option<usize>, f: impl FnOnce(Execution) -> T + Send) -> Result<T, CliError> {
    match threads {
        Some(0) => Err(CliError::Validation("--threads must be at least 1".into())),
        Some(1) => Ok(f(Execution::Serial)),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Io(format!("cannot start thread pool: {e}")))?;
            Ok(pool.install(|| f(Execution::Parallel)))
        }
        None => Ok(f(Execution::Parallel)),
    }
}

fn missing(key: &str, command: Command) -> CliError {
    CliError::Validation(format!("the {command} command needs a {key:?} field"))
}

fn amplitude_report(state: &StateVector) -> Report {
    let n = state.n_qubits();
    let mut report = Report::new(vec!["index", "basis", "re", "im"]);
    for (i, z) in state.amplitudes().iter().enumerate() {
        let bits = format!("{i:0n$b}");
        report.push(vec![i.into(), bits.into(), z.re.into(), z.im.into()]);
    }
    report
}

fn named(name: &str) -> InputSpec {
    InputSpec::Named(name.into())
}

fn run_gate(s: &Scenario) -> Result<Report, CliError> {
    let gate = s.gate.ok_or_else(|| missing("gate", Command::Gate))?;
    if gate == GateName::Ql {
        if s.qca.is_some() || s.noise.is_some() {
            return Err(CliError::Validation(
                "\"qca\" and \"noise\" do not apply to the QL gate".into(),
            ));
        }
        let ql = s.ql.ok_or_else(|| missing("ql", Command::Gate))?;
        let op = ql_operator(&QlSpec::new(ql.delta0.0, ql.delta1.0)?);
        let input = s.input.clone().unwrap_or_else(|| named("0L")).resolve()?;
        let out = match input.n_qubits() {
            1 => input.apply(&op)?,
            2 => input.apply_local(op.matrix(), &[1])?,
            n => {
                return Err(CliError::Validation(format!(
                    "QL acts on a 1- or 2-qubit input, got {n} qubits"
                )))
            }
        };
        return Ok(amplitude_report(&out));
    }
    if s.ql.is_some() {
        return Err(CliError::Validation("\"ql\" only applies to the QL gate".into()));
    }
    let qca = s.qca.unwrap_or_default();
    let params = QcaParams::new(qca.omega0.0, qca.gamma.0, qca.duration.0)?;
    let (cycle, default_input) = match gate {
        GateName::Hl => (hl_cycle_with(params), "0L"),
        _ => (cpf_cycle_with(params), "Phi"),
    };
    let input = s.input.clone().unwrap_or_else(|| named(default_input)).resolve()?;
    if input.dim() != 4 {
        return Err(CliError::Validation(format!(
            "{gate:?} acts on two spins, got {} qubits",
            input.n_qubits()
        )));
    }
    let out = match s.noise {
        Some(n) => {
            let noise = NoiseParams::new(n.epsilon.0, n.delta.0)?;
            input.apply(&noisy_effective(&cycle, &noise)?.operator)?
        }
        None => run_gate_cycle(&cycle, &input)?.spin_out,
    };
    Ok(amplitude_report(&out))
}

fn run_circuit_cmd(s: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    let text = match (&s.circuit, &s.circuit_file) {
        (Some(text), None) => text.clone(),
        (None, Some(path)) => {
            let path = match &opts.base_dir {
                Some(dir) if path.is_relative() => dir.join(path),
                _ => path.clone(),
            };
            fs::read_to_string(&path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?
        }
        _ => {
            return Err(CliError::Validation(
                "the circuit command needs exactly one of \"circuit\" or \"circuit_file\"".into(),
            ))
        }
    };
    let circuit = LogicCircuit::parse(&text, s.n_logic)?;
    let input = match &s.input {
        Some(spec) => spec.resolve()?,
        None => init_register(circuit.n_logic())?.into_state(),
    };
    let out = run_circuit(&circuit, &input, s.mode.unwrap_or(Mode::Physical))?;
    Ok(amplitude_report(&out))
}

fn default_targets() -> Vec<TargetConfig> {
    [(NoisyGate::Hl, "0L"), (NoisyGate::Hl, "1L"), (NoisyGate::Cpf, "Phi")]
        .into_iter()
        .map(|(gate, input)| TargetConfig {
            gate,
            input: named(input),
            label: None,
        })
        .collect()
}

fn run_sweep(s: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    let g = s.grid.unwrap_or_default();
    let grid = SweepGrid::new(g.eps_max.0, g.delta_max.0, g.steps)?;
    let targets = s
        .targets
        .clone()
        .unwrap_or_else(default_targets)
        .into_iter()
        .map(|t| {
            Ok(SweepTarget {
                gate: t.gate,
                label: t.label.clone().unwrap_or_else(|| t.input.label()),
                input: t.input.resolve()?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if targets.is_empty() {
        return Err(CliError::Validation("\"targets\" must not be empty".into()));
    }
    let records = with_execution(opts.threads, |exec| sweep(&targets, &grid, exec))??;
    let mut report = Report::new(vec!["epsilon", "delta", "gate", "input", "fidelity", "flags"]);
    for r in records {
        let flags = if r.projected { "projected" } else { "" };
        report.push(vec![
            r.epsilon.into(),
            r.delta.into(),
            r.gate.label().into(),
            r.input_label.into(),
            r.fidelity.into(),
            flags.into(),
        ]);
    }
    Ok(report)
}

fn run_dephase(s: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    let input = s
        .input
        .as_ref()
        .ok_or_else(|| missing("input", Command::Dephase))?
        .resolve()?;
    let seed = opts
        .seed
        .or(s.seed)
        .ok_or_else(|| CliError::Validation("dephase needs a seed (scenario \"seed\" or --seed)".into()))?;
    let samples = s.samples.unwrap_or(DEFAULT_SAMPLES);
    let [lo, hi] = s.phi_range.map(|[a, b]| [a.0, b.0]).unwrap_or([0.0, 2.0 * PI]);
    let result = with_execution(opts.threads, |exec| {
        monte_carlo_dephasing(&input, samples, (lo, hi), seed, exec)
    })??;
    let mut report = Report::new(vec!["sample", "phi", "fidelity"]);
    for (i, sample) in result.per_sample.iter().enumerate() {
        report.push(vec![i.into(), sample.phi.into(), sample.fidelity.into()]);
    }
    report.push(vec!["mean".into(), "".into(), result.mean_fidelity.into()]);
    Ok(report)
}

fn run_classify(s: &Scenario) -> Result<Report, CliError> {
    let labels: Vec<String> = match &s.paulis {
        Some(list) => list.clone(),
        None => PauliString::all(2)
            .into_iter()
            .filter(|p| !p.is_identity())
            .map(|p| p.label())
            .collect(),
    };
    let mut report = Report::new(vec!["pauli", "class"]);
    for label in labels {
        let p: PauliString = label.parse()?;
        report.push(vec![label.into(), classify_pauli(&p)?.to_string().into()]);
    }
    Ok(report)
}

fn run_decouple(s: &Scenario) -> Result<Report, CliError> {
    let base = s
        .group
        .clone()
        .unwrap_or_else(|| vec!["II".into(), "XX".into(), "YY".into(), "ZZ".into()]);
    let mut group = PulseGroup::from_labels(&base)?;
    for extra in s.compose.iter().flatten() {
        group = compose_groups(&group, &PulseGroup::from_labels(extra)?)?;
    }
    match &s.terms {
        Some(terms) => {
            let avg = average_hamiltonian(terms, &group)?;
            let mut report = Report::new(vec!["pauli", "original", "surviving", "suppressed"]);
            for t in &avg.terms {
                report.push(vec![
                    t.pauli.clone().into(),
                    t.original.into(),
                    t.surviving.into(),
                    t.suppressed().into(),
                ]);
            }
            Ok(report)
        }
        None => {
            let sup = suppression_report(&group)?;
            let mut report = Report::new(vec!["pauli", "kind", "suppressed"]);
            for (kind, entries) in [("leakage", &sup.leakage), ("logic", &sup.logic)] {
                for e in entries {
                    report.push(vec![e.pauli.clone().into(), kind.into(), e.suppressed.into()]);
                }
            }
            Ok(report)
        }
    }
}
