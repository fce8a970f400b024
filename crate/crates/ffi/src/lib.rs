// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! C ABI over `qcadfs`.
//!
//! Every fallible call returns a [`QcaStatus`]; results come back through
//! out-pointers. On failure a description is available from
//! [`qca_last_error`] on the same thread. Handles are opaque and must be
//! released with the matching `*_free` function. No call unwinds across the
//! boundary: panics are caught and reported as [`QcaStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use qcadfs::circuit::{run_circuit, LogicCircuit, Mode};
use qcadfs::cli::{self, CliError, Command, RunOptions};
use qcadfs::dfs::{classify_pauli, ErrorClass};
use qcadfs::linalg::{state_fidelity, PauliString, StateVector};
use qcadfs::noise::{monte_carlo_dephasing, noisy_gate_fidelity, Execution, NoiseParams, NoisyGate};
use qcadfs::QcaError;

/// Result code of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcaStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed text, bad dimensions, out-of-range parameters.
    InvalidArgument = 2,
    /// A numerical contract failed (non-unitary merge, leakage, ...).
    Numerical = 3,
    BufferTooSmall = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcaGate {
    Hl = 0,
    Cpf = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcaMode {
    Physical = 0,
    Ideal = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcaErrorClass {
    IdentityOnCode = 0,
    LogicError = 1,
    Leakage = 2,
}

/// Opaque pure state.
pub struct QcaState(StateVector);

/// Opaque logic circuit.
pub struct QcaCircuit(LogicCircuit);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(QcaStatus, String);

impl From<QcaError> for Failure {
    fn from(e: QcaError) -> Self {
        let status = if e.is_numerical() {
            QcaStatus::Numerical
        } else {
            QcaStatus::InvalidArgument
        };
        Failure(status, e.to_string())
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e {
            CliError::Numerical(_) => QcaStatus::Numerical,
            _ => QcaStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(QcaStatus::NullPointer, format!("{what} is NULL"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QcaStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcaStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            QcaStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(QcaStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn state_ref<'a>(p: *const QcaState) -> Result<&'a StateVector, Failure> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| null("state"))
}

fn boxed_state(s: StateVector) -> *mut QcaState {
    Box::into_raw(Box::new(QcaState(s)))
}

/// Message describing the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn qca_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a state from `2 * n_amps` doubles laid out as `re0, im0, re1, ...`.
///
/// # Safety
/// `re_im` must point to `2 * n_amps` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qca_state_new(re_im: *const f64, n_amps: usize, out: *mut *mut QcaState) -> QcaStatus {
    guard(|| {
        if re_im.is_null() {
            return Err(null("re_im"));
        }
        let raw = std::slice::from_raw_parts(re_im, 2 * n_amps);
        let amps = raw.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
        let s = StateVector::new(amps)?;
        write_out(out, boxed_state(s), "out")
    })
}

/// Creates a computational basis state from a bit string such as `"0110"`.
///
/// # Safety
/// `bits` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qca_state_from_bits(bits: *const c_char, out: *mut *mut QcaState) -> QcaStatus {
    guard(|| {
        let s = StateVector::from_bitstring(read_str(bits, "bits")?)?;
        write_out(out, boxed_state(s), "out")
    })
}

/// Number of amplitudes, or 0 for a NULL handle.
///
/// # Safety
/// `state` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qca_state_dim(state: *const QcaState) -> usize {
    state.as_ref().map_or(0, |s| s.0.dim())
}

/// Copies the amplitudes into `re_im` (interleaved, `2 * dim` doubles).
///
/// # Safety
/// `state` must be a live handle; `re_im` must have room for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn qca_state_amplitudes(state: *const QcaState, re_im: *mut f64, len: usize) -> QcaStatus {
    guard(|| {
        let s = state_ref(state)?;
        if re_im.is_null() {
            return Err(null("re_im"));
        }
        if len < 2 * s.dim() {
            return Err(Failure(
                QcaStatus::BufferTooSmall,
                format!("need {} doubles, got {len}", 2 * s.dim()),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(re_im, 2 * s.dim());
        for (pair, z) in dst.chunks_exact_mut(2).zip(s.amplitudes()) {
            pair[0] = z.re;
            pair[1] = z.im;
        }
        Ok(())
    })
}

/// # Safety
/// `state` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qca_state_free(state: *mut QcaState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// `|⟨a|b⟩|²`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qca_state_fidelity(a: *const QcaState, b: *const QcaState, out: *mut f64) -> QcaStatus {
    guard(|| {
        let f = state_fidelity(state_ref(a)?, state_ref(b)?)?;
        write_out(out, f, "out")
    })
}

/// Parses circuit text (`HL q`, `QL q theta`, `CPF a b`, one per line).
/// `n_logic == 0` infers the register size from the operands.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qca_circuit_parse(
    text: *const c_char,
    n_logic: usize,
    out: *mut *mut QcaCircuit,
) -> QcaStatus {
    guard(|| {
        let n = (n_logic > 0).then_some(n_logic);
        let c = LogicCircuit::parse(read_str(text, "text")?, n)?;
        write_out(out, Box::into_raw(Box::new(QcaCircuit(c))), "out")
    })
}

/// # Safety
/// `circuit` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qca_circuit_n_logic(circuit: *const QcaCircuit) -> usize {
    circuit.as_ref().map_or(0, |c| c.0.n_logic())
}

/// Runs `circuit` on `input` (a `2 * n_logic`-qubit physical state).
///
/// # Safety
/// `circuit` and `input` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qca_circuit_run(
    circuit: *const QcaCircuit,
    input: *const QcaState,
    mode: QcaMode,
    out: *mut *mut QcaState,
) -> QcaStatus {
    guard(|| {
        let c = circuit.as_ref().ok_or_else(|| null("circuit"))?;
        let mode = match mode {
            QcaMode::Physical => Mode::Physical,
            QcaMode::Ideal => Mode::Ideal,
        };
        let s = run_circuit(&c.0, state_ref(input)?, mode)?;
        write_out(out, boxed_state(s), "out")
    })
}

/// # Safety
/// `circuit` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qca_circuit_free(circuit: *mut QcaCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// Fidelity of a noisy gate cycle against the ideal gate on a two-spin
/// input. `projected` (may be NULL) reports whether the perturbed merge was
/// projected onto the nearest unitary.
///
/// # Safety
/// `input` must be a live handle; `fidelity` must be writable; `projected`
/// must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn qca_noisy_fidelity(
    gate: QcaGate,
    input: *const QcaState,
    epsilon: f64,
    delta: f64,
    fidelity: *mut f64,
    projected: *mut bool,
) -> QcaStatus {
    guard(|| {
        let gate = match gate {
            QcaGate::Hl => NoisyGate::Hl,
            QcaGate::Cpf => NoisyGate::Cpf,
        };
        let nf = noisy_gate_fidelity(gate, state_ref(input)?, &NoiseParams::new(epsilon, delta)?)?;
        if !projected.is_null() {
            projected.write(nf.projected);
        }
        write_out(fidelity, nf.fidelity, "fidelity")
    })
}

/// Mean fidelity under collective dephasing with `n_samples` angles drawn
/// uniformly from `[lo, hi)` with the given seed.
///
/// # Safety
/// `state` must be a live handle; `mean` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qca_dephasing_mean(
    state: *const QcaState,
    n_samples: usize,
    lo: f64,
    hi: f64,
    seed: u64,
    mean: *mut f64,
) -> QcaStatus {
    guard(|| {
        let r = monte_carlo_dephasing(state_ref(state)?, n_samples, (lo, hi), seed, Execution::Serial)?;
        write_out(mean, r.mean_fidelity, "mean")
    })
}

/// Classifies a two-qubit Pauli label such as `"XZ"` against the code space.
///
/// # Safety
/// `label` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qca_classify_pauli(label: *const c_char, out: *mut QcaErrorClass) -> QcaStatus {
    guard(|| {
        let p: PauliString = read_str(label, "label")?.parse()?;
        let class = match classify_pauli(&p)? {
            ErrorClass::IdentityOnCode => QcaErrorClass::IdentityOnCode,
            ErrorClass::LogicError => QcaErrorClass::LogicError,
            ErrorClass::Leakage => QcaErrorClass::Leakage,
        };
        write_out(out, class, "out")
    })
}

/// Runs a scenario (the JSON accepted by `qcasim`) and returns the rendered
/// table as a newly allocated string to be released with
/// [`qca_string_free`].
///
/// # Safety
/// `command` and `scenario_json` must be NUL-terminated strings; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn qca_run_scenario(
    command: *const c_char,
    scenario_json: *const c_char,
    out: *mut *mut c_char,
) -> QcaStatus {
    guard(|| {
        let name = read_str(command, "command")?;
        let command: Command = name.parse()?;
        let scenario = cli::parse_scenario(read_str(scenario_json, "scenario_json")?)?;
        let report = cli::run(command, &scenario, &RunOptions::default())?;
        let text = CString::new(cli::render(&report, &scenario))
            .map_err(|_| Failure(QcaStatus::Internal, "output contains NUL".into()))?;
        write_out(out, text.into_raw(), "out")
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qca_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
