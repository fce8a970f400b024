/* Copyright 2026 The qcadfs Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef QCADFS_H
#define QCADFS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible entry point.
 */
typedef enum QcaStatus {
  QCA_STATUS_OK = 0,
  QCA_STATUS_NULL_POINTER = 1,
  /**
   * Malformed text, bad dimensions, out-of-range parameters.
   */
  QCA_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A numerical contract failed (non-unitary merge, leakage, ...).
   */
  QCA_STATUS_NUMERICAL = 3,
  QCA_STATUS_BUFFER_TOO_SMALL = 4,
  QCA_STATUS_INTERNAL = 5,
} QcaStatus;

typedef enum QcaMode {
  QCA_MODE_PHYSICAL = 0,
  QCA_MODE_IDEAL = 1,
} QcaMode;

typedef enum QcaGate {
  QCA_GATE_HL = 0,
  QCA_GATE_CPF = 1,
} QcaGate;

typedef enum QcaErrorClass {
  QCA_ERROR_CLASS_IDENTITY_ON_CODE = 0,
  QCA_ERROR_CLASS_LOGIC_ERROR = 1,
  QCA_ERROR_CLASS_LEAKAGE = 2,
} QcaErrorClass;

/**
 * Opaque logic circuit.
 */
typedef struct QcaCircuit QcaCircuit;

/**
 * Opaque pure state.
 */
typedef struct QcaState QcaState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or NULL.
 * The pointer stays valid until the next call into this library.
 */
const char *qca_last_error(void);

/**
 * Creates a state from `2 * n_amps` doubles laid out as `re0, im0, re1, ...`.
 *
 * # Safety
 * `re_im` must point to `2 * n_amps` readable doubles; `out` must be writable.
 */
enum QcaStatus qca_state_new(const double *re_im, size_t n_amps, struct QcaState **out);

/**
 * Creates a computational basis state from a bit string such as `"0110"`.
 *
 * # Safety
 * `bits` must be a NUL-terminated string; `out` must be writable.
 */
enum QcaStatus qca_state_from_bits(const char *bits, struct QcaState **out);

/**
 * Number of amplitudes, or 0 for a NULL handle.
 *
 * # Safety
 * `state` must be NULL or a live handle.
 */
size_t qca_state_dim(const struct QcaState *state);

/**
 * Copies the amplitudes into `re_im` (interleaved, `2 * dim` doubles).
 *
 * # Safety
 * `state` must be a live handle; `re_im` must have room for `len` doubles.
 */
enum QcaStatus qca_state_amplitudes(const struct QcaState *state, double *re_im, size_t len);

/**
 * # Safety
 * `state` must be NULL or a handle not yet freed.
 */
void qca_state_free(struct QcaState *state);

/**
 * `|⟨a|b⟩|²`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum QcaStatus qca_state_fidelity(const struct QcaState *a, const struct QcaState *b, double *out);

/**
 * Parses circuit text (`HL q`, `QL q theta`, `CPF a b`, one per line).
 * `n_logic == 0` infers the register size from the operands.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum QcaStatus qca_circuit_parse(const char *text, size_t n_logic, struct QcaCircuit **out);

/**
 * # Safety
 * `circuit` must be NULL or a live handle.
 */
size_t qca_circuit_n_logic(const struct QcaCircuit *circuit);

/**
 * Runs `circuit` on `input` (a `2 * n_logic`-qubit physical state).
 *
 * # Safety
 * `circuit` and `input` must be live handles; `out` must be writable.
 */
enum QcaStatus qca_circuit_run(const struct QcaCircuit *circuit,
                               const struct QcaState *input,
                               enum QcaMode mode,
                               struct QcaState **out);

/**
 * # Safety
 * `circuit` must be NULL or a handle not yet freed.
 */
void qca_circuit_free(struct QcaCircuit *circuit);

/**
 * Fidelity of a noisy gate cycle against the ideal gate on a two-spin
 * input. `projected` (may be NULL) reports whether the perturbed merge was
 * projected onto the nearest unitary.
 *
 * # Safety
 * `input` must be a live handle; `fidelity` must be writable; `projected`
 * must be NULL or writable.
 */
enum QcaStatus qca_noisy_fidelity(enum QcaGate gate,
                                  const struct QcaState *input,
                                  double epsilon,
                                  double delta,
                                  double *fidelity,
                                  bool *projected);

/**
 * Mean fidelity under collective dephasing with `n_samples` angles drawn
 * uniformly from `[lo, hi)` with the given seed.
 *
 * # Safety
 * `state` must be a live handle; `mean` must be writable.
 */
enum QcaStatus qca_dephasing_mean(const struct QcaState *state,
                                  size_t n_samples,
                                  double lo,
                                  double hi,
                                  uint64_t seed,
                                  double *mean);

/**
 * Classifies a two-qubit Pauli label such as `"XZ"` against the code space.
 *
 * # Safety
 * `label` must be a NUL-terminated string; `out` must be writable.
 */
enum QcaStatus qca_classify_pauli(const char *label, enum QcaErrorClass *out);

/**
 * Runs a scenario (the JSON accepted by `qcasim`) and returns the rendered
 * table as a newly allocated string to be released with
 * [`qca_string_free`].
 *
 * # Safety
 * `command` and `scenario_json` must be NUL-terminated strings; `out` must
 * be writable.
 */
enum QcaStatus qca_run_scenario(const char *command, const char *scenario_json, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void qca_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCADFS_H */
