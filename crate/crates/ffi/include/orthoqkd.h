#ifndef ORTHOQKD_H
#define ORTHOQKD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  OQ_STATUS_OK = 0,
  OQ_STATUS_NULL_POINTER = 1,
  OQ_STATUS_INVALID_ARGUMENT = 2,
  OQ_STATUS_DOMAIN = 3,
  OQ_STATUS_PHASE_VIOLATION = 4,
  OQ_STATUS_INVARIANT = 5,
  OQ_STATUS_IO = 6,
  OQ_STATUS_PANIC = 7,
} OqStatus;

typedef enum {
  OQ_ATTACK_NONE = 0,
  OQ_ATTACK_DOUBLE_CNOT = 1,
  OQ_ATTACK_INTERCEPT_RESEND = 2,
} OqAttack;

typedef enum {
  OQ_ENSEMBLE_CABELLO = 0,
  OQ_ENSEMBLE_NON_MAX = 1,
} OqEnsemble;

typedef enum {
  OQ_FORMAT_JSON = 0,
  OQ_FORMAT_CSV = 1,
  OQ_FORMAT_TEXT = 2,
} OqFormat;

typedef enum {
  OQ_QUBIT_QUBIT1 = 0,
  OQ_QUBIT_QUBIT2 = 1,
  OQ_QUBIT_EVE_ANCILLA = 2,
  OQ_QUBIT_AUX = 3,
} OqQubit;

/**
 * Opaque simulation report.
 */
typedef struct OqReport OqReport;

/**
 * Opaque state vector.
 */
typedef struct OqState OqState;

/**
 * `alpha` and `beta` are read only when `ensemble` is `NonMax`.
 */
typedef struct {
  uint64_t rounds;
  uint64_t seed;
  OqAttack attack;
  OqEnsemble ensemble;
  double alpha;
  double beta;
} OqSimConfig;

/**
 * Numeric fields of a simulation report. Only the first `alphabet_size`
 * entries of `per_symbol_counts` are meaningful.
 */
typedef struct {
  uint64_t rounds;
  uint64_t seed;
  uint32_t alphabet_size;
  uint64_t per_symbol_counts[4];
  double bob_error_rate;
  double mean_bob_fidelity;
  double eve_exact_fraction;
  double eve_partition_fraction;
  uint64_t knowledge_soundness_violations;
  double empirical_mutual_information_bits;
  double analytic_mutual_information_bits;
  double efficiency;
  double elapsed_ms;
} OqReportSummary;

typedef struct {
  bool rho1_orthogonal;
  bool rho1_identical;
  bool rho2_orthogonal;
  bool criterion_satisfied;
  double tr_rho1_product;
  double rho1_distance;
  double tr_rho2_product;
  bool attack_distinguishes;
  double attack_min_fidelity;
  double eve_mutual_information_bits;
} OqMorResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *oq_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *oq_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void oq_string_free(char *s);

/**
 * Runs a simulation. On success `*out` receives a report handle.
 *
 * # Safety
 * `config` must point to a valid `OqSimConfig`; `out` must be writable.
 */
OqStatus oq_simulate(const OqSimConfig *config, OqReport **out);

/**
 * # Safety
 * `report` must be a live handle from `oq_simulate`; `out` must be writable.
 */
OqStatus oq_report_summary(const OqReport *report, OqReportSummary *out);

/**
 * Renders a report; `*out` receives a string to release with `oq_string_free`.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
OqStatus oq_report_render(const OqReport *report, OqFormat format, char **out);

/**
 * # Safety
 * `report` must be NULL or a live handle; it is invalid afterwards.
 */
void oq_report_free(OqReport *report);

/**
 * Criterion audit and double-CNOT attack for `psi(alpha)`, `phi(beta)`.
 *
 * # Safety
 * `out` must be writable.
 */
OqStatus oq_mor_check(double alpha, double beta, OqMorResult *out);

/**
 * Exact `I(Alice; Eve)` in bits.
 *
 * # Safety
 * `out` must be writable.
 */
OqStatus oq_eve_mutual_information(OqEnsemble ensemble,
                                   double alpha,
                                   double beta,
                                   OqAttack attack,
                                   double *out);

/**
 * `secret_bits / (qubits + classical_bits)`.
 *
 * # Safety
 * `out` must be writable.
 */
OqStatus oq_efficiency(uint64_t secret_bits, uint64_t qubits, uint64_t classical_bits, double *out);

/**
 * Encoded two-qubit state for `symbol`.
 *
 * # Safety
 * `out` must be writable.
 */
OqStatus oq_state_encode(OqEnsemble ensemble,
                         double alpha,
                         double beta,
                         uint8_t symbol,
                         OqState **out);

/**
 * Appends a qubit in `|0>` after the existing ones.
 *
 * # Safety
 * `state` must be a live handle.
 */
OqStatus oq_state_append_zero(OqState *state, OqQubit q);

/**
 * # Safety
 * `state` must be a live handle.
 */
OqStatus oq_state_apply_cnot(OqState *state, OqQubit control, OqQubit target);

/**
 * Copies amplitudes (big-endian basis order) into `re` and `im`, each of
 * capacity `len`. `*written` receives the state's dimension; if `len` is
 * smaller nothing is copied and `InvalidArgument` is returned.
 *
 * # Safety
 * `state` must be a live handle; `re` and `im` must hold `len` doubles;
 * `written` must be writable.
 */
OqStatus oq_state_amplitudes(const OqState *state,
                             double *re,
                             double *im,
                             size_t len,
                             size_t *written);

/**
 * # Safety
 * `state` must be NULL or a live handle; it is invalid afterwards.
 */
void oq_state_free(OqState *state);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORTHOQKD_H */
