/* C ABI for the grover2q two-transmon Grover-search simulator. */

#ifndef GROVER2Q_H
#define GROVER2Q_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum G2qStatus {
  G2Q_STATUS_OK = 0,
  G2Q_STATUS_NULL_POINTER = 1,
  G2Q_STATUS_INVALID_ARGUMENT = 2,
  G2Q_STATUS_SINGULAR_MATRIX = 3,
  G2Q_STATUS_NUMERICAL_ERROR = 4,
  G2Q_STATUS_CONFIG_ERROR = 5,
  G2Q_STATUS_IO_ERROR = 6,
} G2qStatus;

/**
 * Opaque simulation configuration (see `g2q_config_set` for keys).
 */
typedef struct G2qConfig G2qConfig;

/**
 * Opaque result of one oracle run.
 */
typedef struct G2qGroverResult G2qGroverResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Detail message for the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *g2q_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *g2q_version(void);

/**
 * Create a configuration with the documented defaults. Free with
 * `g2q_config_free`.
 */
struct G2qConfig *g2q_config_new(void);

/**
 * # Safety
 * `config` must be a pointer from `g2q_config_new` that has not been freed.
 */
void g2q_config_free(struct G2qConfig *config);

/**
 * Set one configuration key (same keys as the `key = value` config file,
 * e.g. "seed", "shots", "chi", "shelving", "noise_enabled", "t1_i_ns").
 *
 * # Safety
 * `config` must be a live handle; `key` and `value` must be NUL-terminated
 * strings valid for the duration of the call.
 */
enum G2qStatus g2q_config_set(struct G2qConfig *config, const char *key, const char *value);

/**
 * Write the 4×4 readout matrix (row-major, rows = outcomes, columns =
 * projected states) into `out`.
 *
 * # Safety
 * `config` must be a live handle; `out` must point to 16 writable doubles.
 */
enum G2qStatus g2q_readout_matrix(const struct G2qConfig *config, double *out);

/**
 * Per-qubit readout contrasts 1 − e0 − e1.
 *
 * # Safety
 * `config` must be a live handle; `contrast_i` and `contrast_ii` must be
 * writable.
 */
enum G2qStatus g2q_readout_contrasts(const struct G2qConfig *config,
                                     double *contrast_i,
                                     double *contrast_ii);

/**
 * Run the search for the oracle tagging basis state `oracle_tag` (0..=3 for
 * 00..11). On success, `*out` receives a handle to free with
 * `g2q_grover_result_free`.
 *
 * # Safety
 * `config` must be a live handle; `out` must be a writable pointer slot.
 */
enum G2qStatus g2q_run_grover(const struct G2qConfig *config,
                              uint8_t oracle_tag,
                              bool with_tomography,
                              struct G2qGroverResult **out);

/**
 * # Safety
 * `result` must be a pointer from `g2q_run_grover` that has not been freed.
 */
void g2q_grover_result_free(struct G2qGroverResult *result);

/**
 * Raw single-run success probability. Returns NaN for a null handle.
 *
 * # Safety
 * `result` must be a live handle.
 */
double g2q_grover_success_probability(const struct G2qGroverResult *result);

/**
 * Raw outcome counts for outcomes 00, 01, 10, 11. Fails with
 * `InvalidArgument` on the exact-distribution path (shots = 0), which has
 * no counts.
 *
 * # Safety
 * `result` must be a live handle; `out` must point to 4 writable uint64.
 */
enum G2qStatus g2q_grover_counts(const struct G2qGroverResult *result, uint64_t *out);

/**
 * Raw outcome frequencies for outcomes 00, 01, 10, 11.
 *
 * # Safety
 * `result` must be a live handle; `out` must point to 4 writable doubles.
 */
enum G2qStatus g2q_grover_frequencies(const struct G2qGroverResult *result, double *out);

/**
 * State fidelity of the simulated post-oracle state against the ideal
 * tagged state (no readout involved). NaN for a null handle.
 *
 * # Safety
 * `result` must be a live handle.
 */
double g2q_grover_fidelity_after_oracle(const struct G2qGroverResult *result);

/**
 * State fidelity of the simulated final state against the tagged basis
 * state (no readout involved). NaN for a null handle.
 *
 * # Safety
 * `result` must be a live handle.
 */
double g2q_grover_fidelity_final(const struct G2qGroverResult *result);

/**
 * Tomography fidelities (f_int, f_final) of the readout-corrected
 * reconstructions. Fails with `InvalidArgument` when the run was made
 * without tomography.
 *
 * # Safety
 * `result` must be a live handle; `f_int` and `f_final` must be writable.
 */
enum G2qStatus g2q_grover_tomography_fidelities(const struct G2qGroverResult *result,
                                                double *f_int,
                                                double *f_final);

/**
 * Real and imaginary parts (row-major 16 doubles each) of the
 * readout-corrected reconstruction of the final state. Requires a
 * tomography run.
 *
 * # Safety
 * `result` must be a live handle; `real` and `imaginary` must each point to
 * 16 writable doubles.
 */
enum G2qStatus g2q_grover_rho_final(const struct G2qGroverResult *result,
                                    double *real,
                                    double *imaginary);

/**
 * Run all four oracles with per-oracle derived seeds and write the 4×4
 * conditional-probability table (row-major, rows = outcomes ab, columns =
 * oracles uv).
 *
 * # Safety
 * `config` must be a live handle; `out` must point to 16 writable doubles.
 */
enum G2qStatus g2q_conditional_table(const struct G2qConfig *config, double *out);

/**
 * Per-outcome fidelities f_ab and their average from a conditional table
 * (row-major 16 doubles, rows = outcomes, columns = oracles).
 *
 * # Safety
 * `table` must point to 16 readable doubles; `fidelities` to 4 writable
 * doubles; `average` must be writable.
 */
enum G2qStatus g2q_outcome_fidelity(const double *table, double *fidelities, double *average);

/**
 * Calibration sweep on the exact-distribution path: best-fit χ (and idle,
 * when `sweep_idle` is set) against the reference success probabilities.
 *
 * # Safety
 * `config` must be a live handle; `chi`, `idle_ns` and `residual` must be
 * writable; `success` must point to 4 writable doubles.
 */
enum G2qStatus g2q_calibrate(const struct G2qConfig *config,
                             bool sweep_idle,
                             double *chi,
                             double *idle_ns,
                             double *success,
                             double *residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROVER2Q_H */
