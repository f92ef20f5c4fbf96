#ifndef TIEMZI_H
#define TIEMZI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TmStatus {
  TM_STATUS_OK = 0,
  TM_STATUS_NULL_POINTER = 1,
  TM_STATUS_INVALID_ARGUMENT = 2,
  TM_STATUS_CONFIG_ERROR = 3,
  TM_STATUS_PANIC = 4,
} TmStatus;

typedef enum TmVerdict {
  TM_VERDICT_SATISFIED = 0,
  TM_VERDICT_TIGHT = 1,
  TM_VERDICT_VIOLATED = 2,
} TmVerdict;

/**
 * Result of a Monte Carlo phase-shift experiment.
 */
typedef struct TmExperimentSummary TmExperimentSummary;

/**
 * Two-frequency internal state.
 */
typedef struct TmTieInput TmTieInput;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *tm_last_error_message(void);

/**
 * TIE state with `k1 = 1`, `k2 = kappa` and real amplitudes `√p1`, `√(1−p1)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum TmStatus tm_tie_input_new(double p1, double kappa, struct TmTieInput **out);

/**
 * TIE state from complex amplitudes and wavenumbers.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum TmStatus tm_tie_input_from_amplitudes(double c1_re,
                                           double c1_im,
                                           double c2_re,
                                           double c2_im,
                                           double k1,
                                           double k2,
                                           struct TmTieInput **out);

/**
 * # Safety
 * `tie` must be null or a handle from `tm_tie_input_*` not yet freed.
 */
void tm_tie_input_free(struct TmTieInput *tie);

/**
 * Output-port probabilities at path difference `l_ab`.
 *
 * # Safety
 * `tie` must be a live handle; out pointers must be valid for writes.
 */
enum TmStatus tm_tie_fringe(const struct TmTieInput *tie,
                            double l_ab,
                            double *p_plus,
                            double *p_minus);

/**
 * # Safety
 * `tie` must be a live handle; `out` must be valid for writes.
 */
enum TmStatus tm_tie_distinguishability(const struct TmTieInput *tie, double l_ab, double *out);

/**
 * `|dP+/dL| / k_max`.
 *
 * # Safety
 * `tie` must be a live handle; `out` must be valid for writes.
 */
enum TmStatus tm_tie_sensitivity(const struct TmTieInput *tie, double l_ab, double *out);

/**
 * Purity of the reduced path state with arm lengths `(l_ab, 0)`.
 *
 * # Safety
 * `tie` must be a live handle; `out` must be valid for writes.
 */
enum TmStatus tm_tie_purity(const struct TmTieInput *tie, double l_ab, double *out);

/**
 * Left-hand side of the sensitivity-distinguishability ellipse. Pass
 * `INFINITY` as `kappa` for the κ → ∞ limit.
 *
 * # Safety
 * Out pointers must be valid for writes.
 */
enum TmStatus tm_sd_ellipse_lhs(double s,
                                double d,
                                double kappa,
                                double *lhs,
                                enum TmVerdict *verdict);

/**
 * `ceil(1/(k_max δL · S)²)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum TmStatus tm_required_atoms(double kmax_delta_l, double sensitivity, uint64_t *out);

/**
 * Runs an experiment described by a JSON config, for example
 * `{"mode":{"kind":"tie","kappa":3,"p1":0.5},"kmax_delta_l":0.01,"n_in":90000,"seed":1,"repetitions":10}`.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum TmStatus tm_experiment_run(const char *config_json,
                                struct TmExperimentSummary **out);

/**
 * # Safety
 * `summary` must be null or a handle from `tm_experiment_run` not yet freed.
 */
void tm_experiment_free(struct TmExperimentSummary *summary);

/**
 * # Safety
 * `summary` must be a live handle; `out` must be valid for writes.
 */
enum TmStatus tm_experiment_mean_wrong_paths(const struct TmExperimentSummary *summary,
                                             double *out);

/**
 * # Safety
 * `summary` must be a live handle; `out` must be valid for writes.
 */
enum TmStatus tm_experiment_sign_success_rate(const struct TmExperimentSummary *summary,
                                              double *out);

/**
 * # Safety
 * `summary` must be a live handle; `out` must be valid for writes.
 */
enum TmStatus tm_experiment_repetitions(const struct TmExperimentSummary *summary, uint32_t *out);

/**
 * Full summary as JSON. Release the string with `tm_string_free`.
 *
 * # Safety
 * `summary` must be a live handle; `out` must be valid for writes.
 */
enum TmStatus tm_experiment_to_json(const struct TmExperimentSummary *summary, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void tm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TIEMZI_H */
