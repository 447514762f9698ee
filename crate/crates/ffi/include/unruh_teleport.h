#ifndef UNRUH_TELEPORT_H
#define UNRUH_TELEPORT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>
#include <stddef.h>

#define UT_SCENARIO_SINGLE 0

#define UT_SCENARIO_TWO 1

/**
 * Number of entries in the row-major 4x4 resource matrix.
 */
#define UT_RESOURCE_LEN 16

typedef enum UtStatus {
  UT_STATUS_OK = 0,
  UT_STATUS_NULL_POINTER = 1,
  UT_STATUS_OUT_OF_RANGE = 2,
  UT_STATUS_INVALID_ARGUMENT = 3,
  UT_STATUS_DEGENERATE = 4,
  UT_STATUS_ORACLE_MISMATCH = 5,
  UT_STATUS_INTERNAL = 6,
} UtStatus;

/**
 * Opaque channel handle.
 */
typedef struct UtChannel UtChannel;

typedef struct UtCoefficients {
  double a;
  double d;
  double f;
  double n2;
} UtCoefficients;

/**
 * Metrics at one point. `concurrence` and `discord` are NaN and
 * `has_correlations` is false for the single-qubit scenario.
 */
typedef struct UtMetrics {
  double prep_probability;
  double fidelity;
  double qfi_theta;
  double qfi_phi;
  double coherence;
  double concurrence;
  double discord;
  bool has_correlations;
} UtMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a channel. The handle must be released with [`ut_channel_free`].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum UtStatus ut_channel_new(double vartheta, double p, double q, double r, struct UtChannel **out);

/**
 * # Safety
 * `ch` must be NULL or a handle from [`ut_channel_new`] not yet freed.
 */
void ut_channel_free(struct UtChannel *ch);

/**
 * # Safety
 * `ch` must be a live handle; `out` must be valid for writes.
 */
enum UtStatus ut_channel_prep_probability(const struct UtChannel *ch, double *out);

/**
 * # Safety
 * `ch` must be a live handle; `out` must be valid for writes.
 */
enum UtStatus ut_channel_coefficients(const struct UtChannel *ch, struct UtCoefficients *out);

/**
 * Resource state from the simulated preparation, row-major in the basis
 * `00, 01, 10, 11`.
 *
 * # Safety
 * `ch` must be a live handle; `re` and `im` must each point to
 * [`UT_RESOURCE_LEN`] writable doubles.
 */
enum UtStatus ut_channel_resource(const struct UtChannel *ch, double *re, double *im);

/**
 * Evaluates every metric for input angles `(theta, phi)`.
 *
 * # Safety
 * `ch` must be a live handle; `out` must be valid for writes.
 */
enum UtStatus ut_channel_evaluate(const struct UtChannel *ch,
                                  int32_t scenario,
                                  double theta,
                                  double phi,
                                  struct UtMetrics *out);

/**
 * PM strength maximizing the phase QFI. Out-of-range optima are returned
 * with `in_range` false, not as an error.
 *
 * # Safety
 * `value` and `in_range` must be valid for writes.
 */
enum UtStatus ut_p_opt(double q, double vartheta, double r, double *value, bool *in_range);

/**
 * # Safety
 * `value` and `in_range` must be valid for writes.
 */
enum UtStatus ut_q_opt(double p, double vartheta, double r, double *value, bool *in_range);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum UtStatus ut_q_special(double p, double r, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum UtStatus ut_acceleration_to_r(double a, double omega, double *out);

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *ut_last_error_message(void);

/**
 * Static description of a status code.
 */
const char *ut_status_message(enum UtStatus status);

const char *ut_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNRUH_TELEPORT_H */
