#ifndef WPD_H
#define WPD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WpdDirection {
  WPD_DIRECTION_LEQ = 0,
  WPD_DIRECTION_GEQ = 1,
  WPD_DIRECTION_EQ = 2,
} WpdDirection;

typedef enum WpdLogBase {
  WPD_LOG_BASE_TWO = 0,
  WPD_LOG_BASE_E = 1,
} WpdLogBase;

/**
 * Measure selector for `wpd_measure`.
 */
typedef enum WpdMeasure {
  WPD_MEASURE_PREDICTABILITY = 0,
  WPD_MEASURE_VISIBILITY = 1,
  WPD_MEASURE_INFO_S = 2,
  WPD_MEASURE_INFO_I = 3,
  WPD_MEASURE_PURITY = 4,
  WPD_MEASURE_ENTROPY = 5,
} WpdMeasure;

/**
 * Result code of every fallible call.
 */
typedef enum WpdStatus {
  WPD_STATUS_OK = 0,
  WPD_STATUS_NULL_POINTER = 1,
  WPD_STATUS_INVALID_ARGUMENT = 2,
  WPD_STATUS_DIMENSION_MISMATCH = 3,
  WPD_STATUS_INVALID_STATE = 4,
  WPD_STATUS_UNKNOWN_NAME = 5,
  WPD_STATUS_UNKNOWN_RELATION = 6,
  WPD_STATUS_INAPPLICABLE = 7,
  WPD_STATUS_NUMERICAL = 8,
  WPD_STATUS_INTERNAL = 9,
} WpdStatus;

/**
 * Opaque quantum state.
 */
typedef struct WpdState WpdState;

/**
 * Binding comparison of one relation evaluation.
 */
typedef struct WpdRelationRecord {
  double lhs;
  double rhs;
  double margin;
  enum WpdDirection direction;
  bool satisfied;
  bool saturated;
} WpdRelationRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Density matrix from row-major real and imaginary parts, each `n*n` long
 * with `n` the product of `dims`.
 *
 * # Safety
 * `dims` must point to `n_parties` values, `re` and `im` to `n*n` values,
 * and `out` must be writable.
 */
enum WpdStatus wpd_state_from_entries(const size_t *dims,
                                      size_t n_parties,
                                      const double *re,
                                      const double *im,
                                      struct WpdState **out);

/**
 * Pure state from `n` amplitudes; must be normalized.
 *
 * # Safety
 * As for `wpd_state_from_entries` with `n` values in `re` and `im`.
 */
enum WpdStatus wpd_state_from_amplitudes(const size_t *dims,
                                         size_t n_parties,
                                         const double *re,
                                         const double *im,
                                         struct WpdState **out);

/**
 * Named state (`bell`, `ghz`, `w`, `plus[:n]`, `basis:k[:n]`, `max_mixed[:n]`).
 * `n_parties == 0` selects the state's default profile.
 *
 * # Safety
 * `name` must be a nul-terminated string; `dims` as above when `n_parties > 0`.
 */
enum WpdStatus wpd_state_named(const char *name,
                               const size_t *dims,
                               size_t n_parties,
                               struct WpdState **out);

/**
 * Releases a state. Null is ignored.
 *
 * # Safety
 * `state` must come from a `wpd_*` constructor and not be used afterwards.
 */
void wpd_state_free(struct WpdState *state);

/**
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum WpdStatus wpd_state_dim(const struct WpdState *state, size_t *out);

/**
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum WpdStatus wpd_state_is_pure(const struct WpdState *state, bool *out);

/**
 * Copies the density matrix into row-major `re` and `im`, each of `len >= n*n`.
 *
 * # Safety
 * `re` and `im` must be writable for `len` values.
 */
enum WpdStatus wpd_state_entries(const struct WpdState *state, double *re, double *im, size_t len);

/**
 * Scalar measure of a state; `base` only affects `Entropy`.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum WpdStatus wpd_measure(const struct WpdState *state,
                           enum WpdMeasure which,
                           enum WpdLogBase base,
                           double *out);

/**
 * Reduced state on the kept parties (indices into the profile).
 *
 * # Safety
 * `keep` must point to `n_keep` values and `out` be writable.
 */
enum WpdStatus wpd_partial_trace(const struct WpdState *state,
                                 const size_t *keep,
                                 size_t n_keep,
                                 struct WpdState **out);

/**
 * Evaluates one relation with the default cut (first party against the
 * rest). `sigma` may be null; two-state relations are then inapplicable.
 *
 * # Safety
 * `state` must be live, `sigma` live or null, `id` nul-terminated, `out` writable.
 */
enum WpdStatus wpd_relation_evaluate(const struct WpdState *state,
                                     const struct WpdState *sigma,
                                     const char *id,
                                     enum WpdLogBase base,
                                     struct WpdRelationRecord *out);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next `wpd_*` call on the same thread.
 */
const char *wpd_last_error_message(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *wpd_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WPD_H */
