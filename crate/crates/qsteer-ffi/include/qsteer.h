#ifndef QSTEER_H
#define QSTEER_H

/* Generated by cbindgen from the qsteer-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of a qsteer call.
 */
typedef enum QsteerStatus {
  /**
   * Success.
   */
  QSTEER_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  QSTEER_STATUS_NULL_POINTER = 1,
  /**
   * Invalid dimension, index, table, or parameter.
   */
  QSTEER_STATUS_INVALID_INPUT = 2,
  /**
   * An internal bound check failed; report this as a bug.
   */
  QSTEER_STATUS_THEOREM_VIOLATION = 3,
  /**
   * An i/o operation failed.
   */
  QSTEER_STATUS_IO = 4,
} QsteerStatus;

/**
 * Which scenario a report describes.
 */
typedef enum QsteerScenario {
  /**
   * Alice measures her half of an entangled pair.
   */
  QSTEER_SCENARIO_EPR = 0,
  /**
   * Alice sends a prepared qudit through the cloner.
   */
  QSTEER_SCENARIO_SS = 1,
} QsteerScenario;

/**
 * Optimization objective.
 */
typedef enum QsteerObjective {
  /**
   * Maximize sum_ab + sum_ac.
   */
  QSTEER_OBJECTIVE_TOTAL = 0,
  /**
   * Maximize min(sum_ab, sum_ac) − log2 d.
   */
  QSTEER_OBJECTIVE_EXCLUSIVITY = 1,
} QsteerObjective;

/**
 * Opaque λ table handle.
 */
typedef struct QsteerLambda QsteerLambda;

/**
 * Steering analysis of one λ table. Mutual informations and bounds are in
 * bits; array index 0 is measurement setting 1 (computational basis),
 * index 1 is setting 2 (Fourier basis).
 */
typedef struct QsteerReport {
  size_t d;
  enum QsteerScenario scenario;
  double i_ab[2];
  double i_ac[2];
  double holevo_ac[2];
  double sum_ab;
  double sum_ac;
  double total;
  double bound_total;
  bool steerable_ab;
  bool steerable_ac;
} QsteerReport;

/**
 * Outcome of an optimization run. Retrieve the maximizing table through the
 * `out_lambda` argument of [`qsteer_optimize`].
 */
typedef struct QsteerOptimizeResult {
  double best_objective;
  double best_total;
  double bound;
  double gap;
  uint64_t iterations;
  uint32_t restarts;
  bool converged;
} QsteerOptimizeResult;

/**
 * Depolarizing-family steering threshold.
 */
typedef struct QsteerThreshold {
  /**
   * Largest depolarizing weight that still certifies AB steering.
   */
  double p_star;
  /**
   * The two-setting AB sum at p_star (approximately log2 d).
   */
  double sum_ab;
  /**
   * The criterion bound log2 d.
   */
  double bound;
} QsteerThreshold;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the underlying library, as a static NUL-terminated string.
 */
const char *qsteer_version(void);

/**
 * Message for the most recent failure on this thread, or null if the last
 * call succeeded. The pointer is valid until the next failing qsteer call
 * on the same thread.
 */
const char *qsteer_last_error_message(void);

/**
 * Create the delta table (λ₀₀ = 1).
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum QsteerStatus qsteer_lambda_delta(size_t d, struct QsteerLambda **out);

/**
 * Create the uniform table (all weights 1/d²).
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum QsteerStatus qsteer_lambda_uniform(size_t d, struct QsteerLambda **out);

/**
 * Create a depolarizing table with weight `p` in [0, 1].
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum QsteerStatus qsteer_lambda_depolarizing(size_t d, double p, struct QsteerLambda **out);

/**
 * Create a product-family table from two probability profiles of length d.
 *
 * # Safety
 * `q1` and `q2` must point to `d` readable doubles each; `out` must point
 * to writable storage for one pointer.
 */
enum QsteerStatus qsteer_lambda_product(size_t d,
                                        const double *q1,
                                        const double *q2,
                                        struct QsteerLambda **out);

/**
 * Create a table from `d*d` row-major weights (nonnegative, summing to 1
 * within 1e-10).
 *
 * # Safety
 * `rows` must point to `d*d` readable doubles; `out` must point to writable
 * storage for one pointer.
 */
enum QsteerStatus qsteer_lambda_from_rows(size_t d, const double *rows, struct QsteerLambda **out);

/**
 * Draw a seeded Dirichlet table: a pure function of (seed, index,
 * concentration), identical across platforms and thread counts.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum QsteerStatus qsteer_lambda_sample(size_t d,
                                       uint64_t seed,
                                       uint64_t index,
                                       double concentration,
                                       struct QsteerLambda **out);

/**
 * Release a table handle. Null is ignored.
 *
 * # Safety
 * `lambda` must be null or a pointer previously returned through a
 * `qsteer_lambda_*` out-parameter, not yet freed.
 */
void qsteer_lambda_free(struct QsteerLambda *lambda);

/**
 * Qudit dimension of a table, or 0 for null.
 *
 * # Safety
 * `lambda` must be null or a live handle from this library.
 */
size_t qsteer_lambda_dim(const struct QsteerLambda *lambda);

/**
 * Copy the d*d row-major weights into `buffer`.
 *
 * # Safety
 * `lambda` must be a live handle; `buffer` must hold `buffer_len` writable
 * doubles with `buffer_len >= d*d`.
 */
enum QsteerStatus qsteer_lambda_entries(const struct QsteerLambda *lambda,
                                        double *buffer,
                                        size_t buffer_len);

/**
 * Copy the correlation profile q₁ (setting 1) or q₂ (setting 2) into
 * `buffer` (`buffer_len >= d`).
 *
 * # Safety
 * `lambda` must be a live handle; `buffer` must hold `buffer_len` writable
 * doubles.
 */
enum QsteerStatus qsteer_lambda_q_profile(const struct QsteerLambda *lambda,
                                          uint8_t setting,
                                          double *buffer,
                                          size_t buffer_len);

/**
 * Closed-form Alice–Bob mutual information log₂d − H(qᵢ) for one setting
 * (1 or 2).
 *
 * # Safety
 * `lambda` must be a live handle; `out` must point to one writable double.
 */
enum QsteerStatus qsteer_mutual_info_closed_form(const struct QsteerLambda *lambda,
                                                 uint8_t setting,
                                                 double *out);

/**
 * Full steering analysis of a table in the chosen scenario.
 *
 * # Safety
 * `lambda` must be a live handle; `out` must point to one writable
 * `QsteerReport`.
 */
enum QsteerStatus qsteer_report(const struct QsteerLambda *lambda,
                                enum QsteerScenario scenario,
                                struct QsteerReport *out);

/**
 * Multi-start search for the largest objective value over the λ simplex.
 * On success `out_lambda`, when non-null, receives the maximizing table
 * (free it with [`qsteer_lambda_free`]).
 *
 * # Safety
 * `out` must point to one writable `QsteerOptimizeResult`; `out_lambda`
 * must be null or point to writable storage for one pointer.
 */
enum QsteerStatus qsteer_optimize(size_t d,
                                  enum QsteerObjective objective,
                                  uint32_t restarts,
                                  uint64_t seed,
                                  struct QsteerOptimizeResult *out,
                                  struct QsteerLambda **out_lambda);

/**
 * Steering threshold of the depolarizing family at dimension d.
 *
 * # Safety
 * `out` must point to one writable `QsteerThreshold`.
 */
enum QsteerStatus qsteer_threshold_depolarizing(size_t d, struct QsteerThreshold *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSTEER_H */
