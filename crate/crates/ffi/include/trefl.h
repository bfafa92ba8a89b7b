#ifndef TREFL_H
#define TREFL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum TreflStatus {
  TREFL_STATUS_OK = 0,
  /**
   * Input outside the hypotheses or scope of the computation.
   */
  TREFL_STATUS_HYPOTHESES = 1,
  /**
   * Malformed problem text or options.
   */
  TREFL_STATUS_PARSE = 2,
  TREFL_STATUS_INTERNAL = 3,
  TREFL_STATUS_NULL_POINTER = 4,
  TREFL_STATUS_PANIC = 5,
} TreflStatus;

/**
 * Parsed problem; only reachable through a pointer.
 */
typedef struct TreflProblem TreflProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a problem in text or JSON form. On success `*out` owns a handle
 * to release with `trefl_problem_free`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TreflStatus trefl_problem_parse(const char *text, struct TreflProblem **out);

/**
 * Releases a handle from `trefl_problem_parse`; null is ignored.
 *
 * # Safety
 * `p` must come from `trefl_problem_parse` and not be used afterwards.
 */
void trefl_problem_free(struct TreflProblem *p);

/**
 * Classification report as JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TreflStatus trefl_analyze(const struct TreflProblem *p, char **out);

/**
 * G-regularity report as JSON. `bound = 0` selects the default Tor bound.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TreflStatus trefl_certify(const struct TreflProblem *p,
                               uint64_t seed,
                               size_t samples,
                               size_t bound,
                               char **out);

/**
 * Resolution of the canonical module over `R` as JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TreflStatus trefl_resolve(const struct TreflProblem *p, size_t steps, char **out);

/**
 * Pfaffian and homotopy-table checks as JSON. `field` is `q` or `p:N`;
 * `units` is `u1,u2,u3`, or null for `1,1,1`.
 *
 * # Safety
 * `field` must be a NUL-terminated string, `units` null or one, and `out`
 * a valid pointer.
 */
enum TreflStatus trefl_quadrics_verify(const char *field, const char *units, char **out);

/**
 * Built-in problem for a case letter, in the text form.
 *
 * # Safety
 * `field` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TreflStatus trefl_fixture(char case_letter, const char *field, uint64_t seed, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void trefl_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call on the same thread.
 */
const char *trefl_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREFL_H */
