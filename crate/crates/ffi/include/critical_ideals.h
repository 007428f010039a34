#ifndef CRITICAL_IDEALS_H
#define CRITICAL_IDEALS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CiStatus {
  CI_STATUS_OK = 0,
  CI_STATUS_NULL_POINTER = 1,
  CI_STATUS_PARSE = 2,
  CI_STATUS_INVALID_ARGUMENT = 3,
  CI_STATUS_RESOURCE_CAP = 4,
  CI_STATUS_NOT_MEMBER = 5,
  CI_STATUS_BUFFER_TOO_SMALL = 6,
  CI_STATUS_PANIC = 7,
} CiStatus;

/**
 * Opaque digraph handle.
 */
typedef struct CiDigraph CiDigraph;

typedef struct CiLambdaParams {
  size_t n1;
  size_t n2;
  size_t n3;
} CiLambdaParams;

typedef struct CiGroupSummary {
  /**
   * Nonzero invariant factors among the indices read.
   */
  size_t factor_count;
  size_t unit_count;
  size_t free_rank;
} CiGroupSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, empty after a
 * success. Valid until the next call into the library on this thread.
 */
const char *ci_last_error_message(void);

/**
 * Parses a nul-terminated digraph6 string.
 *
 * # Safety
 * `text` must be a valid nul-terminated string; `out` must be writable.
 */
enum CiStatus ci_digraph_from_digraph6(const char *text, struct CiDigraph **out);

/**
 * Builds a digraph on `n` vertices from `arc_count` pairs stored flat in
 * `arcs` (`arcs[2k] -> arcs[2k + 1]`).
 *
 * # Safety
 * `arcs` must point to `2 * arc_count` readable values (or be null when
 * `arc_count` is 0); `out` must be writable.
 */
enum CiStatus ci_digraph_from_arcs(size_t n,
                                   const size_t *arcs,
                                   size_t arc_count,
                                   struct CiDigraph **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `d` must be null or a handle from this library not yet freed.
 */
void ci_digraph_free(struct CiDigraph *d);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
size_t ci_digraph_vertex_count(const struct CiDigraph *d);

/**
 * Writes a newly allocated digraph6 string to `out`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CiStatus ci_digraph_to_digraph6(const struct CiDigraph *d, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ci_string_free(char *s);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CiStatus ci_algebraic_corank(const struct CiDigraph *d, size_t *out);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CiStatus ci_is_gamma_critical(const struct CiDigraph *d, bool *out);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CiStatus ci_is_f_free(const struct CiDigraph *d, bool *out);

/**
 * `CI_STATUS_NOT_MEMBER` (with the reason in the error message) when `d`
 * is not isomorphic to any `Lambda(n1,n2,n3)`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CiStatus ci_recognize_lambda(const struct CiDigraph *d, struct CiLambdaParams *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum CiStatus ci_build_lambda(struct CiLambdaParams p, struct CiDigraph **out);

/**
 * Invariant factors 1..n-1 of the Laplacian. `report` may be null.
 *
 * # Safety
 * See [`ci_smith_group`].
 */
enum CiStatus ci_critical_group(const struct CiDigraph *d,
                                struct CiGroupSummary *summary,
                                char **report);

/**
 * All invariant factors of the adjacency matrix. `report` may be null.
 *
 * # Safety
 * `d` must be a live handle; `summary` must be writable; `report` must be
 * null or writable.
 */
enum CiStatus ci_smith_group(const struct CiDigraph *d,
                             struct CiGroupSummary *summary,
                             char **report);

/**
 * Gamma-critical class counts on `n` vertices: `counts[k]` receives the
 * number with co-rank `k` for `k < counts_len`. Fails with
 * `CI_STATUS_BUFFER_TOO_SMALL` when some co-rank does not fit.
 *
 * # Safety
 * `counts` must point to `counts_len` writable values.
 */
enum CiStatus ci_census_counts(size_t n, size_t *counts, size_t counts_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRITICAL_IDEALS_H */
