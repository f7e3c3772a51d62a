/* C interface for the pvgauge gauge-class toolkit. */

#ifndef PVGAUGE_H
#define PVGAUGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a library call.
 */
typedef enum {
  /**
   * Success; out-pointers are populated.
   */
  PVG_STATUS_OK = 0,
  /**
   * A decision ran to completion and certified that no witness exists.
   */
  PVG_STATUS_NONE_FOUND = 1,
  /**
   * A required pointer argument was null.
   */
  PVG_STATUS_NULL_POINTER = 2,
  /**
   * Input text failed to parse.
   */
  PVG_STATUS_PARSE_ERROR = 3,
  /**
   * Matrix dimensions do not match.
   */
  PVG_STATUS_DIMENSION_MISMATCH = 4,
  /**
   * The matrix is singular over Q(x).
   */
  PVG_STATUS_SINGULAR = 5,
  /**
   * Automatic degree bounds are unavailable; supply bounds text.
   */
  PVG_STATUS_NEEDS_BOUNDS = 6,
  /**
   * The invertibility search was inconclusive.
   */
  PVG_STATUS_INCONCLUSIVE = 7,
  /**
   * Any other domain error (see `pvg_last_error_message`).
   */
  PVG_STATUS_DOMAIN_ERROR = 8,
  /**
   * A panic was caught at the boundary; state is unchanged.
   */
  PVG_STATUS_PANIC = 9,
} PvgStatus;

/**
 * Opaque handle to a basis of intertwiner solutions.
 */
typedef struct PvgBasis PvgBasis;

/**
 * Opaque handle to an n x n matrix over Q(x).
 */
typedef struct PvgMatrix PvgMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the library; static storage, do not free.
 */
const char *pvg_version(void);

/**
 * Message for the most recent non-Ok status on this thread, or null.
 * Caller frees with `pvg_string_free`.
 */
char *pvg_last_error_message(void);

/**
 * # Safety
 * `s` must be a pointer previously returned by this library and not yet
 * freed.
 */
void pvg_string_free(char *s);

/**
 * Parses a matrix literal like `[[0, 1/x],[0, 0]]`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
PvgStatus pvg_matrix_parse(const char *text, PvgMatrix **out);

/**
 * Canonical text form; round-trips through `pvg_matrix_parse`.
 *
 * # Safety
 * `m` must be a live matrix handle; `out` must be valid.
 */
PvgStatus pvg_matrix_format(const PvgMatrix *m, char **out);

/**
 * # Safety
 * `m` must be a live matrix handle or null.
 */
void pvg_matrix_free(PvgMatrix *m);

/**
 * Dimension n of the matrix.
 *
 * # Safety
 * `m` must be a live matrix handle; `out` must be valid.
 */
PvgStatus pvg_matrix_dim(const PvgMatrix *m, uintptr_t *out);

/**
 * # Safety
 * All handles must be live; `out` must be valid.
 */
PvgStatus pvg_matrix_add(const PvgMatrix *a, const PvgMatrix *b, PvgMatrix **out);

/**
 * # Safety
 * All handles must be live; `out` must be valid.
 */
PvgStatus pvg_matrix_sub(const PvgMatrix *a, const PvgMatrix *b, PvgMatrix **out);

/**
 * # Safety
 * All handles must be live; `out` must be valid.
 */
PvgStatus pvg_matrix_mul(const PvgMatrix *a, const PvgMatrix *b, PvgMatrix **out);

/**
 * Entrywise derivative.
 *
 * # Safety
 * `m` must be a live handle; `out` must be valid.
 */
PvgStatus pvg_matrix_derivative(const PvgMatrix *m, PvgMatrix **out);

/**
 * Exact inverse over Q(x); `Singular` when the determinant vanishes.
 *
 * # Safety
 * `m` must be a live handle; `out` must be valid.
 */
PvgStatus pvg_matrix_inverse(const PvgMatrix *m, PvgMatrix **out);

/**
 * Determinant as an exact string.
 *
 * # Safety
 * `m` must be a live handle; `out` must be valid.
 */
PvgStatus pvg_matrix_det(const PvgMatrix *m, char **out);

/**
 * The gauge action `U'U^{-1} + U A U^{-1}`.
 *
 * # Safety
 * All handles must be live; `out` must be valid.
 */
PvgStatus pvg_gauge_act(const PvgMatrix *u, const PvgMatrix *a, PvgMatrix **out);

/**
 * The residual `M' - A2 M + M A1`; zero exactly when M intertwines.
 *
 * # Safety
 * All handles must be live; `out` must be valid.
 */
PvgStatus pvg_sylvester_residual(const PvgMatrix *m,
                                 const PvgMatrix *a1,
                                 const PvgMatrix *a2,
                                 PvgMatrix **out);

/**
 * Basis of rational solutions of `M' = A2 M - M A1`. `bounds_text` may be
 * null (automatic bounds) or a document with a `bounds { ... }` block.
 *
 * # Safety
 * Handles must be live; `out` must be valid; `bounds_text` null or a
 * NUL-terminated string.
 */
PvgStatus pvg_rational_solutions(const PvgMatrix *a1,
                                 const PvgMatrix *a2,
                                 const char *bounds_text,
                                 PvgBasis **out);

/**
 * Number of basis elements.
 *
 * # Safety
 * `b` must be a live basis handle; `out` must be valid.
 */
PvgStatus pvg_basis_len(const PvgBasis *b, uintptr_t *out);

/**
 * True when the basis is the certified-complete solution space (computed
 * bounds rather than user-supplied ones).
 *
 * # Safety
 * `b` must be a live basis handle; `out` must be valid.
 */
PvgStatus pvg_basis_is_complete(const PvgBasis *b, bool *out);

/**
 * Copies basis element `index` into a fresh matrix handle.
 *
 * # Safety
 * `b` must be a live basis handle; `out` must be valid.
 */
PvgStatus pvg_basis_get(const PvgBasis *b, uintptr_t index, PvgMatrix **out);

/**
 * # Safety
 * `b` must be a live basis handle or null.
 */
void pvg_basis_free(PvgBasis *b);

/**
 * Searches for invertible U with `gauge_act(U, A) = B`. On `Ok` the witness
 * handle is set; on `NoneFound` it is null and, when `out_certificate` is
 * non-null, a certificate string is returned.
 *
 * # Safety
 * Handles must be live; `out_witness` must be valid; `bounds_text` and
 * `out_certificate` may be null.
 */
PvgStatus pvg_equivalent(const PvgMatrix *a,
                         const PvgMatrix *b,
                         const char *bounds_text,
                         uint64_t seed,
                         PvgMatrix **out_witness,
                         char **out_certificate);

/**
 * Triviality decision: searches for a rational fundamental matrix
 * (`U' = A U`, U invertible).
 *
 * # Safety
 * As for `pvg_equivalent`.
 */
PvgStatus pvg_is_trivial(const PvgMatrix *a,
                         const char *bounds_text,
                         uint64_t seed,
                         PvgMatrix **out_witness,
                         char **out_certificate);

/**
 * The default PRNG seed used by the command-line tool.
 */
uint64_t pvg_default_seed(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PVGAUGE_H */
