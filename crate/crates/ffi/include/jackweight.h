#ifndef JACKWEIGHT_H
#define JACKWEIGHT_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum JwStatus {
  JW_STATUS_OK = 0,
  JW_STATUS_NULL_POINTER = 1,
  /**
   * Bad shape, index, parameter or configuration.
   */
  JW_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The point or path touches the singular set.
   */
  JW_STATUS_SINGULAR_POINT = 3,
  /**
   * The integrator failed.
   */
  JW_STATUS_INTEGRATION = 4,
  /**
   * The parameter is exceptional for the requested object.
   */
  JW_STATUS_EXCEPTIONAL = 5,
  /**
   * The output buffer is shorter than required.
   */
  JW_STATUS_BUFFER_TOO_SMALL = 6,
  JW_STATUS_PANIC = 7,
  JW_STATUS_OTHER = 8,
} JwStatus;

/**
 * An irreducible representation of the symmetric group in orthogonal form.
 */
typedef struct JwIrrep JwIrrep;

/**
 * A solved weight: `H` and the data needed to evaluate `K(x)`.
 */
typedef struct JwWeight JwWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the next failing call.
 */
const char *jw_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *jw_version(void);

/**
 * Builds the representation for the partition `parts[0..len]`.
 *
 * # Safety
 * `parts` must point to `len` readable values and `out` to writable storage for one pointer.
 */
enum JwStatus jw_irrep_new(const size_t *parts, size_t len, struct JwIrrep **out);

/**
 * # Safety
 * `irrep` must come from [`jw_irrep_new`] and not be used afterwards. Null is ignored.
 */
void jw_irrep_free(struct JwIrrep *irrep);

/**
 * Writes `N`, `n_τ` and `m_τ` (the size of the `+1` block of `σ`). Any output may be null.
 *
 * # Safety
 * `irrep` must be a live handle; non-null outputs must be writable.
 */
enum JwStatus jw_irrep_dims(const struct JwIrrep *irrep, size_t *n, size_t *n_tau, size_t *m_tau);

/**
 * Matrix of the adjacent transposition `(i, i+1)`, `0 ≤ i < N−1`, into `out[0..2 n_τ²]`.
 *
 * # Safety
 * `irrep` must be a live handle and `out` writable for `len` doubles.
 */
enum JwStatus jw_irrep_generator(const struct JwIrrep *irrep, size_t i, double *out, size_t len);

/**
 * Multiplicities `e_0..e_{N−1}` of the eigenvalues `ω^j` of `τ(w₀)`, into `out[0..N]`.
 *
 * # Safety
 * `irrep` must be a live handle and `out` writable for `len` values.
 */
enum JwStatus jw_irrep_upsilon_multiplicities(const struct JwIrrep *irrep, size_t *out, size_t len);

/**
 * Solves for `H` at `kappa` with flow tolerance `tol` (`tol ≤ 0` picks `1e-10`).
 *
 * # Safety
 * `irrep` must be a live handle and `out` writable for one pointer.
 */
enum JwStatus jw_solve_h(const struct JwIrrep *irrep,
                         double kappa,
                         double tol,
                         struct JwWeight **out);

/**
 * # Safety
 * `weight` must come from [`jw_solve_h`] and not be used afterwards. Null is ignored.
 */
void jw_weight_free(struct JwWeight *weight);

/**
 * `H` into `out[0..2 n_τ²]`.
 *
 * # Safety
 * `weight` must be a live handle and `out` writable for `len` doubles.
 */
enum JwStatus jw_weight_h(const struct JwWeight *weight, double *out, size_t len);

/**
 * Singular-value gap of the commutation system and the smallest eigenvalue of `H`.
 *
 * # Safety
 * `weight` must be a live handle; non-null outputs must be writable.
 */
enum JwStatus jw_weight_diagnostics(const struct JwWeight *weight, double *gap, double *min_eig);

/**
 * `K(x)` at `x_j = e^{iθ_j}`, `θ = theta[0..N]`, into `out[0..2 n_τ²]`.
 *
 * # Safety
 * `weight` must be a live handle, `theta` readable for `n` values and `out` writable for `len`.
 */
enum JwStatus jw_weight_k(const struct JwWeight *weight,
                          const double *theta,
                          size_t n,
                          double *out,
                          size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JACKWEIGHT_H */
