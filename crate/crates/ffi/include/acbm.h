#ifndef ACBM_H
#define ACBM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>

typedef enum AcbmStatus {
  ACBM_STATUS_OK = 0,
  ACBM_STATUS_NULL_POINTER = 1,
  ACBM_STATUS_INVALID_ARGUMENT = 2,
  ACBM_STATUS_UNKNOWN_MANIFOLD = 3,
  /*
   The point is excluded from the chart or the geometry is singular there.
   */
  ACBM_STATUS_DOMAIN = 4,
  /*
   `acbm_verify` ran but some comparison or theorem item failed.
   */
  ACBM_STATUS_VERIFICATION_FAILED = 5,
  ACBM_STATUS_PANIC = 6,
} AcbmStatus;

/*
 Tensor blocks readable with `acbm_point_tensor`.
 */
typedef enum AcbmTensor {
  ACBM_TENSOR_INDUCED_METRIC = 0,
  ACBM_TENSOR_COMMUTATORS = 1,
  ACBM_TENSOR_GAMMA = 2,
  ACBM_TENSOR_GAMMA_DIRDERIV = 3,
  ACBM_TENSOR_F = 4,
  ACBM_TENSOR_D = 5,
  ACBM_TENSOR_N = 6,
  ACBM_TENSOR_N_HAT = 7,
  ACBM_TENSOR_CURVATURE = 8,
  ACBM_TENSOR_RICCI = 9,
  ACBM_TENSOR_RICCI_STAR = 10,
  ACBM_TENSOR_D_ETA = 11,
} AcbmTensor;

/*
 An evaluated point: every quantity of the engine at one chart point.
 */
typedef struct AcbmPoint AcbmPoint;

/*
 Scalar invariants at one point.
 */
typedef struct AcbmScalars {
  double norm_nabla_phi;
  double norm_n;
  double norm_n_hat;
  double tau;
  double tau_star;
  double tau_star_star;
  double k12;
  double k13;
  double k23;
} AcbmScalars;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Number of doubles `acbm_point_tensor` writes for `which`.
 */
size_t acbm_tensor_len(enum AcbmTensor which);

/*
 Evaluates `manifold` ("s31", "h31" or "flat") of radius `radius` at
 `u[0..3]`. On success `*out` receives a handle for `acbm_point_free`.

 # Safety
 `manifold` must be a NUL-terminated string, `u` must point to 3 doubles
 and `out` must be writable.
 */
enum AcbmStatus acbm_point_new(const char *manifold,
                               double radius,
                               const double *u,
                               struct AcbmPoint **out);

/*
 Releases a point. Null is ignored.

 # Safety
 `point` must come from `acbm_point_new` and not be freed twice.
 */
void acbm_point_free(struct AcbmPoint *point);

/*
 Copies one tensor block into `out`, which holds `len` doubles
 (at least `acbm_tensor_len(which)`).

 # Safety
 `point` must be a live handle and `out` must point to `len` doubles.
 */
enum AcbmStatus acbm_point_tensor(const struct AcbmPoint *point,
                                  enum AcbmTensor which,
                                  double *out,
                                  size_t len);

/*
 # Safety
 `point` must be a live handle and `out` writable.
 */
enum AcbmStatus acbm_point_scalars(const struct AcbmPoint *point, struct AcbmScalars *out);

/*
 Looks up one scalar by its report name, e.g. "Gamma_221" or "norm_N".

 # Safety
 `point` must be a live handle, `name` NUL-terminated and `out` writable.
 */
enum AcbmStatus acbm_point_quantity(const struct AcbmPoint *point, const char *name, double *out);

/*
 Class membership label, e.g. "F5⊕F9" (UTF-8) or "F0".

 # Safety
 `point` must be a live handle and `out` writable.
 */
enum AcbmStatus acbm_point_classes(const struct AcbmPoint *point, char **out);

/*
 The full evaluation report as JSON, identical to `acbm eval --format json`.

 # Safety
 `point` must be a live handle and `out` writable.
 */
enum AcbmStatus acbm_point_report_json(const struct AcbmPoint *point, char **out);

/*
 Verifies `manifold` at `radius` over its default grid. `tol` is the
 relative tolerance; pass 0 for the default (`ACBM_TOL`, else 1e-9).
 The JSON report is written to `*out_json` whenever verification ran,
 including when it returns `ACBM_STATUS_VERIFICATION_FAILED`.

 # Safety
 `manifold` must be NUL-terminated and `out_json` writable.
 */
enum AcbmStatus acbm_verify(const char *manifold, double radius, double tol, char **out_json);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void acbm_string_free(char *s);

/*
 Message for the last failed call on this thread, or null. Valid until
 the next call into the library on the same thread.
 */
const char *acbm_last_error_message(void);

/*
 Library version, static storage.
 */
const char *acbm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ACBM_H */
