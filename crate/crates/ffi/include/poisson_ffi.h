#ifndef POISSON_FFI_H
#define POISSON_FFI_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PoissonStatus {
  POISSON_STATUS_OK = 0,
  POISSON_STATUS_NULL_ARGUMENT = 1,
  POISSON_STATUS_INVALID_UTF8 = 2,
  POISSON_STATUS_PARSE = 3,
  POISSON_STATUS_INVALID_INPUT = 4,
  /**
   * The input is valid but outside what the operation handles.
   */
  POISSON_STATUS_UNSUPPORTED = 5,
  POISSON_STATUS_CAP_EXCEEDED = 6,
  POISSON_STATUS_PANIC = 7,
} PoissonStatus;

/**
 * Opaque algebra handle.
 */
typedef struct PoissonAlgebra PoissonAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an algebra from JSON. On success `*out` owns a handle that must be
 * released with `poisson_algebra_free`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum PoissonStatus poisson_algebra_from_json(const char *json, struct PoissonAlgebra **out);

/**
 * # Safety
 * `a` must be null or a handle from `poisson_algebra_from_json` not yet freed.
 */
void poisson_algebra_free(struct PoissonAlgebra *a);

/**
 * Number of generators, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
uintptr_t poisson_algebra_variables(const struct PoissonAlgebra *a);

/**
 * Characteristic, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
uint32_t poisson_algebra_characteristic(const struct PoissonAlgebra *a);

/**
 * Center report up to `max_degree` (0 selects `2p`).
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum PoissonStatus poisson_center_json(const struct PoissonAlgebra *a,
                                       uint32_t max_degree,
                                       char **out);

/**
 * Gorenstein report; `max_degree` (0 selects `5p`) only matters for
 * non-skew brackets.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum PoissonStatus poisson_gorenstein_json(const struct PoissonAlgebra *a,
                                           uint32_t max_degree,
                                           char **out);

/**
 * Log-ozone report from normal elements of degree `<= normal_degree`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum PoissonStatus poisson_loz_json(const struct PoissonAlgebra *a,
                                    uint32_t normal_degree,
                                    uint32_t max_degree,
                                    bool predicates,
                                    char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void poisson_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *poisson_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POISSON_FFI_H */
