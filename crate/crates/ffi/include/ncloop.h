#ifndef NCLOOP_H
#define NCLOOP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Output encoding for results.
 */
typedef enum NcloopFormat {
  NCLOOP_FORMAT_TEXT = 0,
  NCLOOP_FORMAT_JSON = 1,
} NcloopFormat;

/**
 * Result codes shared by all entry points.
 */
typedef enum NcloopStatus {
  NCLOOP_STATUS_OK = 0,
  NCLOOP_STATUS_NULL_ARGUMENT = 1,
  NCLOOP_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed path, trace or element expression.
   */
  NCLOOP_STATUS_PARSE = 3,
  /**
   * Degenerate surface or tensor dimension.
   */
  NCLOOP_STATUS_INVALID_SURFACE = 4,
  /**
   * Malformed or ill-typed operator table.
   */
  NCLOOP_STATUS_INVALID_TABLE = 5,
  NCLOOP_STATUS_UNSUPPORTED = 6,
  NCLOOP_STATUS_UNKNOWN_SUITE = 7,
  /**
   * A verification suite ran and at least one case failed.
   */
  NCLOOP_STATUS_VERIFICATION_FAILED = 8,
  NCLOOP_STATUS_PANIC = 9,
} NcloopStatus;

/**
 * Opaque surface handle.
 */
typedef struct NcloopSurface NcloopSurface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates the surface Σ_{g,n+1} with objects `0..=boundaries`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum NcloopStatus ncloop_surface_new(uint32_t genus,
                                     uint32_t boundaries,
                                     struct NcloopSurface **out);

/**
 * Releases a surface handle. Null is ignored.
 *
 * # Safety
 * `s` must be null or a handle from [`ncloop_surface_new`] not yet freed.
 */
void ncloop_surface_free(struct NcloopSurface *s);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ncloop_string_free(char *s);

/**
 * The message for the last failure on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *ncloop_last_error(void);

/**
 * κ(left, right) for two algebra-element expressions.
 *
 * # Safety
 * `s` must be a live handle, the inputs nul-terminated strings and `out` writable.
 */
enum NcloopStatus ncloop_kappa(const struct NcloopSurface *s,
                               const char *left,
                               const char *right,
                               enum NcloopFormat format,
                               char **out);

/**
 * The framed loop operation μ on an algebra element.
 *
 * # Safety
 * As for [`ncloop_kappa`].
 */
enum NcloopStatus ncloop_mu(const struct NcloopSurface *s,
                            const char *path,
                            enum NcloopFormat format,
                            char **out);

/**
 * φ for κ and the basis-flat connection.
 *
 * # Safety
 * As for [`ncloop_kappa`].
 */
enum NcloopStatus ncloop_phi(const struct NcloopSurface *s,
                             const char *path,
                             enum NcloopFormat format,
                             char **out);

/**
 * The modular vector field m on an algebra element.
 *
 * # Safety
 * As for [`ncloop_kappa`].
 */
enum NcloopStatus ncloop_modular(const struct NcloopSurface *s,
                                 const char *path,
                                 enum NcloopFormat format,
                                 char **out);

/**
 * δ on a trace expression such as `|a1 b1|`.
 *
 * # Safety
 * As for [`ncloop_kappa`].
 */
enum NcloopStatus ncloop_delta(const struct NcloopSurface *s,
                               const char *trace,
                               enum NcloopFormat format,
                               char **out);

/**
 * TDiv of a double derivation given as `{generator: [[p, q, coeff], …]}`.
 *
 * # Safety
 * As for [`ncloop_kappa`].
 */
enum NcloopStatus ncloop_tdiv(const struct NcloopSurface *s,
                              const char *table_json,
                              enum NcloopFormat format,
                              char **out);

/**
 * Div of a derivation given as `{generator: "element"}`.
 *
 * # Safety
 * As for [`ncloop_kappa`].
 */
enum NcloopStatus ncloop_div(const struct NcloopSurface *s,
                             const char *table_json,
                             enum NcloopFormat format,
                             char **out);

/**
 * Runs a verification suite (or `all`) and writes the JSON report: one
 * object for a single suite, an array for `all`. Returns
 * `VerificationFailed` (with the report still written) if any case fails.
 *
 * # Safety
 * As for [`ncloop_kappa`].
 */
enum NcloopStatus ncloop_verify(const struct NcloopSurface *s,
                                const char *suite,
                                uint64_t seed,
                                size_t samples,
                                size_t max_len,
                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCLOOP_H */
