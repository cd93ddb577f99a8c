#ifndef TANGLES_H
#define TANGLES_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible call.
typedef enum TanglesStatus {
  // success
  TANGLES_STATUS_OK = 0,
  // a required pointer argument was null
  TANGLES_STATUS_NULL_POINTER = 1,
  // parameters failed validation
  TANGLES_STATUS_INVALID_ARGUMENT = 2,
  // the computation itself failed
  TANGLES_STATUS_COMPUTE_FAILED = 3,
  // a path or string was not valid UTF-8
  TANGLES_STATUS_INVALID_UTF8 = 4,
  // writing an artifact failed
  TANGLES_STATUS_IO_ERROR = 5,
} TanglesStatus;

// Opaque analysis result.
typedef struct TanglesReport TanglesReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Analyze the tangle of a (p, q) torus knot with the default surgery
// coefficients. Pass 0 for `grid` or `samples` to use the defaults
// (1024 and 2048). On success writes a new handle to `out`.
//
// # Safety
// `out` must be a valid pointer to a `TanglesReport*`.
enum TanglesStatus tangles_torus_report(int64_t p,
                                        int64_t q,
                                        size_t grid,
                                        size_t samples,
                                        struct TanglesReport **out);

// Like `tangles_torus_report` with explicit surgery coefficients
// satisfying `p*r + q*s = 1`.
//
// # Safety
// `out` must be a valid pointer to a `TanglesReport*`.
enum TanglesStatus tangles_torus_report_rs(int64_t p,
                                           int64_t q,
                                           int64_t r,
                                           int64_t s,
                                           size_t grid,
                                           size_t samples,
                                           struct TanglesReport **out);

// Analyze the tangle of a (-2, 3, n) pretzel knot (odd n >= 7).
//
// # Safety
// `out` must be a valid pointer to a `TanglesReport*`.
enum TanglesStatus tangles_pretzel_report(int64_t n, size_t samples, struct TanglesReport **out);

// Binary dihedral components from branched-cover data. `offsets` points
// to `offsets_len` pairs `(l1, l2)` stored flat; it may be null when
// `offsets_len` is zero. `a_minus_order` must be odd and `offsets_len`
// must equal `(a_minus_order - 1) / 2`.
//
// # Safety
// `offsets` must point to at least `2 * offsets_len` readable doubles
// when non-null.
enum TanglesStatus tangles_bd_report(int64_t h_ba,
                                     int64_t h_bc,
                                     uint64_t a_minus_order,
                                     const double *offsets,
                                     size_t offsets_len,
                                     size_t samples,
                                     struct TanglesReport **out);

// Total number of chain-complex generators, or -1 on a null handle.
//
// # Safety
// `report` must be a live handle or null.
int64_t tangles_report_total_generators(const struct TanglesReport *report);

// Binary dihedral generator count, or -1 on a null handle.
//
// # Safety
// `report` must be a live handle or null.
int64_t tangles_report_bd_generators(const struct TanglesReport *report);

// Number of components of the representation variety, or -1.
//
// # Safety
// `report` must be a live handle or null.
int64_t tangles_report_component_count(const struct TanglesReport *report);

// The JSON report. The string is owned by the handle and stays valid
// until the handle is freed. Returns null on error.
//
// # Safety
// `report` must be a live handle or null; the returned pointer must not
// outlive the handle.
const char *tangles_report_json(struct TanglesReport *report);

// Write the pillowcase SVG figure to `path`.
//
// # Safety
// `path` must be a NUL-terminated string; `report` a live handle or null.
enum TanglesStatus tangles_report_write_svg(const struct TanglesReport *report, const char *path);

// Write the CSV point cloud to `path`.
//
// # Safety
// `path` must be a NUL-terminated string; `report` a live handle or null.
enum TanglesStatus tangles_report_write_csv(const struct TanglesReport *report, const char *path);

// Free a report handle. Null is ignored.
//
// # Safety
// `report` must come from one of the constructors and not already be
// freed.
void tangles_report_free(struct TanglesReport *report);

// The most recent error message on this thread. Valid until the next
// failing call on the same thread.
const char *tangles_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TANGLES_H */
