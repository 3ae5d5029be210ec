#ifndef ATOMCODE_H
#define ATOMCODE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AtomcodeMetric {
  ATOMCODE_METRIC_SUBSPACE = 0,
  ATOMCODE_METRIC_ATOMIC = 1,
} AtomcodeMetric;

typedef enum AtomcodeStatus {
  ATOMCODE_STATUS_OK = 0,
  ATOMCODE_STATUS_INVALID_ARGUMENT = 1,
  ATOMCODE_STATUS_PARSE = 2,
  ATOMCODE_STATUS_FIELD_MISMATCH = 3,
  ATOMCODE_STATUS_DIMENSION_MISMATCH = 4,
  ATOMCODE_STATUS_INFEASIBLE = 5,
  ATOMCODE_STATUS_GUARD_EXCEEDED = 6,
  ATOMCODE_STATUS_ARITHMETIC = 7,
  ATOMCODE_STATUS_NULL_POINTER = 8,
  /**
   * Decoding tie; no index was written.
   */
  ATOMCODE_STATUS_AMBIGUOUS = 9,
  ATOMCODE_STATUS_PANIC = 10,
} AtomcodeStatus;

/**
 * Opaque code handle.
 */
typedef struct AtomcodeCode AtomcodeCode;

/**
 * Opaque subspace handle.
 */
typedef struct AtomcodeSubspace AtomcodeSubspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Owned by the
 * library; valid until the next call.
 */
const char *atomcode_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void atomcode_string_free(char *s);

/**
 * Parses the text subspace format (`q N` header, one row per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum AtomcodeStatus atomcode_subspace_parse(const char *text, struct AtomcodeSubspace **out);

/**
 * Row space of a row-major `rows x n` matrix over `F_q`.
 *
 * # Safety
 * `data` must point to `rows * n` values (it may be NULL when that is 0).
 */
enum AtomcodeStatus atomcode_subspace_from_rows(uint32_t q,
                                                uintptr_t n,
                                                const uint32_t *data,
                                                uintptr_t rows,
                                                struct AtomcodeSubspace **out);

/**
 * # Safety
 * `s` must be NULL or a handle from this library that was not yet freed.
 */
void atomcode_subspace_free(struct AtomcodeSubspace *s);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum AtomcodeStatus atomcode_subspace_dim(const struct AtomcodeSubspace *s, uintptr_t *out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum AtomcodeStatus atomcode_subspace_ambient_dim(const struct AtomcodeSubspace *s, uintptr_t *out);

/**
 * Canonical text form of `s`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum AtomcodeStatus atomcode_subspace_format(const struct AtomcodeSubspace *s, char **out);

/**
 * Exact number of minimal atomic decompositions of a `dim`-dimensional
 * space over `F_q`, as a decimal string.
 *
 * # Safety
 * `out` must be writable.
 */
enum AtomcodeStatus atomcode_n_count(uint64_t q, uintptr_t dim, char **out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum AtomcodeStatus atomcode_distance(enum AtomcodeMetric metric,
                                      const struct AtomcodeSubspace *a,
                                      const struct AtomcodeSubspace *b,
                                      char **out);

/**
 * Parses the text code format (`q N count` header, then blocks).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum AtomcodeStatus atomcode_code_parse(const char *text, struct AtomcodeCode **out);

/**
 * # Safety
 * `c` must be NULL or a handle from this library that was not yet freed.
 */
void atomcode_code_free(struct AtomcodeCode *c);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum AtomcodeStatus atomcode_code_len(const struct AtomcodeCode *c, uintptr_t *out);

/**
 * Minimum-distance decoding. On a tie returns `ATOMCODE_STATUS_AMBIGUOUS`
 * and writes nothing; `distance` may be NULL.
 *
 * # Safety
 * Handles must be live; `index` must be writable; `distance` writable or NULL.
 */
enum AtomcodeStatus atomcode_code_decode(const struct AtomcodeCode *c,
                                         const struct AtomcodeSubspace *received,
                                         enum AtomcodeMetric metric,
                                         uintptr_t *index,
                                         char **distance);

/**
 * Singleton-type bound for decimal minimum distance `d`, as the CSV row
 * `q,N,k,D,s_star,delta_eff,bound`.
 *
 * # Safety
 * `d` must be a NUL-terminated string; `out` must be writable.
 */
enum AtomcodeStatus atomcode_singleton_bound(uint64_t q,
                                             uintptr_t n,
                                             uintptr_t k,
                                             const char *d,
                                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ATOMCODE_H */
