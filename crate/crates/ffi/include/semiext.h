#ifndef SEMIEXT_H
#define SEMIEXT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SemiextStatus {
  SEMIEXT_STATUS_OK = 0,
  SEMIEXT_STATUS_NULL_POINTER = 1,
  SEMIEXT_STATUS_INVALID_UTF8 = 2,
  SEMIEXT_STATUS_PARSE = 3,
  SEMIEXT_STATUS_MALFORMED_TABLE = 4,
  SEMIEXT_STATUS_NON_ASSOCIATIVE = 5,
  SEMIEXT_STATUS_INVALID_PARAMETERS = 6,
  SEMIEXT_STATUS_SIZE_GUARD_EXCEEDED = 7,
  SEMIEXT_STATUS_INDEX_OUT_OF_RANGE = 8,
  SEMIEXT_STATUS_BASE_NOT_MONOID = 9,
  SEMIEXT_STATUS_UNKNOWN_BUILTIN = 10,
  SEMIEXT_STATUS_OVERFLOW = 11,
  SEMIEXT_STATUS_PANIC = 12,
  SEMIEXT_STATUS_OTHER = 13,
} SemiextStatus;

/**
 * Opaque extension `I_λ^n(S)`.
 */
typedef struct SemiextExtension SemiextExtension;

/**
 * Opaque finite semigroup.
 */
typedef struct SemiextSemigroup SemiextSemigroup;

typedef struct SemiextRegularity {
  bool regular;
  bool orthodox;
  bool inverse;
  size_t idempotents;
} SemiextRegularity;

typedef struct SemiextGreenCounts {
  size_t r;
  size_t l;
  size_t h;
  size_t d;
  size_t j;
} SemiextGreenCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *semiext_status_message(enum SemiextStatus status);

/**
 * Detail of the last failure on this thread, valid until the next failing
 * call on the same thread. Empty when nothing has failed.
 */
const char *semiext_last_error_message(void);

/**
 * Validates a row-major table of `order * order` entries.
 *
 * # Safety
 * `table` must point to `order * order` readable values and `out` must be
 * writable.
 */
enum SemiextStatus semiext_semigroup_from_table(const uint32_t *table,
                                                size_t order,
                                                struct SemiextSemigroup **out);

/**
 * Parses Cayley text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
enum SemiextStatus semiext_semigroup_parse(const char *text, struct SemiextSemigroup **out);

/**
 * A builtin semigroup by name (`trivial`, `Z2`, `min2`, `leftzero2`,
 * `null2`, `T2`, `chain3`, `A2`).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` must be writable.
 */
enum SemiextStatus semiext_semigroup_builtin(const char *name, struct SemiextSemigroup **out);

/**
 * # Safety
 * `s` must be null or a handle from this library that has not been freed.
 */
void semiext_semigroup_free(struct SemiextSemigroup *s);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t semiext_semigroup_order(const struct SemiextSemigroup *s);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum SemiextStatus semiext_semigroup_product(const struct SemiextSemigroup *s,
                                             size_t a,
                                             size_t b,
                                             size_t *out);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum SemiextStatus semiext_semigroup_regularity(const struct SemiextSemigroup *s,
                                                struct SemiextRegularity *out);

/**
 * Number of classes of each Green relation.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum SemiextStatus semiext_semigroup_green_counts(const struct SemiextSemigroup *s,
                                                  struct SemiextGreenCounts *out);

/**
 * Eggbox diagram in dot format; release with [`semiext_string_free`].
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum SemiextStatus semiext_semigroup_eggbox(const struct SemiextSemigroup *s, char **out);

/**
 * # Safety
 * `p` must be null or a string returned by this library, not yet freed.
 */
void semiext_string_free(char *p);

/**
 * Builds `I_λ^n(S)` over a copy of `base`.
 *
 * # Safety
 * `base` must be a live handle and `out` writable.
 */
enum SemiextStatus semiext_extension_new(const struct SemiextSemigroup *base,
                                         size_t lambda,
                                         size_t n,
                                         struct SemiextExtension **out);

/**
 * # Safety
 * `e` must be null or a handle from this library that has not been freed.
 */
void semiext_extension_free(struct SemiextExtension *e);

/**
 * Closed-form number of elements.
 *
 * # Safety
 * `e` must be a live handle and `out` writable.
 */
enum SemiextStatus semiext_extension_count(const struct SemiextExtension *e, uint64_t *out);

/**
 * Cayley table of the extension as a new semigroup handle. A `guard` of 0
 * uses the default limit (or `SEMIEXT_SIZE_GUARD`).
 *
 * # Safety
 * `e` must be a live handle and `out` writable.
 */
enum SemiextStatus semiext_extension_materialize(const struct SemiextExtension *e,
                                                 size_t guard,
                                                 struct SemiextSemigroup **out);

/**
 * Number of disagreements between the permutation characterization of
 * Green's relations and brute force, over all pairs and relations.
 *
 * # Safety
 * `e` must be a live handle and `out` writable.
 */
enum SemiextStatus semiext_extension_green_mismatches(const struct SemiextExtension *e,
                                                      size_t guard,
                                                      size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMIEXT_H */
