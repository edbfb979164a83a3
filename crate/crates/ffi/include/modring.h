#ifndef MODRING_H
#define MODRING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ModringStatus {
  MODRING_STATUS_OK = 0,
  /**
   * A verification ran and at least one check failed.
   */
  MODRING_STATUS_CHECK_FAILED = 1,
  MODRING_STATUS_INVALID_INPUT = 2,
  /**
   * Weight-1 data needed for the request is missing.
   */
  MODRING_STATUS_DATA_UNAVAILABLE = 3,
  MODRING_STATUS_NULL_POINTER = 4,
  MODRING_STATUS_INTERNAL = 5,
} ModringStatus;

typedef enum ModringGroupKind {
  MODRING_GROUP_KIND_GAMMA0 = 0,
  MODRING_GROUP_KIND_GAMMA1 = 1,
  MODRING_GROUP_KIND_GAMMA = 2,
} ModringGroupKind;

typedef enum ModringTableFormat {
  MODRING_TABLE_FORMAT_TSV = 0,
  MODRING_TABLE_FORMAT_JSON = 1,
  MODRING_TABLE_FORMAT_MARKDOWN = 2,
} ModringTableFormat;

/**
 * Opaque congruence subgroup.
 */
typedef struct ModringGroup ModringGroup;

/**
 * Opaque decomposition sequence.
 */
typedef struct ModringSequence ModringSequence;

/**
 * Opaque table of weight-1 cusp form dimensions.
 */
typedef struct ModringWeight1 ModringWeight1;

/**
 * The degree of ω is omega_degree_num / omega_degree_den.
 */
typedef struct ModringLevelInvariants {
  uint64_t index;
  uint64_t omega_degree_num;
  uint64_t omega_degree_den;
  uint64_t cusps;
  uint64_t elliptic2;
  uint64_t elliptic3;
  uint64_t genus;
} ModringLevelInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *modring_version(void);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *modring_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void modring_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum ModringStatus modring_group_new(enum ModringGroupKind kind,
                                     uint64_t level,
                                     struct ModringGroup **out);

/**
 * Parse `g0:N`, `g1:N` or `g:N`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ModringStatus modring_group_parse(const char *spec, struct ModringGroup **out);

/**
 * # Safety
 * `group` must be null or a handle from this library, not yet freed.
 */
void modring_group_free(struct ModringGroup *group);

/**
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum ModringStatus modring_group_invariants(const struct ModringGroup *group,
                                            struct ModringLevelInvariants *out);

/**
 * The builtin weight-1 table.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ModringStatus modring_weight1_builtin(struct ModringWeight1 **out);

/**
 * Builtin table with entries from `text` (`kind level s1` per line) taking
 * precedence.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ModringStatus modring_weight1_with_overrides(const char *text, struct ModringWeight1 **out);

/**
 * # Safety
 * `w1` must be null or a handle from this library, not yet freed.
 */
void modring_weight1_free(struct ModringWeight1 *w1);

/**
 * dim M_k, or dim S_k when `cusp` is true. A null `w1` means the builtin table.
 *
 * # Safety
 * `group` must be a live handle, `w1` null or live, `out` valid.
 */
enum ModringStatus modring_dimension(const struct ModringGroup *group,
                                     int64_t k,
                                     bool cusp,
                                     const struct ModringWeight1 *w1,
                                     uint64_t *out);

/**
 * Decompose into blocks named `omega`, `level2`, `level3`, `level4` or
 * `level5or6`. A null `w1` means the builtin table.
 *
 * # Safety
 * `group` must be a live handle, `block` a NUL-terminated string, `w1`
 * null or live, `out` valid.
 */
enum ModringStatus modring_decompose(const struct ModringGroup *group,
                                     const char *block,
                                     const struct ModringWeight1 *w1,
                                     struct ModringSequence **out);

/**
 * Number of shifts, i.e. the block's maximal shift plus one.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
size_t modring_sequence_len(const struct ModringSequence *seq);

/**
 * Multiplicity at `shift`; zero outside the sequence.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
uint64_t modring_sequence_get(const struct ModringSequence *seq, int64_t shift);

/**
 * # Safety
 * `seq` must be null or a handle from this library, not yet freed.
 */
void modring_sequence_free(struct ModringSequence *seq);

/**
 * Γ₁(n) decomposition table for `from <= n <= to`; flavor `omega`,
 * `level2` or `level3`.
 *
 * # Safety
 * `flavor` must be a NUL-terminated string, `w1` null or live, `out` valid.
 */
enum ModringStatus modring_table(const char *flavor,
                                 uint64_t from,
                                 uint64_t to,
                                 enum ModringTableFormat format,
                                 const struct ModringWeight1 *w1,
                                 char **out);

/**
 * h⁰(O(m)) on P(a, b), or h¹ when `h1` is true.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ModringStatus modring_wproj(uint64_t a, uint64_t b, int64_t m, bool h1, uint64_t *out);

/**
 * Hasse-lift report as JSON. Returns `CheckFailed` (with the report still
 * written) when the congruence fails.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ModringStatus modring_hasse_lift(uint64_t p, size_t precision, char **out);

/**
 * Run the suite `all`, `decomp`, `wproj`, `ringalg` or `hasse`, writing a
 * one-line-per-check report. `overrides` may be null; otherwise it holds
 * weight-1 override records.
 *
 * # Safety
 * `suite` must be a NUL-terminated string, `overrides` null or one, `out` valid.
 */
enum ModringStatus modring_verify(const char *suite, const char *overrides, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODRING_H */
