#ifndef TWISTVERIFY_H
#define TWISTVERIFY_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bit for the K-theory representation in `tv_verify`'s mask.
 */
#define TV_REP_KTHEORY 1

/**
 * Bit for the sheaf representation in `tv_verify`'s mask.
 */
#define TV_REP_SHEAF 2

typedef enum TvStatus {
  TV_STATUS_OK = 0,
  TV_STATUS_NULL_POINTER = 1,
  TV_STATUS_INVALID_UTF8 = 2,
  TV_STATUS_PARSE_ERROR = 3,
  TV_STATUS_INVALID_ARGUMENT = 4,
  /**
   * A word could not be evaluated inside the calculus.
   */
  TV_STATUS_STUCK = 5,
  TV_STATUS_MISMATCH = 6,
  TV_STATUS_EXHAUSTED = 7,
  TV_STATUS_BUFFER_TOO_SMALL = 8,
  TV_STATUS_PANIC = 9,
} TvStatus;

/**
 * An object of the derived category.
 */
typedef struct TvObject TvObject;

/**
 * The outcome of a verification suite.
 */
typedef struct TvReport TvReport;

/**
 * A parsed word.
 */
typedef struct TvWord TvWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *tv_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void tv_string_free(char *s);

/**
 * Parses a word such as `"a b1 a' t"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TvStatus tv_word_parse(const char *text, struct TvWord **out);

/**
 * # Safety
 * `w` must be NULL or a handle from [`tv_word_parse`], not yet freed.
 */
void tv_word_free(struct TvWord *w);

/**
 * Number of letters, or 0 for NULL.
 *
 * # Safety
 * `w` must be NULL or a live word handle.
 */
uintptr_t tv_word_len(const struct TvWord *w);

/**
 * Parses an object such as `"O([1,0])[2]"` or `"k(1)"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TvStatus tv_object_parse(const char *text, struct TvObject **out);

/**
 * # Safety
 * `o` must be NULL or a live object handle.
 */
void tv_object_free(struct TvObject *o);

/**
 * Text form of an object; free with [`tv_string_free`]. NULL on NULL input.
 *
 * # Safety
 * `o` must be NULL or a live object handle.
 */
char *tv_object_to_string(const struct TvObject *o);

/**
 * `h^0` and `h^1` of `O(D)` for `D = coeffs[0..n]`.
 *
 * # Safety
 * `coeffs` must point to `n` readable values; `h0` and `h1` must be valid.
 */
enum TvStatus tv_cohomology(const int64_t *coeffs, uintptr_t n, uint64_t *h0, uint64_t *h1);

/**
 * Applies `w` to `obj` on `X_n`. Returns `Stuck` (with a diagnostic in
 * [`tv_last_error`]) when a letter does not reduce.
 *
 * # Safety
 * Handles must be live and `out` valid.
 */
enum TvStatus tv_act(uintptr_t n,
                     const struct TvWord *w,
                     const struct TvObject *obj,
                     struct TvObject **out);

/**
 * Writes the `(n+1)×(n+1)` K-theory matrix of `w`, row-major, into `out`.
 *
 * # Safety
 * `w` must be live and `out` must have room for `out_len` values.
 */
enum TvStatus tv_word_matrix(uintptr_t n, const struct TvWord *w, int64_t *out, uintptr_t out_len);

/**
 * Runs a verification suite. `families` is a comma separated list or
 * `"all"`; `rep_mask` combines `TV_REP_KTHEORY` and `TV_REP_SHEAF`; a
 * `budget` of 0 selects the default. The report is written to `out` even
 * when the suite does not verify; the return value is its verdict.
 *
 * # Safety
 * `families` must be a NUL-terminated string and `out` valid.
 */
enum TvStatus tv_verify(uintptr_t n,
                        const char *families,
                        uint32_t rep_mask,
                        uintptr_t budget,
                        struct TvReport **out);

/**
 * Verdict of a report: `Ok`, `Mismatch` or `Exhausted`.
 *
 * # Safety
 * `r` must be a live report handle.
 */
enum TvStatus tv_report_verdict(const struct TvReport *r);

/**
 * Number of per-object records.
 *
 * # Safety
 * `r` must be NULL or a live report handle.
 */
uintptr_t tv_report_len(const struct TvReport *r);

/**
 * The report as a JSON document; free with [`tv_string_free`].
 *
 * # Safety
 * `r` must be NULL or a live report handle.
 */
char *tv_report_to_json(const struct TvReport *r);

/**
 * # Safety
 * `r` must be NULL or a live report handle.
 */
void tv_report_free(struct TvReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTVERIFY_H */
