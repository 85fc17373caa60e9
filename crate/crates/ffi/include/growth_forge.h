#ifndef GROWTH_FORGE_H
#define GROWTH_FORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GfStatus {
  GF_STATUS_OK = 0,
  GF_STATUS_NULL_POINTER = 1,
  GF_STATUS_INVALID_ARGUMENT = 2,
  GF_STATUS_PARSE = 3,
  GF_STATUS_BUDGET = 4,
  GF_STATUS_PANIC = 5,
} GfStatus;

/**
 * An element of the group `G` in normal form.
 */
typedef struct GfGroupElement GfGroupElement;

/**
 * An infinite word `v∞` for a fixed run sequence.
 */
typedef struct GfWord GfWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Free with `gf_string_free`.
 */
char *gf_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void gf_string_free(char *s);

/**
 * Creates a word from a sequence spec such as `tower`, `geo:2` or `list:2,5,9`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum GfStatus gf_word_new(const char *spec, struct GfWord **out);

/**
 * # Safety
 * `word` must be NULL or a handle from `gf_word_new`, not yet freed.
 */
void gf_word_free(struct GfWord *word);

/**
 * `|v_k|` in decimal or tower notation.
 *
 * # Safety
 * `word` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_word_length(const struct GfWord *word, uint32_t k, char **out);

/**
 * `v_k` in run notation, e.g. `x y^2 x`.
 *
 * # Safety
 * `word` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_word_prefix(const struct GfWord *word, uint32_t k, char **out);

/**
 * # Safety
 * `word` must be a live handle, `factor` a NUL-terminated run-notation word, `out` writable.
 */
enum GfStatus gf_word_is_factor(const struct GfWord *word, const char *factor, bool *out);

/**
 * Number of distinct factors of length `l`.
 *
 * # Safety
 * `word` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_word_complexity(const struct GfWord *word, uint64_t l, uint64_t *out);

/**
 * Largest number of `x`s in a factor of length `l`.
 *
 * # Safety
 * `word` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_word_max_x(const struct GfWord *word, uint64_t l, uint64_t *out);

/**
 * `dim V^n` for the algebra `B` over the rationals.
 *
 * # Safety
 * `word` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_b_dim(const struct GfWord *word, uint64_t n, uint64_t *out);

/**
 * Parses a group word such as `s(1) t(0)^-1 u^2`.
 *
 * # Safety
 * `word` must be a NUL-terminated string; `out` must be writable.
 */
enum GfStatus gf_group_parse(const char *word, struct GfGroupElement **out);

/**
 * # Safety
 * `g` must be NULL or a handle from this library, not yet freed.
 */
void gf_group_free(struct GfGroupElement *g);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum GfStatus gf_group_multiply(const struct GfGroupElement *a,
                                const struct GfGroupElement *b,
                                struct GfGroupElement **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_group_inverse(const struct GfGroupElement *a, struct GfGroupElement **out);

/**
 * `u^k g u^-k`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_group_conjugate(const struct GfGroupElement *a,
                                 int64_t k,
                                 struct GfGroupElement **out);

/**
 * `a b a^-1 b^-1`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum GfStatus gf_group_commutator(const struct GfGroupElement *a,
                                  const struct GfGroupElement *b,
                                  struct GfGroupElement **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_group_is_central(const struct GfGroupElement *a, bool *out);

/**
 * Normal form text, `e` for the identity.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_group_to_string(const struct GfGroupElement *a, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROWTH_FORGE_H */
