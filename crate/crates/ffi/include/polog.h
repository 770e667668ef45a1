#ifndef POLOG_H
#define POLOG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PologStatus {
  POLOG_STATUS_OK = 0,
  POLOG_STATUS_NULL_POINTER = 1,
  POLOG_STATUS_INVALID_UTF8 = 2,
  POLOG_STATUS_PARSE = 3,
  POLOG_STATUS_INVALID = 4,
  POLOG_STATUS_CAP_EXCEEDED = 5,
  POLOG_STATUS_OUT_OF_RANGE = 6,
  POLOG_STATUS_PANIC = 7,
} PologStatus;

typedef enum PologEngine {
  POLOG_ENGINE_ORACLE = 0,
  POLOG_ENGINE_SEMANTIC = 1,
  POLOG_ENGINE_CONS = 2,
  POLOG_ENGINE_KER = 3,
  POLOG_ENGINE_ALT = 4,
} PologEngine;

/**
 * A loaded knowledge base.
 */
typedef struct PologKb PologKb;

/**
 * The kernels of a knowledge base, with search statistics.
 */
typedef struct PologKer PologKer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *polog_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void polog_string_free(char *s);

/**
 * Parses a base in the `.polog` text format.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` writable.
 */
enum PologStatus polog_kb_load(const char *source, struct PologKb **out);

/**
 * # Safety
 * `kb` must come from [`polog_kb_load`] and not have been freed.
 */
void polog_kb_free(struct PologKb *kb);

/**
 * Number of formulas, or 0 for a null handle.
 *
 * # Safety
 * `kb` must be null or a live handle.
 */
size_t polog_kb_len(const struct PologKb *kb);

/**
 * The base in `.polog` text form.
 *
 * # Safety
 * `kb` must be a live handle and `out` writable.
 */
enum PologStatus polog_kb_write(const struct PologKb *kb, char **out);

/**
 * Decides whether `query` follows from the base, using `engine` and the
 * default resource caps.
 *
 * # Safety
 * `kb` must be a live handle, `query` a NUL-terminated string and
 * `entailed` writable.
 */
enum PologStatus polog_kb_entails(const struct PologKb *kb,
                                  const char *query,
                                  enum PologEngine engine,
                                  bool *entailed);

/**
 * Computes the kernels of the base.
 *
 * # Safety
 * `kb` must be a live handle and `out` writable.
 */
enum PologStatus polog_ker_build(const struct PologKb *kb, struct PologKer **out);

/**
 * # Safety
 * `ker` must come from [`polog_ker_build`] and not have been freed.
 */
void polog_ker_free(struct PologKer *ker);

/**
 * Number of kernels, or 0 for a null handle.
 *
 * # Safety
 * `ker` must be null or a live handle.
 */
size_t polog_ker_count(const struct PologKer *ker);

/**
 * Consistency tests made by the search, not counting the initial test of
 * the whole base.
 *
 * # Safety
 * `ker` must be null or a live handle.
 */
size_t polog_ker_branch_tests(const struct PologKer *ker);

/**
 * The labels of kernel `index`, sorted and separated by `,`.
 *
 * # Safety
 * `ker` must be a live handle and `out` writable.
 */
enum PologStatus polog_ker_labels(const struct PologKer *ker, size_t index, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLOG_H */
