#ifndef BLOCKENT_H
#define BLOCKENT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum {
  BLOCKENT_STATUS_OK = 0,
  BLOCKENT_STATUS_NULL_POINTER = 1,
  BLOCKENT_STATUS_INVALID_UTF8 = 2,
  BLOCKENT_STATUS_EMPTY_SAMPLE = 3,
  BLOCKENT_STATUS_DEGENERATE_STATS = 4,
  BLOCKENT_STATUS_EMPTY_PARTITION = 5,
  BLOCKENT_STATUS_INVALID_ARGUMENT = 6,
  BLOCKENT_STATUS_NO_CROSSING = 7,
  BLOCKENT_STATUS_PROFILE_TOO_SHORT = 8,
  BLOCKENT_STATUS_ABSENT = 9,
  BLOCKENT_STATUS_BUFFER_TOO_SMALL = 10,
  BLOCKENT_STATUS_INTERNAL = 99,
} BlockentStatus;

/**
 * Shift-averaged block entropies `H_1 ..= H_nmax` of one sample.
 */
typedef struct BlockentProfile BlockentProfile;

/**
 * A normalized text sample.
 */
typedef struct BlockentSample BlockentSample;

typedef struct {
  size_t char_count;
  size_t alphabet_size;
  size_t word_count;
  size_t distinct_word_count;
  double wdr;
  double alpha;
} BlockentStats;

typedef struct {
  double n_z;
  double h_nz;
  double h_l;
  double redundancy;
} BlockentRate;

typedef struct {
  /**
   * Zero when no equiprobable block length was found up to the ceiling.
   */
  bool has_n_aep;
  size_t n_aep;
  size_t n_max_checked;
  size_t longest_repeat;
} BlockentEquiprob;

typedef struct {
  double d_aep;
  double log2_typical;
} BlockentWordDistance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *blockent_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *blockent_version(void);

/**
 * Decodes `len` bytes of UTF-8 and normalizes them into a sample.
 *
 * # Safety
 * `bytes` must point to `len` readable bytes, `id` must be NUL-terminated,
 * and `out_sample` must be writable.
 */
BlockentStatus blockent_sample_load(const uint8_t *bytes,
                                    size_t len,
                                    const char *id,
                                    BlockentSample **out_sample);

/**
 * # Safety
 * `sample` must be NULL or a handle from [`blockent_sample_load`] not yet freed.
 */
void blockent_sample_free(BlockentSample *sample);

/**
 * Number of characters after normalization, or 0 for NULL.
 *
 * # Safety
 * `sample` must be NULL or a live handle.
 */
size_t blockent_sample_char_count(const BlockentSample *sample);

/**
 * # Safety
 * `sample` must be a live handle and `out_stats` writable.
 */
BlockentStatus blockent_sample_stats(const BlockentSample *sample, BlockentStats *out_stats);

/**
 * Shift-averaged block entropy `H_n`. When `out_shifts` is not NULL it
 * receives the `n` per-shift entropies and `shifts_len` must be at least `n`.
 *
 * # Safety
 * `sample` must be a live handle, `out_mean` writable and `out_shifts`
 * NULL or writable for `shifts_len` doubles.
 */
BlockentStatus blockent_block_entropy(const BlockentSample *sample,
                                      size_t n,
                                      double *out_mean,
                                      double *out_shifts,
                                      size_t shifts_len);

/**
 * Computes `H_1 ..= H_nmax`.
 *
 * # Safety
 * `sample` must be a live handle and `out_profile` writable.
 */
BlockentStatus blockent_profile_new(const BlockentSample *sample,
                                    size_t n_max,
                                    BlockentProfile **out_profile);

/**
 * # Safety
 * `profile` must be NULL or a handle from [`blockent_profile_new`] not yet freed.
 */
void blockent_profile_free(BlockentProfile *profile);

/**
 * Largest block length held by the profile, or 0 for NULL.
 *
 * # Safety
 * `profile` must be NULL or a live handle.
 */
size_t blockent_profile_n_max(const BlockentProfile *profile);

/**
 * `H_n` from the profile, `1 <= n <= n_max`.
 *
 * # Safety
 * `profile` must be a live handle and `out_h` writable.
 */
BlockentStatus blockent_profile_h(const BlockentProfile *profile, size_t n, double *out_h);

/**
 * Zero crossing of the conditional entropy over orders `1..=cond_max`,
 * entropy rate and redundancy.
 *
 * # Safety
 * `profile` must be a live handle and `out_rate` writable.
 */
BlockentStatus blockent_rate_estimate(const BlockentProfile *profile,
                                      size_t alphabet_size,
                                      size_t cond_max,
                                      BlockentRate *out_rate);

/**
 * Smallest block length from which every partition is made of distinct
 * blocks, searched up to `ceiling`.
 *
 * # Safety
 * `sample` must be a live handle and `out_result` writable.
 */
BlockentStatus blockent_find_n_aep(const BlockentSample *sample,
                                   size_t ceiling,
                                   BlockentEquiprob *out_result);

/**
 * Word distance `n_aep / (alpha + 1)` and `log2` of the typical-set size.
 *
 * # Safety
 * `out_distance` must be writable.
 */
BlockentStatus blockent_word_distance(size_t n_aep,
                                      double alpha,
                                      double h_l,
                                      BlockentWordDistance *out_distance);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOCKENT_H */
