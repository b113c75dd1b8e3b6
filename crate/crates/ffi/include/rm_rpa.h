#ifndef RM_RPA_H
#define RM_RPA_H

#include <stddef.h>
#include <stdint.h>

typedef enum RpaStatus {
  RPA_STATUS_OK = 0,
  RPA_STATUS_NULL_POINTER = 1,
  RPA_STATUS_INVALID_ARGUMENT = 2,
  RPA_STATUS_LENGTH_MISMATCH = 3,
  RPA_STATUS_RESOURCE = 4,
  RPA_STATUS_PANIC = 5,
} RpaStatus;

typedef enum RpaVariant {
  RPA_VARIANT_RPA = 0,
  RPA_VARIANT_SRPA = 1,
  RPA_VARIANT_SDSS = 2,
} RpaVariant;

typedef enum RpaSchedule {
  RPA_SCHEDULE_FULL = 0,
  RPA_SCHEDULE_TOP_ONLY = 1,
} RpaSchedule;

/**
 * An RM(m, r) code.
 */
typedef struct RpaCode RpaCode;

/**
 * A decoder configuration.
 */
typedef struct RpaDecoder RpaDecoder;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *rpa_last_error(void);

/**
 * Creates RM(m, r) in `*out`.
 *
 * # Safety
 * `out` must be null or valid for a pointer write.
 */
enum RpaStatus rpa_code_new(uint32_t m, uint32_t r, struct RpaCode **out);

/**
 * # Safety
 * `code` must be null or a handle from [`rpa_code_new`] not yet freed.
 */
void rpa_code_free(struct RpaCode *code);

/**
 * Block length, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t rpa_code_n(const struct RpaCode *code);

/**
 * Dimension, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t rpa_code_k(const struct RpaCode *code);

/**
 * Encodes `k` message bits (0/1 bytes) into `n` codeword bytes.
 *
 * # Safety
 * The buffers must be valid for the stated lengths.
 */
enum RpaStatus rpa_code_encode(const struct RpaCode *code,
                               const uint8_t *message,
                               size_t message_len,
                               uint8_t *codeword,
                               size_t codeword_len);

/**
 * Creates a decoder with the variant's default schedule and θ.
 *
 * `variant` takes an [`RpaVariant`] value. `r_p` is ignored for RPA and `r_q` is only used by SDSS.
 *
 * # Safety
 * `out` must be null or valid for a pointer write.
 */
enum RpaStatus rpa_decoder_new(uint32_t variant,
                               uint64_t r_p_num,
                               uint64_t r_p_den,
                               uint64_t r_q_num,
                               uint64_t r_q_den,
                               struct RpaDecoder **out);

/**
 * # Safety
 * `decoder` must be null or a handle from [`rpa_decoder_new`] not yet freed.
 */
void rpa_decoder_free(struct RpaDecoder *decoder);

/**
 * `schedule` takes an [`RpaSchedule`] value.
 *
 * # Safety
 * `decoder` must be null or a live handle.
 */
enum RpaStatus rpa_decoder_set_schedule(struct RpaDecoder *decoder, uint32_t schedule);

/**
 * # Safety
 * `decoder` must be null or a live handle.
 */
enum RpaStatus rpa_decoder_set_theta(struct RpaDecoder *decoder, double theta);

/**
 * Decodes `n` LLRs.
 *
 * Randomness comes from stream `stream_id` of `seed`, so equal arguments give
 * equal results. `message` may be null when `message_len` is 0 and
 * `fht_count` may be null.
 *
 * # Safety
 * Handles must be live and the buffers valid for the stated lengths.
 */
enum RpaStatus rpa_decode(const struct RpaDecoder *decoder,
                          const struct RpaCode *code,
                          const double *llr,
                          size_t llr_len,
                          uint64_t seed,
                          uint64_t stream_id,
                          uint8_t *codeword,
                          size_t codeword_len,
                          uint8_t *message,
                          size_t message_len,
                          uint64_t *fht_count);

/**
 * Worst-case FHT decodings per codeword for this decoder on `code`.
 *
 * # Safety
 * Handles must be live and `out` valid for a write.
 */
enum RpaStatus rpa_count_fht_bound(const struct RpaDecoder *decoder,
                                   const struct RpaCode *code,
                                   uint64_t *out);

/**
 * `1 − measured_mean / reference_bound`.
 */
double rpa_complexity_gain(double measured_mean, uint64_t reference_bound);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RM_RPA_H */
