#ifndef MDSFORGE_H
#define MDSFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MdsStatus {
  MDS_STATUS_OK = 0,
  MDS_STATUS_NULL_POINTER = 1,
  MDS_STATUS_INVALID_UTF8 = 2,
  MDS_STATUS_INVALID_PARAMS = 3,
  MDS_STATUS_BOUND_VIOLATED = 4,
  MDS_STATUS_CONDITION_VIOLATED = 5,
  MDS_STATUS_TOO_LARGE = 6,
  MDS_STATUS_DIMENSION_MISMATCH = 7,
  MDS_STATUS_TOO_MANY_ERASURES = 8,
  MDS_STATUS_INCONSISTENT = 9,
  MDS_STATUS_FORMAT = 10,
  MDS_STATUS_INTERNAL = 11,
  MDS_STATUS_PANIC = 12,
} MdsStatus;

// Opaque evaluation code.
typedef struct MdsCode MdsCode;

// Opaque finite field.
typedef struct MdsField MdsField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next failing call on the same thread; do not free.
const char *mds_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void mds_string_free(char *s);

// Builds GF(p^m) with the library's default modulus.
//
// # Safety
// `out` must be a valid pointer.
enum MdsStatus mds_field_new(uint64_t p, uint32_t m, struct MdsField **out);

// # Safety
// `field` must come from [`mds_field_new`] and not have been freed.
void mds_field_free(struct MdsField *field);

// Digits per element (the extension degree m), or 0 for null.
//
// # Safety
// `field` must be null or a live handle.
size_t mds_field_degree(const struct MdsField *field);

// out = a·b, each an array of m digits.
//
// # Safety
// `a`, `b` and `out` must each point to m digits.
enum MdsStatus mds_field_mul(const struct MdsField *field,
                             const uint64_t *a,
                             const uint64_t *b,
                             uint64_t *out);

// Parses a code file (JSON text).
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum MdsStatus mds_code_from_json(const char *json, struct MdsCode **out);

// Builds a family instance; `params_json` is an object of integer
// parameters such as `{"p":13,"k":3,"n":6}`.
//
// # Safety
// Both strings must be nul-terminated and `out` a valid pointer.
enum MdsStatus mds_code_construct(const char *family,
                                  const char *params_json,
                                  struct MdsCode **out);

// # Safety
// `code` must come from this library and not have been freed.
void mds_code_free(struct MdsCode *code);

// Canonical code-file JSON.
//
// # Safety
// `code` must be a live handle and `out` a valid pointer.
enum MdsStatus mds_code_to_json(const struct MdsCode *code, char **out);

// Code length, or 0 for null.
//
// # Safety
// `code` must be null or a live handle.
size_t mds_code_n(const struct MdsCode *code);

// Code dimension, or 0 for null.
//
// # Safety
// `code` must be null or a live handle.
size_t mds_code_k(const struct MdsCode *code);

// Digits per symbol, or 0 for null.
//
// # Safety
// `code` must be null or a live handle.
size_t mds_code_degree(const struct MdsCode *code);

// Certificate JSON; `min_distance` nonzero also enumerates all codewords.
//
// # Safety
// `code` must be a live handle and `out` a valid pointer.
enum MdsStatus mds_code_certify(const struct MdsCode *code, int32_t min_distance, char **out);

// Encodes k symbols (`msg_len` = k·m digits) into n symbols (`out_len` = n·m).
//
// # Safety
// The buffers must hold the stated number of digits.
enum MdsStatus mds_code_encode(const struct MdsCode *code,
                               const uint64_t *msg,
                               size_t msg_len,
                               uint64_t *out,
                               size_t out_len);

// Recovers the message from n received symbols (`received_len` = n·m
// digits); `erased[i]` nonzero marks symbol i as erased and its digits are
// ignored. Writes k·m digits to `out`.
//
// # Safety
// `received` must hold `received_len` digits, `erased` n bytes and `out`
// `out_len` digits.
enum MdsStatus mds_code_decode(const struct MdsCode *code,
                               const uint64_t *received,
                               size_t received_len,
                               const uint8_t *erased,
                               uint64_t *out,
                               size_t out_len);

// Counting bound; `q_decimal` is the field size in decimal, `variant` is
// 0 for general and 1 for Vieta. Writes `{"holds":..,"lhs":"..","rhs":".."}`.
//
// # Safety
// `q_decimal` must be nul-terminated and `out` a valid pointer.
enum MdsStatus mds_bound(const char *q_decimal,
                         uint64_t n,
                         uint64_t k,
                         uint64_t m_i,
                         uint32_t variant,
                         char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MDSFORGE_H */
