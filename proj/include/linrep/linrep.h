/* SPDX-License-Identifier: Apache-2.0 */
#ifndef LINREP_LINREP_H
#define LINREP_LINREP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LINREP_BUILDING_DLL)
#    define LINREP_API __declspec(dllexport)
#  else
#    define LINREP_API __declspec(dllimport)
#  endif
#else
#  define LINREP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returns one of these. */
enum {
  LINREP_OK = 0,
  LINREP_ERR_PARSE = 1,
  LINREP_ERR_INVALID_ARGUMENT = 2,
  LINREP_ERR_NOT_PRIMITIVE = 3,
  LINREP_ERR_NOT_PARTITION_REGULAR = 4,
  LINREP_ERR_MIXED_SIGN_REQUIRED = 5,
  LINREP_ERR_SEARCH_SPACE_TOO_LARGE = 6,
  LINREP_ERR_ARITY_MISMATCH = 7,
  LINREP_ERR_BUDGET_EXCEEDED = 8,
  LINREP_ERR_RETRY_EXHAUSTED = 9,
  LINREP_ERR_INSUFFICIENT_PAIRS = 10,
  LINREP_ERR_SEQUENCE_EXHAUSTED = 11,
  LINREP_ERR_SUPPLY_EXHAUSTED = 12,
  LINREP_ERR_WINDOW_INSUFFICIENT = 13,
  LINREP_ERR_BOUNDED_TARGET = 14,
  LINREP_ERR_PRECONDITION = 15,
  LINREP_ERR_VERIFICATION_FAILED = 16,
  LINREP_ERR_BUFFER_TOO_SMALL = 100,
  LINREP_ERR_NULL_ARGUMENT = 101,
  LINREP_ERR_INTERNAL = 102
};

typedef struct linrep_form linrep_form;
typedef struct linrep_set linrep_set;
typedef struct linrep_target linrep_target;
typedef struct linrep_result linrep_result;

/* Static name of a status code, e.g. "RetryExhausted". */
LINREP_API const char* linrep_status_name(int status);
/* Message of the last failing call on this thread ("" if none). */
LINREP_API const char* linrep_last_error(void);
LINREP_API const char* linrep_version(void);

/*
 * Text outputs use a size-query protocol: pass buf == NULL (or a too small
 * *len) to receive LINREP_ERR_BUFFER_TOO_SMALL with *len set to the size
 * needed including the terminating NUL; call again with a large enough
 * buffer. On success *len holds the number of bytes written including NUL.
 */

LINREP_API int linrep_form_parse(const char* text, linrep_form** out);
LINREP_API void linrep_form_free(linrep_form* form);
LINREP_API int linrep_form_arity(const linrep_form* form, size_t* out);
/* Primitivity, partition regularity, certificates and witnesses as JSON. */
LINREP_API int linrep_form_analyze(const linrep_form* form, char* buf, size_t* len);

/* JSON array of integers (decimal strings or numbers). */
LINREP_API int linrep_set_from_json(const char* json, linrep_set** out);
LINREP_API void linrep_set_free(linrep_set* set);
LINREP_API int linrep_set_size(const linrep_set* set, size_t* out);
LINREP_API int linrep_set_to_json(const linrep_set* set, char* buf, size_t* len);

/* {"window": [lo, hi], "values": {...}, "default": c | "inf", "zeros": [...]} */
LINREP_API int linrep_target_from_json(const char* json, linrep_target** out);
LINREP_API void linrep_target_free(linrep_target* target);

/* Representation counts of a set as {"counts": {...}, "support_min", "support_max"}. */
LINREP_API int linrep_rep_function(const linrep_form* form, const linrep_set* set,
                                   uint64_t budget, char* buf, size_t* len);

typedef struct linrep_build_options {
  size_t steps;
  const char* d0;         /* decimal; NULL for 1 */
  const char* growth0;    /* decimal; NULL for the form's default */
  const char* half_line;  /* decimal; NULL for a whole-line build */
  const char* ratio;      /* decimal; NULL for 24 (unbounded difference case) */
  uint64_t budget;        /* tuple budget per enumeration */
  size_t retry_cap;
} linrep_build_options;

LINREP_API void linrep_build_options_init(linrep_build_options* opts);

/* Unique representation basis for a primitive form. */
LINREP_API int linrep_build_unique(const linrep_form* form, const linrep_build_options* opts,
                                   linrep_result** out);
/* Set whose representation function grows towards the target. */
LINREP_API int linrep_build_target(const linrep_form* form, const linrep_target* target,
                                   const linrep_build_options* opts, linrep_result** out);
/* x1 - x2, targets with an infinite value. sequence_json is a JSON array of
 * positive integers; periodic != 0 repeats it forever. */
LINREP_API int linrep_build_diff_infinite(const linrep_target* target,
                                          const char* sequence_json, int periodic,
                                          const linrep_build_options* opts,
                                          linrep_result** out);
/* x1 - x2, finite targets, geometric plentiful supply. */
LINREP_API int linrep_build_diff_unbounded(const linrep_target* target,
                                           const linrep_build_options* opts,
                                           linrep_result** out);
/* Checks the set against the target; target NULL means f = 1 everywhere. */
LINREP_API int linrep_verify(const linrep_form* form, const linrep_set* set,
                             const linrep_target* target, uint64_t budget,
                             linrep_result** out);
/* Gaps between the pairs (x, x - n) of the set, checked plentiful. */
LINREP_API int linrep_extract(const linrep_set* set, const char* n, size_t length,
                              uint64_t budget, linrep_result** out);

LINREP_API void linrep_result_free(linrep_result* result);
/* 1 when every checked invariant held. */
LINREP_API int linrep_result_verified(const linrep_result* result, int* ok);
/* The resulting set (the input set for verify), JSON array. */
LINREP_API int linrep_result_set(const linrep_result* result, char* buf, size_t* len);
/* One JSON object per step; empty for verify and extract. */
LINREP_API int linrep_result_trace(const linrep_result* result, char* buf, size_t* len);
/* Verification report, JSON object. */
LINREP_API int linrep_result_report(const linrep_result* result, char* buf, size_t* len);

#ifdef __cplusplus
}
#endif

#endif
