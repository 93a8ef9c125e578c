/*
 * shardkit C API.
 *
 * Handles are opaque and owned by the caller; release each with its _free
 * function. Every call returns a shardkit_status. On failure a description
 * is available from shardkit_last_error() on the same thread until the next
 * API call. Strings returned through char** are heap-allocated and must be
 * released with shardkit_string_free().
 */
#ifndef SHARDKIT_H_
#define SHARDKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SHARDKIT_API __declspec(dllexport)
#else
#define SHARDKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shardkit_status {
  SHARDKIT_OK = 0,
  SHARDKIT_CHECK_FAILED = 1,
  SHARDKIT_ERR_PARSE = 2,
  SHARDKIT_ERR_PARAMETER = 3,
  SHARDKIT_ERR_CRUCIAL_MISSING = 4,
  SHARDKIT_ERR_INSUFFICIENT_SHARES = 5,
  SHARDKIT_ERR_INCONSISTENT_SHARES = 6,
  SHARDKIT_ERR_ENUMERATION_LIMIT = 7,
  SHARDKIT_ERR_IO = 8,
  SHARDKIT_ERR_INTERNAL = 9,
  SHARDKIT_ERR_MISMATCH = 10,
  SHARDKIT_ERR_INVALID_ARGUMENT = 11
} shardkit_status;

typedef struct shardkit_scheme shardkit_scheme;
typedef struct shardkit_formula shardkit_formula;
typedef struct shardkit_bundle shardkit_bundle;

SHARDKIT_API const char* shardkit_status_name(shardkit_status status);
SHARDKIT_API const char* shardkit_last_error(void);
SHARDKIT_API void shardkit_string_free(char* s);
/* 2^61 - 1 */
SHARDKIT_API uint64_t shardkit_default_prime(void);

/* ---- schemes ---------------------------------------------------------- */

SHARDKIT_API shardkit_status shardkit_scheme_parse(const char* text, shardkit_scheme** out);
SHARDKIT_API void shardkit_scheme_free(shardkit_scheme* scheme);
SHARDKIT_API shardkit_status shardkit_scheme_id(const shardkit_scheme* scheme, uint64_t* out);
SHARDKIT_API shardkit_status shardkit_scheme_format(const shardkit_scheme* scheme, char** out_text);
/* *out = 1 when the root's children are all leaves (no compartments). */
SHARDKIT_API shardkit_status shardkit_scheme_is_flat(const shardkit_scheme* scheme, int* out);
SHARDKIT_API shardkit_status shardkit_scheme_authorized(const shardkit_scheme* scheme, const char* const* holders,
                                                        size_t count, int* out);

/* ---- dealing and reconstruction ---------------------------------------- */

/* prime = 0 selects the default prime; seed = NULL draws OS entropy. */
SHARDKIT_API shardkit_status shardkit_deal(const shardkit_scheme* scheme, uint64_t secret, uint64_t prime,
                                           const uint64_t* seed, shardkit_bundle** out);
SHARDKIT_API void shardkit_bundle_free(shardkit_bundle* bundle);
SHARDKIT_API size_t shardkit_bundle_holder_count(const shardkit_bundle* bundle);
/* Holders in lexicographic order; NULL when index is out of range. */
SHARDKIT_API const char* shardkit_bundle_holder(const shardkit_bundle* bundle, size_t index);
SHARDKIT_API size_t shardkit_bundle_total_shares(const shardkit_bundle* bundle);
/* Share records of one holder, one per line, each terminated by '\n'. */
SHARDKIT_API shardkit_status shardkit_bundle_records(const shardkit_bundle* bundle, const char* holder,
                                                     char** out_text);
/* Public metadata: p, scheme id and the holder -> leaf path map. */
SHARDKIT_API shardkit_status shardkit_bundle_metadata(const shardkit_bundle* bundle, char** out_text);

/* records_text holds share records, one per line. */
SHARDKIT_API shardkit_status shardkit_reconstruct(const shardkit_scheme* scheme, const char* records_text,
                                                  uint64_t* secret_out);

/* ---- access structures -------------------------------------------------- */

SHARDKIT_API shardkit_status shardkit_formula_parse(const char* text, shardkit_formula** out);
SHARDKIT_API void shardkit_formula_free(shardkit_formula* formula);

typedef struct shardkit_equivalence {
  int equivalent;
  uint64_t subsets_checked;
  /* Comma-separated ids of the first differing subset, or NULL. */
  char* counterexample;
} shardkit_equivalence;

SHARDKIT_API shardkit_status shardkit_verify(const shardkit_scheme* scheme, const shardkit_formula* formula,
                                             shardkit_equivalence* out);
SHARDKIT_API void shardkit_equivalence_clear(shardkit_equivalence* result);

#define SHARDKIT_MAX_PERFECTNESS_PRIME 13

typedef struct shardkit_perfectness {
  uint64_t p;
  size_t dimension;
  int authorized;
  uint64_t reference_secret;
  uint64_t counts[SHARDKIT_MAX_PERFECTNESS_PRIME];
  size_t counts_len;
  int uniform;
  int point_mass;
  uint64_t views;
  int every_view_uniform;
  int every_view_point_mass;
  /* uniform for unauthorized subsets, point mass for authorized ones, over every view */
  int holds;
} shardkit_perfectness;

SHARDKIT_API shardkit_status shardkit_check_perfectness(const shardkit_scheme* scheme, uint64_t prime,
                                                  const char* const* subset, size_t count, uint64_t reference_seed,
                                                  shardkit_perfectness* out);

typedef struct shardkit_compile_report {
  int flattened;
  int ideal;
  size_t total_shares;
  size_t max_shares_per_holder;
  size_t clauses;
  size_t root_points;
  /* Scheme in the scheme language; release with shardkit_compile_report_clear. */
  char* scheme_text;
} shardkit_compile_report;

SHARDKIT_API shardkit_status shardkit_compile(const shardkit_formula* formula, shardkit_compile_report* out);
SHARDKIT_API void shardkit_compile_report_clear(shardkit_compile_report* report);

typedef struct shardkit_counts {
  size_t clauses;
  size_t naive;
  size_t factored;
  size_t compiled;
} shardkit_counts;

SHARDKIT_API shardkit_status shardkit_count(const shardkit_formula* formula, shardkit_counts* out);

#ifdef __cplusplus
}
#endif

#endif /* SHARDKIT_H_ */
