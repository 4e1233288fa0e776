#ifndef LEIBNIZ_LEIBNIZ_H
#define LEIBNIZ_LEIBNIZ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LZ_API __declspec(dllexport)
#else
#define LZ_API __attribute__((visibility("default")))
#endif

typedef enum lz_status {
  LZ_OK = 0,
  LZ_ERR_DIMENSION = 1,
  LZ_ERR_NOT_IN_CLASS = 2,
  LZ_ERR_INCONSISTENT_FORM = 3,
  LZ_ERR_UNSUPPORTED_FIELD = 4,
  LZ_ERR_NOT_AN_IDEAL = 5,
  LZ_ERR_SINGULAR = 6,
  LZ_ERR_SCHEMA = 7,
  LZ_ERR_BUDGET = 8,
  LZ_ERR_INVALID_ARGUMENT = 9,
  LZ_ERR_INTERNAL = 10
} lz_status;

typedef enum lz_budget { LZ_BUDGET_PERMUTATION_SCALING = 0, LZ_BUDGET_FULL_SMALL = 1 } lz_budget;

/* Structure-constant tensor over Q. */
typedef struct lz_algebra lz_algebra;

LZ_API const char* lz_version(void);
LZ_API const char* lz_status_name(lz_status status);
/* Message of the last failing call on this thread; never NULL. */
LZ_API const char* lz_last_error(void);
/* Every char* returned through an out-parameter is released here. */
LZ_API void lz_string_free(char* s);

LZ_API lz_status lz_algebra_from_json(const char* json, lz_algebra** out);
LZ_API lz_status lz_algebra_to_json(const lz_algebra* a, char** out);
/* t <= 0 picks the label's default; params is "p1,p2/q2,...". */
LZ_API lz_status lz_algebra_generate(const char* label, int k, int t, const char* params, lz_algebra** out);
LZ_API lz_status lz_algebra_dim(const lz_algebra* a, size_t* out);
LZ_API void lz_algebra_free(lz_algebra* a);

/* JSON outcomes. nilradical is NULL or "i1,i2,..." (0-based). */
LZ_API lz_status lz_verify(const lz_algebra* a, const char* nilradical, int* passed, char** out);
LZ_API lz_status lz_classify(const lz_algebra* a, const char* nilradical, char** out);
LZ_API lz_status lz_invariants(const lz_algebra* a, char** out);
LZ_API lz_status lz_isomorphism_search(const lz_algebra* a, const lz_algebra* b, lz_budget budget, int* found,
                                       char** out);
/* t <= 0 draws t per trial. */
LZ_API lz_status lz_fuzz(const char* label, int k, int t, size_t trials, uint64_t seed, int* all_passed,
                         char** out);
LZ_API lz_status lz_list_families(int k, char** out);
/* Writes one AlgebraFile and one certificate per canonical sample into dir. */
LZ_API lz_status lz_catalog(int k, const char* dir, char** out);
LZ_API lz_status lz_collision_report(int k, size_t draws, uint64_t seed, char** out);

/* Lowercase hex SHA-256. */
LZ_API lz_status lz_sha256_hex(const void* data, size_t len, char** out);

#ifdef __cplusplus
}
#endif

#endif
