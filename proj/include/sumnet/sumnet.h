/*
 * sumnet C API.
 *
 * Opaque handles own a design, a sum-network or a network code. Every
 * function returns a sumnet_status; on failure sumnet_last_error() gives a
 * message for the calling thread. Strings handed out by the library are
 * NUL-terminated JSON or text and must be released with sumnet_string_free().
 *
 * Indices in this API and in every JSON document are 1-based.
 */
#ifndef SUMNET_SUMNET_H
#define SUMNET_SUMNET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SUMNET_BUILDING_LIBRARY)
#    define SUMNET_API __declspec(dllexport)
#  else
#    define SUMNET_API __declspec(dllimport)
#  endif
#else
#  define SUMNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sumnet_status {
  SUMNET_OK = 0,
  SUMNET_ERR_INVALID_ARGUMENT = 1,
  SUMNET_ERR_NOT_PRIME = 2,
  SUMNET_ERR_DIMENSION_MISMATCH = 3,
  SUMNET_ERR_FIELD_MISMATCH = 4,
  SUMNET_ERR_UNSUPPORTED_ORDER = 5,
  SUMNET_ERR_PARSE = 6,
  SUMNET_ERR_INVALID_DESIGN = 7,
  SUMNET_ERR_OUT_OF_RANGE = 8,
  SUMNET_ERR_CHAR_MISMATCH = 9,
  SUMNET_ERR_UNSUPPORTED_LAMBDA = 10,
  SUMNET_ERR_DEGENERATE_VPRIME = 11,
  SUMNET_ERR_SHAPE_MISMATCH = 12,
  SUMNET_ERR_INVALID_GAMMA = 13,
  SUMNET_ERR_TOO_LARGE = 14,
  SUMNET_ERR_IO = 15,
  SUMNET_ERR_OVERFLOW = 16,
  SUMNET_ERR_INTERNAL = 99
} sumnet_status;

typedef enum sumnet_regime {
  SUMNET_REGIME_AUTO = 0,
  SUMNET_REGIME_CHAR_DIVIDES = 1,
  SUMNET_REGIME_CHAR_NOT_DIVIDES = 2
} sumnet_regime;

typedef struct sumnet_design sumnet_design;
typedef struct sumnet_network sumnet_network;
typedef struct sumnet_code sumnet_code;

SUMNET_API const char* sumnet_version(void);
SUMNET_API const char* sumnet_status_name(int status);
/* Message describing the last failure on this thread; empty if none. */
SUMNET_API const char* sumnet_last_error(void);
SUMNET_API void sumnet_string_free(char* s);

/* ---- designs ---------------------------------------------------------- */

SUMNET_API int sumnet_design_fano(sumnet_design** out);
/* Bose construction; SUMNET_ERR_UNSUPPORTED_ORDER unless v = 3 (mod 6). */
SUMNET_API int sumnet_design_sts(int v, sumnet_design** out);
/* Parse and verify; invalid designs give SUMNET_ERR_INVALID_DESIGN. */
SUMNET_API int sumnet_design_from_json(const char* json, sumnet_design** out);
SUMNET_API int sumnet_design_load(const char* path, sumnet_design** out);
SUMNET_API int sumnet_design_save(const sumnet_design* d, const char* path);
SUMNET_API int sumnet_design_to_json(const sumnet_design* d, char** out);
/* sumnet.design-report/1 document with parameters and violations. */
SUMNET_API int sumnet_design_report_json(const sumnet_design* d, char** out, int* valid);
SUMNET_API int sumnet_design_params(const sumnet_design* d, int* v, int* k, int* lambda, int* b, int* r);
SUMNET_API void sumnet_design_free(sumnet_design* d);

/* ---- networks --------------------------------------------------------- */

SUMNET_API int sumnet_network_build(const sumnet_design* d, sumnet_network** out);
SUMNET_API int sumnet_network_from_json(const char* json, sumnet_network** out);
SUMNET_API int sumnet_network_to_json(const sumnet_network* n, char** out);
/* terminal_filter: NULL or a comma-separated list of terminal labels such as
 * "t_p1,t_B1"; only those terminals and the bottlenecks feeding them are drawn. */
SUMNET_API int sumnet_network_to_dot(const sumnet_network* n, const char* terminal_filter, char** out);
/* sumnet.network-report/1 document with counts and violations. */
SUMNET_API int sumnet_network_validate(const sumnet_network* n, char** report, int* valid);
SUMNET_API int sumnet_network_node_count(const sumnet_network* n, size_t* nodes, size_t* edges);
SUMNET_API void sumnet_network_free(sumnet_network* n);

/* ---- codes ------------------------------------------------------------ */

SUMNET_API int sumnet_code_build(const sumnet_network* n, uint32_t p, int regime, sumnet_code** out);
SUMNET_API int sumnet_code_from_json(const char* json, sumnet_code** out);
SUMNET_API int sumnet_code_load(const char* path, sumnet_code** out);
SUMNET_API int sumnet_code_to_json(const sumnet_code* c, char** out);
SUMNET_API int sumnet_code_save(const sumnet_code* c, const char* path);
/* m and n of the (m, n) code. */
SUMNET_API int sumnet_code_rate(const sumnet_code* c, int64_t* m, int64_t* n);
SUMNET_API void sumnet_code_free(sumnet_code* c);

/* ---- verification ----------------------------------------------------- */

/* Transfer-matrix check plus both recoverability checks; sumnet.verify/1.
 * all_ok is 1 when every check passes. */
SUMNET_API int sumnet_verify(const sumnet_network* n, const sumnet_code* c, char** report, int* all_ok);
/* Seeded random source assignments; sumnet.simulate/1. */
SUMNET_API int sumnet_simulate(const sumnet_network* n, const sumnet_code* c, uint64_t trials,
                               uint64_t seed, char** report, int* all_ok);
/* Achieved rate against the upper bound; sumnet.capacity/1. */
SUMNET_API int sumnet_capacity(const sumnet_design* d, uint32_t p, char** report);
/* Alphabet-extension demo; sumnet.counterexample/1. exhaustive != 0 adds the
 * pair search and unicast control (needs k' <= 10). */
SUMNET_API int sumnet_counterexample(int gamma, int exhaustive, char** report);

#ifdef __cplusplus
}
#endif

#endif /* SUMNET_SUMNET_H */
