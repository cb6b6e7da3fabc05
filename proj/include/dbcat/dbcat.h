/* C interface to the dbcat library.
 *
 * Every fallible call returns a dbcat_status and writes its result through
 * an out pointer. On failure the out pointer is left untouched and
 * dbcat_last_error() holds a message for the calling thread.
 * Strings returned through char** are released with dbcat_string_free.
 */
#ifndef DBCAT_H
#define DBCAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DBCAT_API __declspec(dllexport)
#else
#define DBCAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dbcat_status {
  DBCAT_OK = 0,
  DBCAT_ARITY_MISMATCH,
  DBCAT_ARITY_OUT_OF_RANGE,
  DBCAT_UNKNOWN_CONSTANT,
  DBCAT_UNIVERSE_TOO_LARGE,
  DBCAT_ENUMERATION_TOO_LARGE,
  DBCAT_SYNTAX_ERROR,
  DBCAT_UNKNOWN_RELATION,
  DBCAT_ARITY_ERROR,
  DBCAT_RESULT_NOT_IN_TARGET,
  DBCAT_DOMAIN_MISMATCH,
  DBCAT_NOT_CLOSED,
  DBCAT_NOT_CLOSED_DOMAIN,
  DBCAT_NOT_PARALLEL,
  DBCAT_FLUX_OUT_OF_RANGE,
  DBCAT_NOT_MONIC,
  DBCAT_NOT_A_PULLBACK,
  DBCAT_UNKNOWN_SUITE,
  DBCAT_FORMAT_ERROR,
  DBCAT_IO_ERROR,
  DBCAT_INVALID_ARGUMENT,
  DBCAT_INTERNAL_ERROR = 100
} dbcat_status;

typedef enum dbcat_law_status {
  DBCAT_LAW_PASS = 0,
  DBCAT_LAW_FAIL = 1,
  DBCAT_LAW_FLAGGED = 2
} dbcat_law_status;

typedef struct dbcat_universe dbcat_universe;
typedef struct dbcat_instance dbcat_instance;
typedef struct dbcat_instance_list dbcat_instance_list;
typedef struct dbcat_morphism dbcat_morphism;
typedef struct dbcat_report dbcat_report;

DBCAT_API const char* dbcat_status_name(dbcat_status status);
/* Message of the last failed call on this thread, "" if none. */
DBCAT_API const char* dbcat_last_error(void);
DBCAT_API void dbcat_string_free(char* s);

/* Bounds of 0 select the defaults (4096 relations, 2^20 enumerated sets). */
DBCAT_API dbcat_status dbcat_universe_create(const char* const* symbols, size_t count, int k_max,
                                             uint64_t max_universe, uint64_t max_enumeration,
                                             dbcat_universe** out);
/* Universe over the domain of `inst`. */
DBCAT_API dbcat_status dbcat_universe_for_instance(const dbcat_instance* inst, int k_max,
                                                   uint64_t max_universe,
                                                   uint64_t max_enumeration,
                                                   dbcat_universe** out);
DBCAT_API void dbcat_universe_free(dbcat_universe* u);

DBCAT_API dbcat_status dbcat_instance_load(const char* path, dbcat_instance** out);
DBCAT_API dbcat_status dbcat_instance_parse(const char* text, dbcat_instance** out);
DBCAT_API dbcat_status dbcat_instance_to_text(const dbcat_instance* inst, char** out);
/* Number of distinct relations. */
DBCAT_API size_t dbcat_instance_size(const dbcat_instance* inst);
DBCAT_API void dbcat_instance_free(dbcat_instance* inst);

/* One-relation instance labeled "result". */
DBCAT_API dbcat_status dbcat_eval(const dbcat_universe* u, const dbcat_instance* inst,
                                  const char* query, dbcat_instance** out);
DBCAT_API dbcat_status dbcat_power_view(const dbcat_universe* u, const dbcat_instance* inst,
                                        dbcat_instance** out);
DBCAT_API dbcat_status dbcat_total_object(const dbcat_universe* u, dbcat_instance** out);
DBCAT_API dbcat_status dbcat_match(const dbcat_universe* u, const dbcat_instance* a,
                                   const dbcat_instance* b, dbcat_instance** out);
DBCAT_API dbcat_status dbcat_merge(const dbcat_universe* u, const dbcat_instance* a,
                                   const dbcat_instance* b, dbcat_instance** out);
DBCAT_API dbcat_status dbcat_hom_object(const dbcat_universe* u, const dbcat_instance* b,
                                        const dbcat_instance* c, dbcat_instance** out);
DBCAT_API dbcat_status dbcat_distance(const dbcat_universe* u, const dbcat_instance* a,
                                      const dbcat_instance* b, dbcat_instance** out);
/* Sets *is_iso to 1 when TA = TB. */
DBCAT_API dbcat_status dbcat_iso(const dbcat_universe* u, const dbcat_instance* a,
                                 const dbcat_instance* b, int* is_iso);
DBCAT_API dbcat_status dbcat_omega_chain(const dbcat_universe* u, const dbcat_instance* a,
                                         int steps, dbcat_instance_list** out);

DBCAT_API size_t dbcat_instance_list_size(const dbcat_instance_list* list);
/* Borrowed; valid until the list is freed. NULL when out of range. */
DBCAT_API const dbcat_instance* dbcat_instance_list_get(const dbcat_instance_list* list,
                                                        size_t index);
DBCAT_API void dbcat_instance_list_free(dbcat_instance_list* list);

/* Reads a morphism file and the instance files it names; the universe is
 * built over the source file's domain. */
DBCAT_API dbcat_status dbcat_morphism_load(const char* path, int k_max, uint64_t max_universe,
                                           uint64_t max_enumeration, dbcat_morphism** out);
DBCAT_API dbcat_status dbcat_morphism_atomic(const dbcat_universe* u, const dbcat_instance* a,
                                             const dbcat_instance* b,
                                             const char* const* queries, size_t count,
                                             dbcat_morphism** out);
/* g after f. */
DBCAT_API dbcat_status dbcat_morphism_compose(const dbcat_morphism* g, const dbcat_morphism* f,
                                              dbcat_morphism** out);
DBCAT_API dbcat_status dbcat_morphism_flux(const dbcat_morphism* m, dbcat_instance** out);
/* One "query -> result" line per witness tree. */
DBCAT_API dbcat_status dbcat_morphism_describe(const dbcat_morphism* m, char** out);
DBCAT_API dbcat_status dbcat_morphism_classify(const dbcat_morphism* m, int* mono, int* epi,
                                               int* iso);
DBCAT_API dbcat_status dbcat_morphism_equivalent(const dbcat_morphism* f,
                                                 const dbcat_morphism* g, int* equivalent);
DBCAT_API void dbcat_morphism_free(dbcat_morphism* m);

/* Classifies the monic A -> B with flux TA. Test arrows range over the
 * enumerated instances (at most max_relations each; 0 picks the default). */
DBCAT_API dbcat_status dbcat_classify_subobject(const dbcat_universe* u, const dbcat_instance* a,
                                                const dbcat_instance* b, size_t max_relations,
                                                dbcat_report** out);
/* max_relations 0 picks the default: 4 when k_max is 1, else 1. */
DBCAT_API dbcat_status dbcat_run_suite(const dbcat_universe* u, const char* suite,
                                       size_t max_relations, dbcat_report** out);
DBCAT_API dbcat_status dbcat_report_to_text(const dbcat_report* r, int with_timing, char** out);
/* 1 when no entry failed. */
DBCAT_API int dbcat_report_passed(const dbcat_report* r);
DBCAT_API size_t dbcat_report_count(const dbcat_report* r, dbcat_law_status status);
DBCAT_API void dbcat_report_free(dbcat_report* r);

#ifdef __cplusplus
}
#endif

#endif /* DBCAT_H */
