#ifndef ORBITLAB_H
#define ORBITLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define ORBITLAB_API __attribute__((visibility("default")))
#else
#define ORBITLAB_API
#endif

typedef enum orbitlab_status {
  ORBITLAB_OK = 0,
  ORBITLAB_E_ARGUMENT = 1,     /* malformed input or unsupported parameters */
  ORBITLAB_E_DOMAIN = 2,       /* mathematically undefined (valuation of 0, ...) */
  ORBITLAB_E_PRECONDITION = 3, /* documented hypothesis not met */
  ORBITLAB_E_RESOURCE = 4,     /* budget exceeded; *out holds partial JSON when set */
  ORBITLAB_E_INTEGRITY = 5,    /* internal consistency check failed */
  ORBITLAB_E_INTERNAL = 6
} orbitlab_status;

typedef struct orbitlab_map orbitlab_map;
typedef struct orbitlab_group orbitlab_group;

typedef struct orbitlab_search_options {
  uint64_t height;
  unsigned n_min;
  unsigned n_max;
  unsigned k_max;
  long r;
  long s;
  int wandering_only;
  int full_s_units;
  unsigned jobs;
} orbitlab_search_options;

typedef struct orbitlab_c2_options {
  unsigned max_depth;
  uint64_t point_budget;
  unsigned refine;
  unsigned jobs;
} orbitlab_c2_options;

ORBITLAB_API const char* orbitlab_version(void);
/* Message for the last failing call on this thread ("" if none). */
ORBITLAB_API const char* orbitlab_last_error(void);
/* Every char* returned through an out parameter must be released here. */
ORBITLAB_API void orbitlab_string_free(char* s);
ORBITLAB_API unsigned orbitlab_default_jobs(void);

ORBITLAB_API void orbitlab_search_options_init(orbitlab_search_options* opts);
ORBITLAB_API void orbitlab_c2_options_init(orbitlab_c2_options* opts);

ORBITLAB_API orbitlab_status orbitlab_map_parse(const char* text, orbitlab_map** out);
ORBITLAB_API void orbitlab_map_free(orbitlab_map* map);
ORBITLAB_API orbitlab_status orbitlab_map_to_string(const orbitlab_map* map, char** out);
ORBITLAB_API int orbitlab_map_degree(const orbitlab_map* map);

/* Comma separated rationals or a JSON array of strings; empty is trivial. */
ORBITLAB_API orbitlab_status orbitlab_group_parse(const char* text, orbitlab_group** out);
ORBITLAB_API void orbitlab_group_free(orbitlab_group* group);

/* All results below are JSON. Search results are newline-delimited records. */
ORBITLAB_API orbitlab_status orbitlab_point_normalize(const char* point, char** out);
ORBITLAB_API orbitlab_status orbitlab_height(const char* point, char** out);
ORBITLAB_API orbitlab_status orbitlab_valuation(const char* x, const char* p, char** out);
ORBITLAB_API orbitlab_status orbitlab_factor(const char* n, char** out);
ORBITLAB_API orbitlab_status orbitlab_evaluate(const orbitlab_map* map, const char* point, unsigned n, char** out);
ORBITLAB_API orbitlab_status orbitlab_c1(const orbitlab_map* map, char** out);
ORBITLAB_API orbitlab_status orbitlab_c2(const orbitlab_map* map, const orbitlab_c2_options* opts, char** out);
ORBITLAB_API orbitlab_status orbitlab_canonical_height(const orbitlab_map* map, const char* point, unsigned depth,
                                                       char** out);
ORBITLAB_API orbitlab_status orbitlab_preperiodic(const orbitlab_map* map, const char* point, char** out);
ORBITLAB_API orbitlab_status orbitlab_ramification(const orbitlab_map* map, const char* point, char** out);
ORBITLAB_API orbitlab_status orbitlab_critical(const orbitlab_map* map, char** out);
ORBITLAB_API orbitlab_status orbitlab_exceptional(const orbitlab_map* map, const char* point, char** out);
ORBITLAB_API orbitlab_status orbitlab_classify(const orbitlab_map* map, char** out);
ORBITLAB_API orbitlab_status orbitlab_reduction(const orbitlab_map* map, char** out);

ORBITLAB_API orbitlab_status orbitlab_group_describe(const orbitlab_group* group, char** out);
ORBITLAB_API orbitlab_status orbitlab_group_check(const orbitlab_group* group, const char* x, char** out);
ORBITLAB_API orbitlab_status orbitlab_group_saturate(const orbitlab_group* group, char** out);
/* primes: comma separated primes (may be empty). */
ORBITLAB_API orbitlab_status orbitlab_group_cosets(const char* primes, unsigned m, char** out);
ORBITLAB_API orbitlab_status orbitlab_lcm_exponent(unsigned d, unsigned n, char** out);

ORBITLAB_API orbitlab_status orbitlab_search_g(const orbitlab_map* map, const orbitlab_group* group,
                                               const orbitlab_search_options* opts, char** out);
ORBITLAB_API orbitlab_status orbitlab_search_f(const orbitlab_map* map, const orbitlab_group* group,
                                               const orbitlab_search_options* opts, char** out);
ORBITLAB_API orbitlab_status orbitlab_search_e(const orbitlab_map* map, const orbitlab_group* group,
                                               const orbitlab_search_options* opts, char** out);
ORBITLAB_API orbitlab_status orbitlab_search_pairwise(const orbitlab_map* map, const orbitlab_group* group,
                                                      const orbitlab_search_options* opts, char** out);
ORBITLAB_API orbitlab_status orbitlab_dependence(const char* a, const char* b, const orbitlab_group* group,
                                                 char** out);
ORBITLAB_API orbitlab_status orbitlab_zsigmondy(const orbitlab_map* map, const char* point, unsigned n_max,
                                                int include_m0, char** out);

/* F, G: polynomials in X; c: rational; m: decimal integer. */
ORBITLAB_API orbitlab_status orbitlab_genus(const char* F, const char* G, const char* c, const char* m, char** out);
ORBITLAB_API orbitlab_status orbitlab_singular_points(const char* F, const char* G, const char* m, char** out);
ORBITLAB_API orbitlab_status orbitlab_superelliptic_genus(unsigned q, const char* m, char** out);
ORBITLAB_API orbitlab_status orbitlab_curve_classify(const orbitlab_map* map, unsigned n, char** out);

/* form: e.g. "T1 - 5/2*T2" or "T1*T2 + 3*T3". */
ORBITLAB_API orbitlab_status orbitlab_bound_thm19(const char* form, const orbitlab_map* map, char** out);
ORBITLAB_API orbitlab_status orbitlab_bound_n1(const char* form, const orbitlab_map* map,
                                               const orbitlab_c2_options* opts, char** out);
ORBITLAB_API orbitlab_status orbitlab_split_search(const char* form, const orbitlab_map* map, const char* point,
                                                   unsigned n_cap, int ignore_bound,
                                                   const orbitlab_c2_options* opts, char** out);

#ifdef __cplusplus
}
#endif

#endif
