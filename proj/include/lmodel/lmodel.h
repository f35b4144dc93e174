/*
 * C interface to the lmodel library.
 *
 * All objects are opaque handles released with their matching *_free call.
 * Functions return an lm_status; LM_OK and LM_NO are both successful calls
 * (LM_NO is a definite negative answer such as "no partition exists"), every
 * other value is an error whose message is available from lm_last_error()
 * on the calling thread. Strings returned through char** are owned by the
 * caller and must be released with lm_string_free.
 */
#ifndef LMODEL_H
#define LMODEL_H

#include <stddef.h>

#if defined(_WIN32)
#define LMODEL_API __declspec(dllexport)
#else
#define LMODEL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lm_status {
  LM_OK = 0,
  LM_NO = 1,
  LM_ERR_ARGUMENT = 2,
  LM_ERR_SYNTAX = 3,
  LM_ERR_SCHEMA = 4,
  LM_ERR_DOMAIN = 5,
  LM_ERR_PARAMETER = 6,
  LM_ERR_PRECONDITION = 7,
  LM_ERR_LIMIT = 8,
  LM_ERR_IO = 9,
  LM_ERR_INTERNAL = 10
} lm_status;

typedef struct lm_graph lm_graph;
typedef struct lm_pairs lm_pairs;
typedef struct lm_heights lm_heights;

typedef struct lm_detect_config {
  size_t samples;
  double refine_tol;
  double collide_eps;
  int report_margin;
  unsigned threads; /* 0 = hardware concurrency */
} lm_detect_config;

typedef struct lm_cgraph_stats {
  size_t nodes;
  size_t arcs;
  size_t two_cycles;
  int acyclic;
} lm_cgraph_stats;

LMODEL_API const char* lm_version(void);
LMODEL_API const char* lm_last_error(void);
LMODEL_API void lm_string_free(char* s);

/* --- moving graphs ------------------------------------------------------ */

LMODEL_API lm_status lm_graph_from_json(const char* text, lm_graph** out);
LMODEL_API lm_status lm_graph_load(const char* path, lm_graph** out);
LMODEL_API lm_status lm_graph_to_json(const lm_graph* g, char** out);
LMODEL_API lm_status lm_graph_fingerprint(const lm_graph* g, char** out);
/* Copy of g analysed over [lo, hi] instead of its own domain. */
LMODEL_API lm_status lm_graph_with_domain(const lm_graph* g, double lo, double hi, lm_graph** out);
LMODEL_API void lm_graph_free(lm_graph* g);

LMODEL_API size_t lm_graph_vertex_count(const lm_graph* g);
LMODEL_API size_t lm_graph_edge_count(const lm_graph* g);
LMODEL_API lm_status lm_graph_position(const lm_graph* g, const char* vertex, double t, double* x, double* y);
/* LM_OK when every edge length stays within tol of its mean, else LM_NO. */
LMODEL_API lm_status lm_graph_validate(const lm_graph* g, size_t samples, double tol, char** report_json);
/* LM_OK when all vertices return to their start at the end of the domain. */
LMODEL_API lm_status lm_graph_is_periodic(const lm_graph* g);

LMODEL_API lm_status lm_family_dixon1(size_t m, size_t n, const double* a, const double* b, const int* sx,
                                      const int* sy, lm_graph** out);
LMODEL_API lm_status lm_family_dixon2(double a, double b, double d, lm_graph** out);
LMODEL_API lm_status lm_family_s2(double a, double b, double c, lm_graph** out);

/* --- collision detection ------------------------------------------------ */

LMODEL_API void lm_detect_config_default(lm_detect_config* cfg);
LMODEL_API lm_status lm_detect(const lm_graph* g, const lm_detect_config* cfg, lm_pairs** out);
LMODEL_API lm_status lm_pairs_from_json(const lm_graph* g, const char* text, lm_pairs** out);
/* graph_ref may be NULL, in which case the graph fingerprint is recorded. */
LMODEL_API lm_status lm_pairs_to_json(const lm_pairs* p, const char* graph_ref, char** out);
/* The "graph" member of a pairs document. */
LMODEL_API lm_status lm_pairs_graph_ref(const char* text, char** out);
LMODEL_API void lm_pairs_free(lm_pairs* p);

LMODEL_API size_t lm_pairs_count(const lm_pairs* p);
/* Non-colliding pairs whose minimum gap fell inside the ambiguity band. */
LMODEL_API size_t lm_pairs_ambiguous_count(const lm_pairs* p);
/* Smallest minimum gap among non-colliding pairs; +inf when unknown. */
LMODEL_API double lm_pairs_smallest_clear_gap(const lm_pairs* p);
/* Borrowed strings stay valid while p is alive. */
LMODEL_API lm_status lm_pairs_get(const lm_pairs* p, size_t i, const char** vertex, const char** edge_u,
                                  const char** edge_v, double* t, double* gap);

/* --- collision graph ---------------------------------------------------- */

LMODEL_API lm_status lm_cgraph_dot(const lm_pairs* p, char** out);
LMODEL_API lm_status lm_cgraph_stats_get(const lm_pairs* p, lm_cgraph_stats* out);

/* --- height planning ---------------------------------------------------- */

/*
 * upper == NULL: search for a partition; LM_NO with a report naming the
 * reason when none exists. Otherwise the listed edge names form the upper
 * part and all others the lower part.
 */
LMODEL_API lm_status lm_plan(const lm_pairs* p, const char* const* upper, size_t n_upper, lm_heights** out,
                             char** report_json);
LMODEL_API lm_status lm_verify(const lm_pairs* p, const lm_heights* h, char** report_json);
LMODEL_API lm_status lm_exists(const lm_pairs* p, lm_heights** witness, char** report_json);
LMODEL_API lm_status lm_split_layers(const lm_pairs* p, const lm_heights* h, lm_heights** out);
/* Closed-form heights for a Dixon-1 graph with vertices p0.., q0... */
LMODEL_API lm_status lm_heights_dixon1(const lm_graph* g, lm_heights** out);

LMODEL_API lm_status lm_heights_from_json(const lm_graph* g, const char* text, lm_heights** out);
LMODEL_API lm_status lm_heights_to_json(const lm_heights* h, char** out);
LMODEL_API lm_status lm_heights_get(const lm_heights* h, const char* edge_name, long long* out);
LMODEL_API void lm_heights_free(lm_heights* h);

#ifdef __cplusplus
}
#endif

#endif /* LMODEL_H */
