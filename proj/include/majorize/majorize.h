/*
 * C interface to the majorize library.
 *
 * All objects are opaque handles created by *_create / *_load / *_parse and
 * released by the matching *_free. Every fallible call returns an
 * mjz_status; on MJZ_OK and MJZ_FAILS any requested mjz_report is filled in,
 * on other codes it is left NULL and mjz_last_error() describes the failure.
 * Handles are immutable after creation and may be shared across threads.
 */
#ifndef MAJORIZE_H
#define MAJORIZE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MAJORIZE_BUILDING)
#    define MJZ_API __declspec(dllexport)
#  else
#    define MJZ_API __declspec(dllimport)
#  endif
#else
#  define MJZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mjz_status {
  MJZ_OK = 0,             /* relation / inequality holds, or object computed */
  MJZ_FAILS = 1,          /* well-formed input, relation does not hold */
  MJZ_E_INVALID = 2,      /* bad argument */
  MJZ_E_LENGTH = 3,       /* vector length mismatch */
  MJZ_E_PARSE = 4,        /* malformed file or expression */
  MJZ_E_DOMAIN = 5,       /* expression evaluated outside its domain */
  MJZ_E_PRECONDITION = 6, /* mathematical precondition not met */
  MJZ_E_IO = 7,
  MJZ_E_INTERNAL = 8
} mjz_status;

typedef enum mjz_order {
  MJZ_WEAK = 0,
  MJZ_CLASSICAL = 1,
  MJZ_STRONG = 2
} mjz_order;

typedef struct mjz_vector mjz_vector;
typedef struct mjz_expr mjz_expr;
typedef struct mjz_tree mjz_tree;
typedef struct mjz_measure mjz_measure;
typedef struct mjz_report mjz_report;

/* Message of the last failing call on this thread; "" if none. */
MJZ_API const char* mjz_last_error(void);
MJZ_API const char* mjz_status_name(mjz_status s);
MJZ_API const char* mjz_version(void);

/* ---- reports ---------------------------------------------------------- */

/* Compact JSON describing the result; owned by the report. */
MJZ_API const char* mjz_report_json(const mjz_report* r);
MJZ_API int mjz_report_holds(const mjz_report* r);
MJZ_API size_t mjz_report_warning_count(const mjz_report* r);
MJZ_API const char* mjz_report_warning(const mjz_report* r, size_t i);
MJZ_API void mjz_report_free(mjz_report* r);

/* ---- vectors ---------------------------------------------------------- */

MJZ_API mjz_status mjz_vector_create(const double* values, size_t n, mjz_vector** out);
/* One finite decimal per line, '#' comment lines ignored. */
MJZ_API mjz_status mjz_vector_load(const char* path, mjz_vector** out);
MJZ_API mjz_status mjz_vector_parse(const char* text, mjz_vector** out);
MJZ_API void mjz_vector_free(mjz_vector* v);
MJZ_API size_t mjz_vector_size(const mjz_vector* v);
/* Entries in original order; valid while the handle lives. */
MJZ_API const double* mjz_vector_data(const mjz_vector* v);
/* Descending rearrangement and its prefix sums; buffers hold size() entries. */
MJZ_API mjz_status mjz_vector_ranked(const mjz_vector* v, double* sorted, double* prefix);

/* ---- expressions ------------------------------------------------------ */

MJZ_API mjz_status mjz_expr_parse(const char* src, mjz_expr** out);
MJZ_API void mjz_expr_free(mjz_expr* e);
MJZ_API mjz_status mjz_expr_eval_t(const mjz_expr* e, double t, double* out);
/* Binds x1..xn to x[0..n-1]. */
MJZ_API mjz_status mjz_expr_eval_x(const mjz_expr* e, const double* x, size_t n, double* out);

/* ---- majorization ----------------------------------------------------- */

/* tol < 0 selects the default (1e-9 absolute, 1e-12 relative); tol == 0
 * compares exactly; otherwise tol is the absolute part. */
MJZ_API mjz_status mjz_compare(const mjz_vector* x, const mjz_vector* y, mjz_order mode,
                               double tol, mjz_report** out);
MJZ_API mjz_status mjz_mass_ratio(const mjz_vector* x, const mjz_vector* y, double* alpha);
/* mean f(x) <= alpha mean f(y) + (1 - alpha) f(0); FAILS also when x is not
 * strongly majorized by y (see "status" in the report). */
MJZ_API mjz_status mjz_hlp(const mjz_vector* x, const mjz_vector* y, const mjz_expr* f,
                           double tol, mjz_report** out);
MJZ_API mjz_status mjz_tomic_weyl(const mjz_vector* x, const mjz_vector* y,
                                  const mjz_expr* f, double tol, mjz_report** out);
/* Fills matrix (n*n, row-major, may be NULL) with a doubly stochastic A,
 * x = A y. FAILS when x is not majorized by y. */
MJZ_API mjz_status mjz_witness(const mjz_vector* x, const mjz_vector* y, double tol,
                               double* matrix, mjz_report** out);
MJZ_API mjz_status mjz_is_doubly_stochastic(const double* a, size_t rows, size_t cols,
                                            double tol, int* out);

typedef struct mjz_schur_options {
  size_t dim;
  double lo;
  double hi;
  size_t samples;
  uint64_t seed;
  double fd_step;
  double fd_tol;
} mjz_schur_options;

MJZ_API void mjz_schur_options_init(mjz_schur_options* opt);
/* OK for schur_convex / schur_concave / neither, FAILS for inconclusive. */
MJZ_API mjz_status mjz_schur(const mjz_expr* f, const mjz_schur_options* opt,
                             mjz_report** out);

/* ---- trees ------------------------------------------------------------ */

MJZ_API mjz_status mjz_tree_create(const char* const* from, const char* const* to,
                                   size_t n_edges, mjz_tree** out);
MJZ_API mjz_status mjz_tree_load(const char* path, mjz_tree** out);
MJZ_API mjz_status mjz_tree_parse(const char* text, mjz_tree** out);
MJZ_API void mjz_tree_free(mjz_tree* t);
MJZ_API size_t mjz_tree_size(const mjz_tree* t);
MJZ_API const char* mjz_tree_label(const mjz_tree* t, size_t v);
/* out holds size() entries. */
MJZ_API mjz_status mjz_tree_distance_vector(const mjz_tree* t, size_t u, int* out);
/* mode: MJZ_WEAK or MJZ_STRONG. */
MJZ_API mjz_status mjz_tree_center(const mjz_tree* t, mjz_order mode, mjz_report** out);
MJZ_API mjz_status mjz_tree_relation(const mjz_tree* t, const char* u, const char* v,
                                     mjz_order mode, mjz_report** out);
MJZ_API mjz_status mjz_tree_facility(const mjz_tree* t, const mjz_expr* g, double tol,
                                     mjz_report** out);
MJZ_API mjz_status mjz_equity_measure(const double* d, size_t n, double* out);

/* ---- spiders ---------------------------------------------------------- */

typedef struct mjz_spider_point {
  size_t legs; /* K */
  size_t leg;  /* 1..K */
  double radius;
} mjz_spider_point;

MJZ_API mjz_status mjz_spider_distance(const mjz_spider_point* p, const mjz_spider_point* q,
                                       double* out);
MJZ_API mjz_status mjz_spider_midpoint(const mjz_spider_point* p, const mjz_spider_point* q,
                                       mjz_spider_point* out);
MJZ_API mjz_status mjz_spider_npc(const mjz_spider_point* x0, const mjz_spider_point* x1,
                                  const mjz_spider_point* z, double tol, mjz_report** out);
MJZ_API mjz_status mjz_spider_npc_sample(size_t samples, uint64_t seed, size_t min_legs,
                                         size_t max_legs, double max_radius, double tol,
                                         mjz_report** out);

MJZ_API mjz_status mjz_measure_create(size_t legs, const mjz_spider_point* points,
                                      const double* weights, size_t n, mjz_measure** out);
/* {"K": int, "atoms": [{"leg": int, "r": number, "w": number}, ...]} */
MJZ_API mjz_status mjz_measure_load(const char* path, mjz_measure** out);
MJZ_API mjz_status mjz_measure_parse(const char* json, mjz_measure** out);
MJZ_API void mjz_measure_free(mjz_measure* m);

MJZ_API mjz_status mjz_spider_barycenter(const mjz_measure* m, mjz_spider_point* point,
                                         mjz_report** out);
/* f holds one expression in t per leg; legs must be 3. */
MJZ_API mjz_status mjz_spider_convexity(const mjz_expr* const* f, size_t legs,
                                        uint64_t seed, mjz_report** out);
MJZ_API mjz_status mjz_spider_jensen(const mjz_expr* const* f, size_t legs,
                                     const mjz_measure* m, double tol, mjz_report** out);

#ifdef __cplusplus
}
#endif

#endif
