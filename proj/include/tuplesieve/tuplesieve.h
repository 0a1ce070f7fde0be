/* C interface to the tuple lattice sieving library.
 *
 * Conventions: every function returns a ts_status; outputs go through
 * pointers. On failure the outputs are untouched and ts_last_error() returns
 * a message for the calling thread. Opaque handles are freed with their
 * matching _free function.
 */
#ifndef TUPLESIEVE_H
#define TUPLESIEVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TS_API __declspec(dllexport)
#else
#define TS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_EDOMAIN = 1,       /* argument outside the valid domain */
  TS_EEMPTY_WEDGE = 2,  /* requested cap intersection is empty */
  TS_EPARSE = 3,        /* malformed basis text */
  TS_EINFEASIBLE = 4,   /* resource guard or impossible budget */
  TS_EINTERNAL = 5      /* unexpected failure */
} ts_status;

TS_API const char* ts_version(void);
/* Message for the most recent failing call on this thread ("" if none). */
TS_API const char* ts_last_error(void);

/* ---- exponent calculus (per-dimension log2 quantities) ---- */

TS_API ts_status ts_cap_exponent(double alpha, double* out);
TS_API ts_status ts_wedge_exponent(double alpha1, double alpha2, double theta, double* out);
TS_API ts_status ts_list_size_exponent(int k, double* out);
TS_API ts_status ts_level_list_exponent(int k, int i, double* out);
TS_API ts_status ts_level_width_exponent(int k, int i, double* out);
/* Filter exponents for list density c = log2(n)/d at angle theta, ratio beta. */
TS_API ts_status ts_rho_exponents(double c, double theta, double beta, double* rho_u,
                                  double* rho_q);
TS_API ts_status ts_sparse_rho(double theta, double beta, double* rho_u, double* rho_q);

#define TS_MAX_LEVELS 16

typedef struct ts_level {
  int level;
  double n_exp;
  double w_exp;
  double theta;
  double beta;
  double rho_u;
  double rho_q;
  int has_nns;
} ts_level;

typedef struct ts_tradeoff {
  int k;
  int num_levels;
  double space_budget_exp;
  double space_exp;
  double time_exp;
  ts_level levels[TS_MAX_LEVELS];
} ts_tradeoff;

/* betas has k-1 entries: the threshold ratio for levels 2..k. */
TS_API ts_status ts_total_complexity(int k, const double* betas, int num_betas,
                                     ts_tradeoff* out);
/* Totals without near neighbor searching (rho_u = 0, rho_q = 1 per level). */
TS_API ts_status ts_total_complexity_naive(int k, ts_tradeoff* out);
/* Minimal time exponent subject to space_exp <= space_budget_exp. */
TS_API ts_status ts_optimize_time(int k, double space_budget_exp, ts_tradeoff* out);

/* ---- lattice bases ---- */

typedef struct ts_basis ts_basis;

TS_API ts_status ts_basis_parse(const char* text, ts_basis** out);
TS_API ts_status ts_basis_read_file(const char* path, ts_basis** out);
TS_API void ts_basis_free(ts_basis* b);
TS_API int ts_basis_dim(const ts_basis* b);
/* Row-major entries into a caller buffer of dim*dim elements. */
TS_API ts_status ts_basis_entries(const ts_basis* b, int64_t* out);
/* Bracketed text form; free with ts_string_free. */
TS_API ts_status ts_basis_format(const ts_basis* b, char** out);
TS_API void ts_string_free(char* s);
TS_API ts_status ts_basis_lll(ts_basis* b, double delta);
TS_API ts_status ts_basis_gaussian_heuristic(const ts_basis* b, double* out);

/* ---- SVP sieve ---- */

typedef enum ts_strategy {
  TS_STRATEGY_AUTO = 0,
  TS_STRATEGY_FILTER = 1,
  TS_STRATEGY_LINEAR = 2
} ts_strategy;

typedef struct ts_sieve_params {
  int k;                   /* tuple size, 2..4 */
  double epsilon;          /* band width; < 0 selects sqrt(ln d / d) */
  double recall_target;    /* filter recall per relation, in (0,1) */
  uint64_t seed;
  double target_norm;      /* stop when the best norm reaches this; 0 disables */
  int64_t max_collisions;  /* collision budget before stopping; < 0: auto */
  int64_t max_iterations;
  double space_budget_exp; /* per-dimension log2 memory budget; < 0: balanced */
  int strategy;            /* ts_strategy */
  double lll_delta;
} ts_sieve_params;

TS_API void ts_sieve_params_init(ts_sieve_params* p);

#define TS_TRACE_POINTS 32

typedef struct ts_sieve_result {
  double best_norm;
  int64_t iterations;
  int64_t collisions;
  int64_t pair_reductions;
  int64_t tuple_reductions;
  uint64_t max_list_size;
  uint64_t final_list_size;
  uint64_t peak_bucket_entries;
  double wall_seconds;
  /* evenly thinned (iteration, list size) progress samples */
  int trace_len;
  int64_t trace_iter[TS_TRACE_POINTS];
  uint64_t trace_size[TS_TRACE_POINTS];
} ts_sieve_result;

/* best_coords, when non-NULL, receives the shortest vector found (dim
 * entries). */
TS_API ts_status ts_gauss_sieve(const ts_basis* b, const ts_sieve_params* p,
                                ts_sieve_result* out, int64_t* best_coords);

/* ---- near neighbor benchmark ---- */

typedef struct ts_nns_params {
  int d;
  int64_t n;
  int64_t queries;
  double theta;
  double beta;
  double recall_target;
  uint64_t seed;
} ts_nns_params;

TS_API void ts_nns_params_init(ts_nns_params* p);

typedef struct ts_nns_result {
  int d;
  int64_t n;
  int64_t queries;
  int64_t filters;
  double alpha_u;
  double alpha_q;
  double recall;
  double avg_candidates_per_query;
  double avg_filters_per_query;
  double avg_filters_per_update;
  double rho_u_pred;
  double rho_q_pred;
  uint64_t total_bucket_entries;
  uint64_t peak_bucket_entries;
  double build_seconds;
  double query_seconds;
} ts_nns_result;

TS_API ts_status ts_nns_bench(const ts_nns_params* p, ts_nns_result* out);

#ifdef __cplusplus
}
#endif

#endif /* TUPLESIEVE_H */
