#include "tuplesieve/tuplesieve.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "core/asymptotics.hpp"
#include "core/bench.hpp"
#include "core/errors.hpp"
#include "core/lattice.hpp"
#include "core/sieve.hpp"

using namespace tuplesieve;

namespace {

thread_local std::string g_last_error;

ts_status fail(ts_status s, const char* what) {
  g_last_error = what ? what : "";
  return s;
}

// Run a callable, translating exceptions to status codes.
template <typename F>
ts_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return TS_OK;
  } catch (const EmptyWedgeError& e) {
    return fail(TS_EEMPTY_WEDGE, e.what());
  } catch (const ParseError& e) {
    return fail(TS_EPARSE, e.what());
  } catch (const InfeasibleError& e) {
    return fail(TS_EINFEASIBLE, e.what());
  } catch (const std::domain_error& e) {
    return fail(TS_EDOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TS_EDOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TS_EINFEASIBLE, "out of memory");
  } catch (const std::exception& e) {
    return fail(TS_EINTERNAL, e.what());
  } catch (...) {
    return fail(TS_EINTERNAL, "unknown error");
  }
}

ts_status require(bool cond, const char* what) {
  return cond ? TS_OK : fail(TS_EDOMAIN, what);
}

void fill_tradeoff(const TradeoffProfile& p, ts_tradeoff* out) {
  out->k = p.k;
  out->num_levels = static_cast<int>(p.levels.size());
  out->space_budget_exp = p.space_budget_exp;
  out->space_exp = p.space_exp;
  out->time_exp = p.time_exp;
  for (size_t i = 0; i < p.levels.size() && i < TS_MAX_LEVELS; ++i) {
    const LevelProfile& l = p.levels[i];
    out->levels[i] = {l.level, l.n_exp, l.w_exp, l.theta, l.beta, l.rho_u, l.rho_q,
                      l.has_nns ? 1 : 0};
  }
}

}  // namespace

struct ts_basis {
  Basis b;
};

extern "C" {

const char* ts_version(void) { return "1.0.0"; }

const char* ts_last_error(void) { return g_last_error.c_str(); }

ts_status ts_cap_exponent(double alpha, double* out) {
  if (ts_status s = require(out != nullptr, "out is NULL")) return s;
  return guarded([&] { *out = cap_exponent(alpha); });
}

ts_status ts_wedge_exponent(double alpha1, double alpha2, double theta, double* out) {
  if (ts_status s = require(out != nullptr, "out is NULL")) return s;
  return guarded([&] { *out = wedge_exponent(alpha1, alpha2, theta); });
}

ts_status ts_list_size_exponent(int k, double* out) {
  if (ts_status s = require(out != nullptr, "out is NULL")) return s;
  return guarded([&] { *out = list_size_exponent(k); });
}

ts_status ts_level_list_exponent(int k, int i, double* out) {
  if (ts_status s = require(out != nullptr, "out is NULL")) return s;
  return guarded([&] { *out = level_list_exponent(k, i); });
}

ts_status ts_level_width_exponent(int k, int i, double* out) {
  if (ts_status s = require(out != nullptr, "out is NULL")) return s;
  return guarded([&] { *out = level_width_exponent(k, i); });
}

ts_status ts_rho_exponents(double c, double theta, double beta, double* rho_u, double* rho_q) {
  if (ts_status s = require(rho_u && rho_q, "output is NULL")) return s;
  return guarded([&] {
    const RhoPair r = rho_exponents(c, theta, beta);
    *rho_u = r.rho_u;
    *rho_q = r.rho_q;
  });
}

ts_status ts_sparse_rho(double theta, double beta, double* rho_u, double* rho_q) {
  if (ts_status s = require(rho_u && rho_q, "output is NULL")) return s;
  return guarded([&] {
    const RhoPair r = sparse_rho(theta, beta);
    *rho_u = r.rho_u;
    *rho_q = r.rho_q;
  });
}

ts_status ts_total_complexity(int k, const double* betas, int num_betas, ts_tradeoff* out) {
  if (ts_status s = require(out && (betas || num_betas == 0), "output or betas is NULL"))
    return s;
  if (ts_status s = require(num_betas == k - 1, "need k-1 beta values")) return s;
  if (ts_status s = require(k - 1 <= TS_MAX_LEVELS, "k too large")) return s;
  return guarded([&] {
    fill_tradeoff(total_complexity(k, std::vector<double>(betas, betas + num_betas)), out);
  });
}

ts_status ts_total_complexity_naive(int k, ts_tradeoff* out) {
  if (ts_status s = require(out != nullptr, "out is NULL")) return s;
  if (ts_status s = require(k <= TS_MAX_LEVELS, "k too large")) return s;
  return guarded([&] { fill_tradeoff(total_complexity_naive(k), out); });
}

ts_status ts_optimize_time(int k, double space_budget_exp, ts_tradeoff* out) {
  if (ts_status s = require(out != nullptr, "out is NULL")) return s;
  if (ts_status s = require(k <= TS_MAX_LEVELS, "k too large")) return s;
  return guarded([&] { fill_tradeoff(optimize_time(k, space_budget_exp), out); });
}

ts_status ts_basis_parse(const char* text, ts_basis** out) {
  if (ts_status s = require(text && out, "text or out is NULL")) return s;
  return guarded([&] { *out = new ts_basis{parse_basis(text)}; });
}

ts_status ts_basis_read_file(const char* path, ts_basis** out) {
  if (ts_status s = require(path && out, "path or out is NULL")) return s;
  return guarded([&] { *out = new ts_basis{read_basis_file(path)}; });
}

void ts_basis_free(ts_basis* b) { delete b; }

int ts_basis_dim(const ts_basis* b) { return b ? b->b.d : 0; }

ts_status ts_basis_entries(const ts_basis* b, int64_t* out) {
  if (ts_status s = require(b && out, "basis or out is NULL")) return s;
  for (int i = 0; i < b->b.d; ++i)
    for (int j = 0; j < b->b.d; ++j) out[i * b->b.d + j] = b->b.rows[i][j];
  g_last_error.clear();
  return TS_OK;
}

ts_status ts_basis_format(const ts_basis* b, char** out) {
  if (ts_status s = require(b && out, "basis or out is NULL")) return s;
  return guarded([&] {
    const std::string text = format_basis(b->b);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void ts_string_free(char* s) { delete[] s; }

ts_status ts_basis_lll(ts_basis* b, double delta) {
  if (ts_status s = require(b != nullptr, "basis is NULL")) return s;
  return guarded([&] { lll_reduce(b->b, delta); });
}

ts_status ts_basis_gaussian_heuristic(const ts_basis* b, double* out) {
  if (ts_status s = require(b && out, "basis or out is NULL")) return s;
  return guarded([&] { *out = gaussian_heuristic(b->b); });
}

void ts_sieve_params_init(ts_sieve_params* p) {
  if (!p) return;
  p->k = 2;
  p->epsilon = -1.0;
  p->recall_target = 0.9;
  p->seed = 1;
  p->target_norm = 0.0;
  p->max_collisions = -1;
  p->max_iterations = 5'000'000;
  p->space_budget_exp = -1.0;
  p->strategy = TS_STRATEGY_AUTO;
  p->lll_delta = 0.99;
}

ts_status ts_gauss_sieve(const ts_basis* b, const ts_sieve_params* p, ts_sieve_result* out,
                         int64_t* best_coords) {
  if (ts_status s = require(b && p && out, "basis, params or out is NULL")) return s;
  if (ts_status s = require(p->strategy >= TS_STRATEGY_AUTO && p->strategy <= TS_STRATEGY_LINEAR,
                            "unknown strategy"))
    return s;
  return guarded([&] {
    GaussSieveConfig cfg;
    cfg.k = p->k;
    cfg.epsilon = p->epsilon;
    cfg.recall_target = p->recall_target;
    cfg.seed = p->seed;
    cfg.target_norm = p->target_norm;
    cfg.max_collisions = p->max_collisions;
    cfg.max_iterations = p->max_iterations;
    cfg.space_budget_exp = p->space_budget_exp;
    cfg.strategy = static_cast<CandidateStrategy>(p->strategy);
    cfg.lll_delta = p->lll_delta;
    const GaussSieveResult r = gauss_sieve(b->b, cfg);
    out->best_norm = std::sqrt(r.best.norm_sq);
    out->iterations = r.stats.iterations;
    out->collisions = r.stats.collisions;
    out->pair_reductions = r.stats.pair_reductions;
    out->tuple_reductions = r.stats.tuple_reductions;
    out->max_list_size = r.stats.max_list_size;
    out->final_list_size = r.stats.final_list_size;
    out->peak_bucket_entries = r.stats.peak_bucket_entries;
    out->wall_seconds = r.stats.wall_seconds;
    const auto& trace = r.stats.list_trace;
    const size_t stride = trace.size() <= TS_TRACE_POINTS
                              ? 1
                              : (trace.size() + TS_TRACE_POINTS - 1) / TS_TRACE_POINTS;
    out->trace_len = 0;
    for (size_t i = 0; i < trace.size() && out->trace_len < TS_TRACE_POINTS; i += stride) {
      out->trace_iter[out->trace_len] = trace[i].first;
      out->trace_size[out->trace_len] = trace[i].second;
      ++out->trace_len;
    }
    if (best_coords)
      for (int i = 0; i < b->b.d; ++i) best_coords[i] = r.best.coords[i];
  });
}

void ts_nns_params_init(ts_nns_params* p) {
  if (!p) return;
  p->d = 32;
  p->n = 1 << 14;
  p->queries = 200;
  p->theta = 1.0471975511965976;
  p->beta = 1.0;
  p->recall_target = 0.9;
  p->seed = 1;
}

ts_status ts_nns_bench(const ts_nns_params* p, ts_nns_result* out) {
  if (ts_status s = require(p && out, "params or out is NULL")) return s;
  return guarded([&] {
    NnsBenchConfig cfg;
    cfg.d = p->d;
    cfg.n = p->n;
    cfg.queries = p->queries;
    cfg.theta = p->theta;
    cfg.beta = p->beta;
    cfg.recall_target = p->recall_target;
    cfg.seed = p->seed;
    const NnsBenchResult r = nns_bench(cfg);
    out->d = r.d;
    out->n = r.n;
    out->queries = r.queries;
    out->filters = r.filters;
    out->alpha_u = r.alpha_u;
    out->alpha_q = r.alpha_q;
    out->recall = r.recall;
    out->avg_candidates_per_query = r.avg_candidates_per_query;
    out->avg_filters_per_query = r.avg_filters_per_query;
    out->avg_filters_per_update = r.avg_filters_per_update;
    out->rho_u_pred = r.rho_u_pred;
    out->rho_q_pred = r.rho_q_pred;
    out->total_bucket_entries = r.total_bucket_entries;
    out->peak_bucket_entries = r.peak_bucket_entries;
    out->build_seconds = r.build_seconds;
    out->query_seconds = r.query_seconds;
  });
}

}  // extern "C"
