#include "core/bench.hpp"

#include <chrono>
#include <cmath>

namespace tuplesieve {

NnsBenchResult nns_bench(const NnsBenchConfig& cfg) {
  if (cfg.n < 2) throw std::domain_error("nns_bench: n must be >= 2");
  if (cfg.queries < 1 || cfg.queries > cfg.n)
    throw std::domain_error("nns_bench: queries must be in [1, n]");
  Rng rng(cfg.seed);

  // queries[i] pairs with point i; the rest of the list is uniform
  std::vector<Vec> points(cfg.n);
  std::vector<Vec> queries(cfg.queries);
  const double ct = std::cos(cfg.theta);
  const double st = std::sin(cfg.theta);
  for (std::int64_t i = 0; i < cfg.queries; ++i) {
    queries[i] = sample_uniform(cfg.d, rng);
    // partner at angle theta: cos(theta) q + sin(theta) w with w orthogonal to q
    Vec w = sample_uniform(cfg.d, rng);
    const double c = dot(w, queries[i]);
    for (int t = 0; t < cfg.d; ++t) w[t] -= c * queries[i][t];
    normalize(w);
    points[i].resize(cfg.d);
    for (int t = 0; t < cfg.d; ++t) points[i][t] = ct * queries[i][t] + st * w[t];
  }
  for (std::int64_t i = cfg.queries; i < cfg.n; ++i) points[i] = sample_uniform(cfg.d, rng);

  NnsBenchResult res;
  res.d = cfg.d;
  res.n = cfg.n;
  res.queries = cfg.queries;

  FilterPlan plan = make_plan(cfg.d, cfg.n, cfg.theta, cfg.beta, cfg.recall_target, rng);
  res.filters = plan.f;
  res.alpha_u = plan.alpha_u;
  res.alpha_q = plan.alpha_q;
  res.rho_u_pred = plan.rho_u_pred;
  res.rho_q_pred = plan.rho_q_pred;
  FilterIndex index(std::move(plan));

  const auto t0 = std::chrono::steady_clock::now();
  for (std::int64_t i = 0; i < cfg.n; ++i) index.insert(i, points[i]);
  const auto t1 = std::chrono::steady_clock::now();

  const int match_sign = ct >= 0.0 ? 1 : -1;
  std::int64_t found = 0;
  double cand_total = 0.0;
  double qfilters_total = 0.0;
  for (std::int64_t i = 0; i < cfg.queries; ++i) {
    const auto hits = index.query(queries[i]);
    cand_total += static_cast<double>(hits.size());
    qfilters_total +=
        static_cast<double>(index.relevant_filters(queries[i], index.plan().alpha_q).size());
    for (const QueryHit& h : hits)
      if (h.id == i && h.sign == match_sign) {
        ++found;
        break;
      }
  }
  const auto t2 = std::chrono::steady_clock::now();

  res.recall = static_cast<double>(found) / cfg.queries;
  res.avg_candidates_per_query = cand_total / cfg.queries;
  res.avg_filters_per_query = qfilters_total / cfg.queries;
  res.avg_filters_per_update =
      static_cast<double>(index.total_bucket_entries()) / static_cast<double>(cfg.n);
  res.total_bucket_entries = index.total_bucket_entries();
  res.peak_bucket_entries = index.peak_bucket_entries();
  res.build_seconds = std::chrono::duration<double>(t1 - t0).count();
  res.query_seconds = std::chrono::duration<double>(t2 - t1).count();
  return res;
}

}  // namespace tuplesieve
