#pragma once

#include <cstdint>

#include "core/filters.hpp"

namespace tuplesieve {

struct NnsBenchConfig {
  int d = 32;
  std::int64_t n = 1 << 14;
  std::int64_t queries = 200;
  double theta = 1.0471975511965976;  // pi/3
  double beta = 1.0;
  double recall_target = 0.9;
  std::uint64_t seed = 1;
};

struct NnsBenchResult {
  int d = 0;
  std::int64_t n = 0;
  std::int64_t queries = 0;
  std::int64_t filters = 0;  // f
  double alpha_u = 0.0;
  double alpha_q = 0.0;
  double recall = 0.0;  // planted partners recovered with the correct sign
  double avg_candidates_per_query = 0.0;
  double avg_filters_per_query = 0.0;
  double avg_filters_per_update = 0.0;
  double rho_u_pred = 0.0;
  double rho_q_pred = 0.0;
  std::size_t total_bucket_entries = 0;
  std::size_t peak_bucket_entries = 0;
  double build_seconds = 0.0;
  double query_seconds = 0.0;
};

/// Random-instance benchmark: n uniform points with one planted partner at
/// angle theta per query point; measures recall and per-operation filter and
/// candidate counts against the exponent predictions in the plan.
NnsBenchResult nns_bench(const NnsBenchConfig& cfg);

}  // namespace tuplesieve
