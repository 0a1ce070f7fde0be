// Command-line frontend: SVP solving, exponent tables, tradeoff curves and
// filter benchmarks, all through the shared-library C interface.

#include <clocale>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tuplesieve/tuplesieve.h"

namespace {

using nlohmann::json;

constexpr int kExitError = 2;

int die(ts_status s) {
  std::cerr << "error: " << ts_last_error() << "\n";
  (void)s;
  return kExitError;
}

// Fixed formatting helpers: CSV output must be byte-stable with '.' decimals.
std::string num4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

std::string num_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double linear_space_budget(int k) {
  double s = 0.0;
  ts_list_size_exponent(k, &s);
  return s;
}

int cmd_solve(const std::string& basis_path, int k, double space_budget, double epsilon,
              std::uint64_t seed, double target_ratio, std::int64_t max_collisions,
              std::int64_t max_iters, bool as_json) {
  ts_basis* basis = nullptr;
  if (ts_status s = ts_basis_read_file(basis_path.c_str(), &basis)) return die(s);
  const int d = ts_basis_dim(basis);

  double gh = 0.0;
  if (ts_status s = ts_basis_gaussian_heuristic(basis, &gh)) {
    ts_basis_free(basis);
    return die(s);
  }

  ts_sieve_params params;
  ts_sieve_params_init(&params);
  params.k = k;
  params.epsilon = epsilon;
  params.seed = seed;
  params.space_budget_exp = space_budget;
  params.target_norm = target_ratio * gh;
  if (max_collisions >= 0) params.max_collisions = max_collisions;
  if (max_iters > 0) params.max_iterations = max_iters;

  ts_sieve_result res;
  std::vector<std::int64_t> coords(d, 0);
  if (ts_status s = ts_gauss_sieve(basis, &params, &res, coords.data())) {
    ts_basis_free(basis);
    return die(s);
  }
  ts_basis_free(basis);

  const double ratio = gh > 0.0 ? res.best_norm / gh : 0.0;
  if (as_json) {
    json j;
    j["dim"] = d;
    j["k"] = k;
    j["seed"] = seed;
    j["best_vector"] = coords;
    j["best_norm"] = res.best_norm;
    j["gaussian_heuristic"] = gh;
    j["ratio"] = ratio;
    j["target_ratio"] = target_ratio;
    j["iterations"] = res.iterations;
    j["collisions"] = res.collisions;
    j["pair_reductions"] = res.pair_reductions;
    j["tuple_reductions"] = res.tuple_reductions;
    j["max_list_size"] = res.max_list_size;
    j["final_list_size"] = res.final_list_size;
    j["peak_bucket_entries"] = res.peak_bucket_entries;
    j["wall_seconds"] = res.wall_seconds;
    json trace = json::array();
    for (int i = 0; i < res.trace_len; ++i)
      trace.push_back({{"iteration", res.trace_iter[i]}, {"list_size", res.trace_size[i]}});
    j["list_size_trace"] = trace;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "dim:                 " << d << "\n";
    std::cout << "k:                   " << k << "\n";
    std::cout << "best vector:         [";
    for (int i = 0; i < d; ++i) std::cout << (i ? " " : "") << coords[i];
    std::cout << "]\n";
    std::cout << "best norm:           " << num_full(res.best_norm) << "\n";
    std::cout << "gaussian heuristic:  " << num_full(gh) << "\n";
    std::cout << "norm/GH ratio:       " << num4(ratio) << " (target " << num4(target_ratio)
              << ")\n";
    std::cout << "iterations:          " << res.iterations << "\n";
    std::cout << "collisions:          " << res.collisions << "\n";
    std::cout << "wall time:           " << num4(res.wall_seconds) << " s\n";
    std::cout << "peak bucket entries: " << res.peak_bucket_entries << "\n";
    std::cout << "list size over time:";
    for (int i = 0; i < res.trace_len; ++i)
      std::cout << " " << res.trace_iter[i] << ":" << res.trace_size[i];
    std::cout << "\n";
  }
  return ratio <= target_ratio ? 0 : 1;
}

int cmd_asym_table(int kmax, const std::string& format) {
  if (kmax < 2) {
    std::cerr << "error: kmax must be >= 2\n";
    return kExitError;
  }
  const bool csv = format == "csv";
  if (csv)
    std::cout << "k,space_exp,time_exp\n";
  else
    std::cout << "  k   space    time\n";
  for (int k = 2; k <= kmax; ++k) {
    ts_tradeoff t;
    if (ts_status s = ts_optimize_time(k, linear_space_budget(k), &t)) return die(s);
    if (csv)
      std::cout << k << "," << num_full(t.space_exp) << "," << num_full(t.time_exp) << "\n";
    else
      std::cout << (k < 10 ? "  " : " ") << k << "  " << num4(t.space_exp) << "  "
                << num4(t.time_exp) << "\n";
  }
  return 0;
}

int cmd_tradeoff(int k, double min_space, double max_space, int steps, const std::string& out,
                 bool naive) {
  if (steps < 1 || !(max_space >= min_space)) {
    std::cerr << "error: invalid budget range\n";
    return kExitError;
  }
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty() && out != "-") {
    file.open(out, std::ios::binary);  // binary: LF line endings everywhere
    if (!file) {
      std::cerr << "error: cannot open output file " << out << "\n";
      return kExitError;
    }
    os = &file;
  }
  *os << "k,space_exp,time_exp";
  for (int i = 2; i <= k; ++i) *os << ",beta_" << i;
  for (int i = 2; i <= k; ++i) *os << ",rho_u_" << i;
  for (int i = 2; i <= k; ++i) *os << ",rho_q_" << i;
  *os << "\n";
  for (int step = 0; step < steps; ++step) {
    const double budget =
        steps == 1 ? min_space
                   : min_space + (max_space - min_space) * step / (steps - 1);
    ts_tradeoff t;
    ts_status s;
    if (naive)
      s = ts_total_complexity_naive(k, &t);
    else
      s = ts_optimize_time(k, budget, &t);
    if (s) return die(s);
    *os << k << "," << num_full(t.space_exp) << "," << num_full(t.time_exp);
    for (int i = 1; i < t.num_levels; ++i) *os << "," << num_full(t.levels[i].beta);
    for (int i = 1; i < t.num_levels; ++i) *os << "," << num_full(t.levels[i].rho_u);
    for (int i = 1; i < t.num_levels; ++i) *os << "," << num_full(t.levels[i].rho_q);
    *os << "\n";
  }
  return 0;
}

int cmd_nns_bench(int d, std::int64_t n, double theta, double beta, double recall_target,
                  std::int64_t pairs, std::uint64_t seed, bool as_json) {
  ts_nns_params params;
  ts_nns_params_init(&params);
  params.d = d;
  params.n = n;
  params.queries = pairs;
  params.theta = theta;
  params.beta = beta;
  params.recall_target = recall_target;
  params.seed = seed;

  ts_nns_result r;
  if (ts_status s = ts_nns_bench(&params, &r)) return die(s);

  const double logn = std::log2(static_cast<double>(r.n));
  const double rho_q_obs =
      std::log2(std::max(1.0, r.avg_candidates_per_query)) / logn;
  const double rho_u_obs =
      std::log2(std::max(1.0, r.avg_filters_per_update)) / logn;
  if (as_json) {
    json j;
    j["d"] = r.d;
    j["n"] = r.n;
    j["queries"] = r.queries;
    j["filters"] = r.filters;
    j["alpha_u"] = r.alpha_u;
    j["alpha_q"] = r.alpha_q;
    j["recall"] = r.recall;
    j["avg_candidates_per_query"] = r.avg_candidates_per_query;
    j["avg_filters_per_query"] = r.avg_filters_per_query;
    j["avg_filters_per_update"] = r.avg_filters_per_update;
    j["rho_u_pred"] = r.rho_u_pred;
    j["rho_q_pred"] = r.rho_q_pred;
    j["rho_u_obs"] = rho_u_obs;
    j["rho_q_obs"] = rho_q_obs;
    j["total_bucket_entries"] = r.total_bucket_entries;
    j["peak_bucket_entries"] = r.peak_bucket_entries;
    j["build_seconds"] = r.build_seconds;
    j["query_seconds"] = r.query_seconds;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "d:                       " << r.d << "\n";
    std::cout << "n:                       " << r.n << "\n";
    std::cout << "filters:                 " << r.filters << "\n";
    std::cout << "alpha_u / alpha_q:       " << num4(r.alpha_u) << " / " << num4(r.alpha_q)
              << "\n";
    std::cout << "recall:                  " << num4(r.recall) << "\n";
    std::cout << "candidates per query:    " << num4(r.avg_candidates_per_query) << "\n";
    std::cout << "filters per query:       " << num4(r.avg_filters_per_query) << "\n";
    std::cout << "filters per update:      " << num4(r.avg_filters_per_update) << "\n";
    std::cout << "rho_u pred / observed:   " << num4(r.rho_u_pred) << " / " << num4(rho_u_obs)
              << "\n";
    std::cout << "rho_q pred / observed:   " << num4(r.rho_q_pred) << " / " << num4(rho_q_obs)
              << "\n";
    std::cout << "peak bucket entries:     " << r.peak_bucket_entries << "\n";
    std::cout << "build / query seconds:   " << num4(r.build_seconds) << " / "
              << num4(r.query_seconds) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"tuple lattice sieving toolkit"};
  app.require_subcommand(1);

  // solve
  std::string basis_path;
  int k = 2;
  double space_budget = -1.0;
  double epsilon = -1.0;
  std::uint64_t seed = 1;
  double target_ratio = 1.05;
  std::int64_t max_collisions = -1;
  std::int64_t max_iters = 0;
  bool as_json = false;
  auto* solve = app.add_subcommand("solve", "find a short lattice vector with the sieve");
  solve->add_option("--basis", basis_path, "basis file, bracketed integer rows")->required();
  solve->add_option("--k", k, "tuple size")->check(CLI::Range(2, 4));
  solve->add_option("--space-budget", space_budget, "per-dimension log2 memory budget");
  solve->add_option("--epsilon", epsilon, "configuration band width");
  solve->add_option("--seed", seed, "rng seed");
  solve->add_option("--target-ratio", target_ratio, "stop at norm <= ratio * GH");
  solve->add_option("--max-collisions", max_collisions, "collision budget before stopping");
  solve->add_option("--max-iterations", max_iters, "hard iteration cap");
  solve->add_flag("--json", as_json, "machine-readable report");

  // asym-table
  int kmax = 10;
  std::string format = "text";
  auto* table = app.add_subcommand("asym-table", "per-k linear-space exponent table");
  table->add_option("--kmax", kmax, "largest tuple size");
  table->add_option("--format", format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  // tradeoff
  int tk = 3;
  double min_space = 0.18;
  double max_space = 0.30;
  int steps = 25;
  std::string out_path;
  bool naive = false;
  auto* tradeoff = app.add_subcommand("tradeoff", "space-time tradeoff curve as CSV");
  tradeoff->add_option("--k", tk, "tuple size");
  tradeoff->add_option("--min-space", min_space, "smallest budget exponent");
  tradeoff->add_option("--max-space", max_space, "largest budget exponent");
  tradeoff->add_option("--steps", steps, "number of budget points");
  tradeoff->add_option("--out", out_path, "output CSV path ('-' for stdout)");
  tradeoff->add_flag("--naive", naive, "disable near neighbor search in the model");

  // nns-bench
  int dim = 32;
  std::int64_t n = 1 << 14;
  double theta = std::acos(-0.5);
  double beta = 1.0;
  double recall_target = 0.9;
  std::int64_t pairs = 200;
  std::uint64_t bench_seed = 1;
  bool bench_json = false;
  auto* bench = app.add_subcommand("nns-bench", "planted-pair filter benchmark");
  bench->add_option("--dim", dim, "dimension");
  bench->add_option("--n", n, "list size");
  bench->add_option("--theta", theta, "target angle (radians)");
  bench->add_option("--beta", beta, "query/update threshold ratio");
  bench->add_option("--recall-target", recall_target, "planned recall");
  bench->add_option("--pairs", pairs, "planted pairs / queries");
  bench->add_option("--seed", bench_seed, "rng seed");
  bench->add_flag("--json", bench_json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  if (solve->parsed())
    return cmd_solve(basis_path, k, space_budget, epsilon, seed, target_ratio, max_collisions,
                     max_iters, as_json);
  if (table->parsed()) return cmd_asym_table(kmax, format);
  if (tradeoff->parsed()) return cmd_tradeoff(tk, min_space, max_space, steps, out_path, naive);
  if (bench->parsed())
    return cmd_nns_bench(dim, n, theta, beta, recall_target, pairs, bench_seed, bench_json);
  return kExitError;
}
