#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/filters.hpp"
#include "core/lattice.hpp"

namespace tuplesieve {

struct TupleSolution {
  std::vector<std::int64_t> ids;  // canonically sorted
  std::vector<int> signs;         // aligned with ids, first sign fixed +1
  double result_norm = 0.0;
};

enum class CandidateStrategy { kAuto, kFilter, kLinear };

struct SieveConfig {
  int k = 3;
  double epsilon = -1.0;  // < 0: default sqrt(ln d / d)
  double recall_target = 0.9;
  std::uint64_t seed = 1;
  double norm_bound = 1.0;
  CandidateStrategy strategy = CandidateStrategy::kAuto;
  // When set, the recursion appends the target angle of every level it enters.
  std::vector<double>* angle_trace = nullptr;
};

double default_epsilon(int d);

/// Lemma-2 band check: every unordered pair satisfies |<x_i, x_j> + 1/k| <= eps.
bool is_dominant_configuration(const std::vector<Vec>& xs, int k, double epsilon);

/// Rotate x_k onto e_d, drop the last coordinate and rescale by k/sqrt(k^2-1).
/// Maps target inner product -1/k to -1/(k-1); outputs are unit vectors when
/// inputs satisfy <y, x_k> = -1/k exactly.
std::vector<Vec> transform(int k, const std::vector<Vec>& list, const Vec& x_k);

/// Exact right-inverse of transform on its image; outputs satisfy
/// <out, x_k> = -1/k.
std::vector<Vec> inverse_transform(int k, const std::vector<Vec>& list, const Vec& x_k);

/// All k-tuples from L (2 <= k <= 4) whose pairwise inner products lie in the
/// Lemma-2 band and whose signed sum has norm < norm_bound. Sign freedom is
/// resolved at the outermost level (lattice lists are sign-symmetric); results
/// are canonicalized by sorted ids with the first sign positive.
std::vector<TupleSolution> tuple_sieve(int k, const std::vector<Vec>& list,
                                       const SieveConfig& config);

/// Best sign pattern over the 2^{k-1} choices (first sign fixed +1), exact
/// integer arithmetic. Returns the signs and the resulting norm.
std::pair<std::vector<int>, double> reduce_tuple(const std::vector<const LatticeVector*>& xs);

struct GaussSieveConfig {
  int k = 2;  // tuple size in {2, 3, 4}
  double epsilon = -1.0;
  double recall_target = 0.9;
  std::uint64_t seed = 1;
  double target_norm = 0.0;  // stop once the best norm is <= this (0: disabled)
  std::int64_t max_collisions = -1;  // stop after this many collisions; < 0: max(1000, |L|/10)
  std::int64_t max_iterations = 5'000'000;
  double space_budget_exp = -1.0;  // < 0: balanced for k=2, linear-space for k>=3
  CandidateStrategy strategy = CandidateStrategy::kAuto;
  double lll_delta = 0.99;
  bool keep_list = false;
};

struct GaussSieveStats {
  std::int64_t iterations = 0;
  std::int64_t collisions = 0;
  std::int64_t pair_reductions = 0;
  std::int64_t tuple_reductions = 0;
  std::size_t max_list_size = 0;
  std::size_t final_list_size = 0;
  std::size_t peak_bucket_entries = 0;
  double wall_seconds = 0.0;
  // (iteration, list size) samples for progress reporting
  std::vector<std::pair<std::int64_t, std::size_t>> list_trace;
};

struct GaussSieveResult {
  LatticeVector best;
  GaussSieveStats stats;
  std::vector<LatticeVector> final_list;  // populated when keep_list is set
};

/// GaussSieve SVP driver with pairwise and k-tuple reductions. The outer near
/// neighbor index follows list mutations (insert on add, remove on pop);
/// termination by target norm or a consecutive-non-improving-iterations
/// counter.
GaussSieveResult gauss_sieve(const Basis& basis, const GaussSieveConfig& config);

}  // namespace tuplesieve
