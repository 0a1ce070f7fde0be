#pragma once

#include <cstdint>

#include "core/sieve.hpp"

namespace tuplesieve {

// Independent reference implementations: exhaustive search and numerically
// exact volume formulas used to validate the sieving and filter modules.

/// Exhaustive k-tuple search over all index combinations and sign patterns
/// (first sign fixed +1): every pair in the -1/k band of width epsilon and the
/// signed sum shorter than norm_bound. Guards against |L|^k > 1e9 work.
std::vector<TupleSolution> brute_force_tuples(int k, const std::vector<Vec>& list,
                                              double epsilon, double norm_bound);

/// All list entries with |<q, x>| >= alpha, by linear scan; sign is the side
/// on which the threshold was met.
std::vector<QueryHit> linear_nn(const Vec& q, const std::vector<Vec>& list, double alpha);

struct McEstimate {
  double fraction = 0.0;
  double exponent = 0.0;  // log2(fraction) / d
  double stderr_fraction = 0.0;
  std::int64_t hits = 0;
  std::int64_t samples = 0;
  bool censored = false;  // no hits observed: fraction below MC resolution
};

McEstimate mc_cap_fraction(int d, double alpha, std::int64_t samples, Rng& rng);
McEstimate mc_wedge_fraction(int d, const WedgeParams& w, std::int64_t samples, Rng& rng);

/// Exact shortest nonzero vector by enumerating the coefficient box
/// [-radius, radius]^d over the LLL-reduced basis. Guarded against boxes
/// larger than ~2^28 points.
LatticeVector enumerate_shortest(const Basis& b, int coeff_radius = 4);

}  // namespace tuplesieve
