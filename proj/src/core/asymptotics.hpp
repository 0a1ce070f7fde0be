#pragma once

#include <vector>

#include "core/errors.hpp"

namespace tuplesieve {

// Exponent calculus for tuple sieving with spherical filters. Every quantity
// here is a per-dimension log2 exponent; concrete counts appear only in the
// executable modules.

/// log2(|L_k|)/d needed so that a k-tuple sieve keeps its output list as large
/// as its input list: (1/2) log2(k^{k/(k-1)} / (k+1)). Requires k >= 2.
double list_size_exponent(int k);

/// log2(n_i)/d, the expected filtered list size after k-i tuple members have
/// been fixed: (1/2) log2(k^{1/(k-1)} * i/(i+1)). Requires 1 <= i <= k.
double level_list_exponent(int k, int i);

/// log2(w_i)/d, the width of the enumeration-like tree at level i:
/// (1/2) log2(k^{(k-i)/(k-1)} * (i+1)/(k+1)). Requires 0 <= i <= k.
double level_width_exponent(int k, int i);

struct RhoPair {
  double rho_u;
  double rho_q;
};

/// Update/query exponents of the spherical filter data structure for list
/// density c = log2(n)/d, target angle theta and threshold ratio beta
/// (alpha_q = beta * alpha_u, alpha_u = sqrt(1 - 2^{-2c})).
/// The formulas are invariant under (theta, beta) -> (pi - theta, -beta), so
/// obtuse targets with negative beta are accepted directly. Values are clamped
/// at 0 from below. Throws EmptyWedgeError when no valid filter geometry
/// exists for the given parameters.
RhoPair rho_exponents(double c, double theta, double beta);

/// Sparse-regime (n = 2^{o(d)}) limits:
/// rho_u = (beta - cos theta)^2 / sin^2 theta,
/// rho_q = (1 - beta cos theta)^2 / sin^2 theta.
/// Requires theta in (0, pi/2) and beta in [cos theta, 1/cos theta).
RhoPair sparse_rho(double theta, double beta);

struct LevelProfile {
  int level = 0;        // i in 1..k
  double n_exp = 0.0;   // log2(n_i)/d
  double w_exp = 0.0;   // log2(w_i)/d
  double theta = 0.0;   // level target angle arccos(-1/i)
  double beta = 1.0;    // threshold ratio at the acute search angle
  double rho_u = 0.0;
  double rho_q = 0.0;
  bool has_nns = false;  // level runs a near neighbor structure
};

struct TradeoffProfile {
  int k = 0;
  double space_budget_exp = 0.0;
  std::vector<LevelProfile> levels;  // index 0 <-> level 1
  double space_exp = 0.0;
  double time_exp = 0.0;
};

/// Assemble total space/time exponents for tuple size k with explicit per-level
/// beta values (betas[j] is the ratio for level j+2, j = 0..k-2). Per-level
/// exponents are evaluated at the acute search angle arccos(1/i) with |beta|,
/// which is equivalent to the obtuse target under sign symmetry.
TradeoffProfile total_complexity(int k, const std::vector<double>& betas);

/// Same totals with near neighbor searching disabled (rho_u = 0, rho_q = 1 at
/// every level): the plain optimized configuration search.
TradeoffProfile total_complexity_naive(int k);

/// Minimize the time exponent subject to space_exp <= space_budget_exp over
/// the one-beta-per-level family: balanced (beta = 1) where it fits, otherwise
/// the unique beta < 1 with n_i^(1+rho_u) equal to the budget, by bisection.
/// Throws InfeasibleError when the budget is below the input list size.
TradeoffProfile optimize_time(int k, double space_budget_exp);

/// optimize_time over a grid of budgets.
std::vector<TradeoffProfile> tradeoff_curve(int k, const std::vector<double>& budgets);

}  // namespace tuplesieve
