#include "core/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace tuplesieve {

double list_size_exponent(int k) {
  if (k < 2) throw std::domain_error("list_size_exponent: k must be >= 2");
  const double kk = static_cast<double>(k);
  return 0.5 * (kk / (kk - 1.0) * std::log2(kk) - std::log2(kk + 1.0));
}

double level_list_exponent(int k, int i) {
  if (k < 2) throw std::domain_error("level_list_exponent: k must be >= 2");
  if (i < 1 || i > k) throw std::domain_error("level_list_exponent: need 1 <= i <= k");
  const double kk = k, ii = i;
  return 0.5 * (std::log2(kk) / (kk - 1.0) + std::log2(ii / (ii + 1.0)));
}

double level_width_exponent(int k, int i) {
  if (k < 2) throw std::domain_error("level_width_exponent: k must be >= 2");
  if (i < 0 || i > k) throw std::domain_error("level_width_exponent: need 0 <= i <= k");
  const double kk = k, ii = i;
  return 0.5 * ((kk - ii) / (kk - 1.0) * std::log2(kk) + std::log2((ii + 1.0) / (kk + 1.0)));
}

RhoPair rho_exponents(double c, double theta, double beta) {
  if (!(c > 0.0)) throw std::domain_error("rho_exponents: need c > 0");
  const double s2 = std::sin(theta) * std::sin(theta);
  if (!(theta > 0.0) || !(theta < M_PI) || s2 == 0.0)
    throw std::domain_error("rho_exponents: theta must be in (0, pi)");
  const double t = std::exp2(-2.0 * c);  // n^{-2/d}
  const double num = 1.0 + beta * beta - 2.0 * beta * std::cos(theta);
  const double ratio = num / s2;
  const double br1 = 1.0 - (1.0 - t) * ratio;
  if (!(br1 > 0.0))
    throw EmptyWedgeError("rho_exponents: no valid filter geometry (empty wedge)");
  const double br2 = 1.0 - (1.0 - t) * beta * beta;
  if (!(br2 > 0.0))
    throw std::domain_error("rho_exponents: |beta| * alpha_u must be < 1");
  const double lt = std::log(t);
  const double rho_u = std::log(br1) / lt - 1.0;
  const double rho_q = (std::log(br1) - std::log(br2)) / lt;
  return {std::max(rho_u, 0.0), std::max(rho_q, 0.0)};
}

RhoPair sparse_rho(double theta, double beta) {
  if (!(theta > 0.0) || !(theta < M_PI / 2))
    throw std::domain_error("sparse_rho: theta must be in (0, pi/2)");
  const double ct = std::cos(theta);
  if (beta < ct - 1e-12 || beta >= 1.0 / ct)
    throw std::domain_error("sparse_rho: beta must be in [cos theta, 1/cos theta)");
  const double s2 = std::sin(theta) * std::sin(theta);
  const double du = beta - ct;
  const double dq = 1.0 - beta * ct;
  return {du * du / s2, dq * dq / s2};
}

namespace {

// One near-neighbor level of the cost model, at the acute search angle arccos(1/i).
LevelProfile make_level(int k, int i, double beta, bool naive) {
  LevelProfile lp;
  lp.level = i;
  lp.n_exp = level_list_exponent(k, i);
  lp.w_exp = level_width_exponent(k, i);
  lp.theta = std::acos(-1.0 / i);
  lp.beta = beta;
  if (i >= 2 && lp.n_exp > 0.0) {
    lp.has_nns = true;
    if (naive) {
      lp.rho_u = 0.0;
      lp.rho_q = 1.0;
    } else {
      const double acute = std::acos(1.0 / i);
      const RhoPair r = rho_exponents(lp.n_exp, acute, std::fabs(beta));
      lp.rho_u = r.rho_u;
      lp.rho_q = r.rho_q;
    }
  }
  return lp;
}

TradeoffProfile assemble(int k, std::vector<LevelProfile> levels, double budget) {
  TradeoffProfile p;
  p.k = k;
  p.space_budget_exp = budget;
  p.levels = std::move(levels);
  p.space_exp = 0.0;
  p.time_exp = 0.0;
  for (const auto& lp : p.levels) {
    const double space_i = std::max(lp.n_exp * (1.0 + lp.rho_u), lp.level == k ? lp.n_exp : 0.0);
    const double time_i =
        lp.w_exp + std::max({0.0, lp.n_exp * (1.0 + lp.rho_u), lp.n_exp * (1.0 + lp.rho_q)});
    p.space_exp = std::max(p.space_exp, space_i);
    p.time_exp = std::max(p.time_exp, time_i);
  }
  return p;
}

}  // namespace

TradeoffProfile total_complexity(int k, const std::vector<double>& betas) {
  if (k < 2) throw std::domain_error("total_complexity: k must be >= 2");
  if (betas.size() != static_cast<size_t>(k - 1))
    throw std::domain_error("total_complexity: need one beta per level 2..k");
  std::vector<LevelProfile> levels;
  for (int i = 1; i <= k; ++i) {
    const double beta = i >= 2 ? betas[i - 2] : 1.0;
    levels.push_back(make_level(k, i, beta, false));
  }
  return assemble(k, std::move(levels), list_size_exponent(k));
}

TradeoffProfile total_complexity_naive(int k) {
  if (k < 2) throw std::domain_error("total_complexity_naive: k must be >= 2");
  std::vector<LevelProfile> levels;
  for (int i = 1; i <= k; ++i) levels.push_back(make_level(k, i, 1.0, true));
  return assemble(k, std::move(levels), list_size_exponent(k));
}

TradeoffProfile optimize_time(int k, double space_budget_exp) {
  if (k < 2) throw std::domain_error("optimize_time: k must be >= 2");
  const double n_k = list_size_exponent(k);
  if (space_budget_exp < n_k - 1e-9)
    throw InfeasibleError(
        "optimize_time: available memory is less than the size of the input/output lists");
  std::vector<LevelProfile> levels;
  for (int i = 1; i <= k; ++i) {
    double beta = 1.0;
    const double c = i >= 2 ? level_list_exponent(k, i) : -1.0;
    if (i >= 2 && c > 0.0) {
      const double acute = std::acos(1.0 / i);
      RhoPair bal = rho_exponents(c, acute, 1.0);
      if (c * (1.0 + bal.rho_u) > space_budget_exp + 1e-12) {
        // Balanced choice exceeds the budget: decrease beta until the level's
        // space n_i^(1+rho_u) meets the budget. rho_u is increasing in beta on
        // [cos theta, 1], so bisection applies.
        double lo = std::cos(acute), hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
          const double mid = 0.5 * (lo + hi);
          const RhoPair r = rho_exponents(c, acute, mid);
          if (c * (1.0 + r.rho_u) > space_budget_exp)
            hi = mid;
          else
            lo = mid;
        }
        beta = lo;
      }
    }
    levels.push_back(make_level(k, i, beta, false));
  }
  return assemble(k, std::move(levels), space_budget_exp);
}

std::vector<TradeoffProfile> tradeoff_curve(int k, const std::vector<double>& budgets) {
  std::vector<TradeoffProfile> out;
  out.reserve(budgets.size());
  for (double b : budgets) out.push_back(optimize_time(k, b));
  return out;
}

}  // namespace tuplesieve
