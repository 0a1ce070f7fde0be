#include "core/bruteforce.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace tuplesieve {

namespace {

Vec unit_copy(const Vec& x) {
  Vec u = x;
  return normalize(u);
}

}  // namespace

std::vector<TupleSolution> brute_force_tuples(int k, const std::vector<Vec>& list,
                                              double epsilon, double norm_bound) {
  if (k < 2 || k > 4) throw std::domain_error("brute_force_tuples: k must be in [2, 4]");
  const auto n = static_cast<std::int64_t>(list.size());
  double work = 1.0;
  for (int i = 0; i < k; ++i) work *= static_cast<double>(n);
  if (work > 1e9) throw InfeasibleError("brute_force_tuples: |L|^k exceeds the work guard");
  if (n == 0) return {};
  const int d = static_cast<int>(list.front().size());

  std::vector<Vec> units;
  units.reserve(list.size());
  for (const Vec& x : list) units.push_back(unit_copy(x));

  const double target = -1.0 / k;
  std::vector<TupleSolution> out;
  std::vector<std::int64_t> idx(k);
  std::vector<int> signs(k, +1);

  auto emit = [&]() {
    // all sign patterns with the leading sign positive
    for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
      for (int i = 1; i < k; ++i) signs[i] = (mask >> (i - 1)) & 1 ? -1 : +1;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i)
        for (int j = i + 1; j < k && ok; ++j) {
          const double c = signs[i] * signs[j] * dot(units[idx[i]], units[idx[j]]);
          if (std::fabs(c - target) > epsilon) ok = false;
        }
      if (!ok) continue;
      Vec sum(d, 0.0);
      for (int i = 0; i < k; ++i)
        for (int t = 0; t < d; ++t) sum[t] += signs[i] * units[idx[i]][t];
      const double nrm = norm(sum);
      if (nrm < norm_bound)
        out.push_back({idx, std::vector<int>(signs.begin(), signs.begin() + k), nrm});
    }
  };

  // nested combinations i1 < i2 < ... < ik
  auto rec = [&](auto&& self, int depth, std::int64_t start) -> void {
    if (depth == k) {
      emit();
      return;
    }
    for (std::int64_t i = start; i < n; ++i) {
      idx[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end(),
            [](const TupleSolution& a, const TupleSolution& b) {
              return std::tie(a.ids, a.signs) < std::tie(b.ids, b.signs);
            });
  return out;
}

std::vector<QueryHit> linear_nn(const Vec& q, const std::vector<Vec>& list, double alpha) {
  std::vector<QueryHit> hits;
  for (size_t i = 0; i < list.size(); ++i) {
    const double c = dot(q, list[i]);
    if (std::fabs(c) >= alpha) hits.push_back({static_cast<std::int64_t>(i), c >= 0 ? 1 : -1});
  }
  return hits;
}

namespace {

McEstimate finish_mc(int d, std::int64_t hits, std::int64_t samples) {
  McEstimate e;
  e.hits = hits;
  e.samples = samples;
  e.fraction = static_cast<double>(hits) / static_cast<double>(samples);
  e.censored = hits == 0;
  if (!e.censored) {
    e.exponent = std::log2(e.fraction) / d;
    e.stderr_fraction = std::sqrt(e.fraction * (1.0 - e.fraction) / samples);
  }
  return e;
}

}  // namespace

McEstimate mc_cap_fraction(int d, double alpha, std::int64_t samples, Rng& rng) {
  if (samples < 1) throw std::domain_error("mc_cap_fraction: samples must be >= 1");
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const Vec v = sample_uniform(d, rng);
    if (v[0] >= alpha) ++hits;
  }
  return finish_mc(d, hits, samples);
}

McEstimate mc_wedge_fraction(int d, const WedgeParams& w, std::int64_t samples, Rng& rng) {
  if (samples < 1) throw std::domain_error("mc_wedge_fraction: samples must be >= 1");
  if (!(w.theta > 0.0) || !(w.theta < M_PI))
    throw std::domain_error("mc_wedge_fraction: theta must be in (0, pi)");
  const double ct = std::cos(w.theta);
  const double st = std::sin(w.theta);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const Vec v = sample_uniform(d, rng);
    // cap centers e1 and cos(theta) e1 + sin(theta) e2
    if (v[0] >= w.alpha1 && ct * v[0] + st * v[1] >= w.alpha2) ++hits;
  }
  return finish_mc(d, hits, samples);
}

LatticeVector enumerate_shortest(const Basis& b, int coeff_radius) {
  if (coeff_radius < 1) throw std::domain_error("enumerate_shortest: radius must be >= 1");
  Basis red = b;
  lll_reduce(red);
  const int d = red.d;
  const double box = std::pow(2.0 * coeff_radius + 1.0, d);
  if (box > 3e8) throw InfeasibleError("enumerate_shortest: coefficient box too large");

  std::vector<std::int64_t> coeffs(d, 0), best_coeffs;
  std::vector<std::int64_t> acc(d, 0);  // running coordinate sum
  __int128 best = -1;

  auto rec = [&](auto&& self, int i) -> void {
    if (i == d) {
      __int128 n2 = 0;
      for (int t = 0; t < d; ++t) n2 += static_cast<__int128>(acc[t]) * acc[t];
      if (n2 > 0 && (best < 0 || n2 < best)) {
        best = n2;
        best_coeffs = coeffs;
      }
      return;
    }
    // half box at the first free coordinate: v and -v have equal norm
    bool leading = true;
    for (int t = 0; t < i; ++t)
      if (coeffs[t] != 0) leading = false;
    const int lo = leading ? 0 : -coeff_radius;
    for (int z = lo; z <= coeff_radius; ++z) {
      coeffs[i] = z;
      for (int t = 0; t < d; ++t) acc[t] += z * red.rows[i][t];
      self(self, i + 1);
      for (int t = 0; t < d; ++t) acc[t] -= z * red.rows[i][t];
    }
    coeffs[i] = 0;
  };
  rec(rec, 0);
  if (best < 0) throw InfeasibleError("enumerate_shortest: no nonzero vector in the box");
  return make_lattice_vector(red, best_coeffs);
}

}  // namespace tuplesieve
