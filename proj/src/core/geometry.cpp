#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace tuplesieve {

namespace {
constexpr double kWedgeTol = 1e-12;
}

double cap_exponent(double alpha) {
  if (!(std::fabs(alpha) < 1.0))
    throw std::domain_error("cap_exponent: |alpha| must be < 1");
  return 0.5 * std::log2(1.0 - alpha * alpha);
}

static double wedge_ratio(const WedgeParams& w) {
  const double s = std::sin(w.theta);
  if (!(w.theta > 0.0) || !(w.theta < M_PI) || s == 0.0)
    throw std::domain_error("wedge_exponent: theta must be in (0, pi)");
  if (!(std::fabs(w.alpha1) < 1.0) || !(std::fabs(w.alpha2) < 1.0))
    throw std::domain_error("wedge_exponent: thresholds must be in (-1, 1)");
  const double num = w.alpha1 * w.alpha1 + w.alpha2 * w.alpha2 -
                     2.0 * w.alpha1 * w.alpha2 * std::cos(w.theta);
  return num / (s * s);
}

bool wedge_nonempty(const WedgeParams& w) {
  return wedge_ratio(w) <= 1.0 + kWedgeTol;
}

double wedge_exponent(const WedgeParams& w) {
  const double r = wedge_ratio(w);
  if (r > 1.0 + kWedgeTol)
    throw EmptyWedgeError("wedge_exponent: caps do not intersect");
  return 0.5 * std::log2(std::max(1.0 - r, 0.0));
}

double wedge_exponent(double alpha1, double alpha2, double theta) {
  return wedge_exponent(WedgeParams{alpha1, alpha2, theta});
}

double exact_cap_fraction(int d, double alpha) {
  if (d < 2) throw std::domain_error("exact_cap_fraction: d must be >= 2");
  if (!(std::fabs(alpha) < 1.0))
    throw std::domain_error("exact_cap_fraction: |alpha| must be < 1");
  if (alpha < 0.0) return 1.0 - exact_cap_fraction(d, -alpha);
  if (alpha == 0.0) return 0.5;
  return 0.5 * boost::math::ibeta((d - 1) / 2.0, 0.5, 1.0 - alpha * alpha);
}

double exact_wedge_fraction(int d, const WedgeParams& w) {
  if (d < 4) throw std::domain_error("exact_wedge_fraction: d must be >= 4");
  if (!(w.theta > 0.0) || !(w.theta < M_PI))
    throw std::domain_error("exact_wedge_fraction: theta must be in (0, pi)");
  if (!(std::fabs(w.alpha1) < 1.0) || !(std::fabs(w.alpha2) < 1.0))
    throw std::domain_error("exact_wedge_fraction: thresholds must be in (-1, 1)");
  const double ct = std::cos(w.theta);
  const double st = std::sin(w.theta);
  // density of two orthonormal coordinates of a uniform point on S^{d-1}
  const double density = (d - 2) / (2.0 * M_PI);
  const double half_exp = (d - 4) / 2.0;

  using gauss_outer = boost::math::quadrature::gauss<double, 256>;
  using gauss_inner = boost::math::quadrature::gauss<double, 128>;

  auto inner = [&](double x) {
    const double rad = std::sqrt(std::max(0.0, 1.0 - x * x));
    const double lo = (w.alpha2 - ct * x) / st;  // second-cap constraint on y
    const double a = std::max(lo, -rad);
    if (a >= rad) return 0.0;
    auto f = [&](double y) {
      const double q = 1.0 - x * x - y * y;
      return q > 0.0 ? std::pow(q, half_exp) : 0.0;
    };
    return gauss_inner::integrate(f, a, rad);
  };
  if (w.alpha1 >= 1.0 - 1e-15) return 0.0;
  return density * gauss_outer::integrate(inner, w.alpha1, 1.0);
}

Vec sample_uniform(int d, Rng& rng) {
  if (d < 2) throw std::domain_error("sample_uniform: d must be >= 2");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec x(d);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& c : x) {
      c = gauss(rng);
      n2 += c * c;
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : x) c *= inv;
  return x;
}

double dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size())
    throw std::domain_error("dot: dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm(const Vec& x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

Vec& normalize(Vec& x) {
  const double n = norm(x);
  if (n == 0.0) throw std::domain_error("normalize: zero vector");
  for (auto& c : x) c /= n;
  return x;
}

double angle(const Vec& x, const Vec& y) {
  const double c = dot(x, y) / (norm(x) * norm(y));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace tuplesieve
