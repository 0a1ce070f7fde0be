#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "core/errors.hpp"

namespace tuplesieve {

using Vec = std::vector<double>;
using Rng = std::mt19937_64;

// All volume functions work at the exponent level: they return c such that the
// relative volume scales as 2^{c*d + o(d)}. Polynomial-in-d factors are dropped.

/// Per-dimension log2 of the relative volume of a spherical cap with inner
/// product threshold alpha. Requires |alpha| < 1; negative alpha (caps past
/// the equator) is accepted.
double cap_exponent(double alpha);

struct WedgeParams {
  double alpha1;
  double alpha2;
  double theta;  // angle between the two cap centers, radians, in (0, pi)
};

/// True iff the wedge has nonempty interior (up to a small tolerance).
bool wedge_nonempty(const WedgeParams& w);

/// Per-dimension log2 of the relative volume of the intersection of two caps.
/// Throws EmptyWedgeError when the caps do not intersect, std::domain_error
/// for theta in {0, pi} or thresholds outside (-1, 1).
double wedge_exponent(const WedgeParams& w);
double wedge_exponent(double alpha1, double alpha2, double theta);

/// Exact relative cap volume (1/2) I_{1-alpha^2}((d-1)/2, 1/2) via the
/// regularized incomplete beta function. Valid for any d >= 2, |alpha| < 1.
double exact_cap_fraction(int d, double alpha);

/// Exact relative wedge volume by 2-D Gauss-Legendre quadrature of the joint
/// two-coordinate sphere density (d - 2)/(2 pi) (1 - x^2 - y^2)^{(d-4)/2}.
/// Requires d >= 4.
double exact_wedge_fraction(int d, const WedgeParams& w);

/// Uniform sample from S^{d-1}. Requires d >= 2. The rng is caller-owned so
/// experiments stay reproducible.
Vec sample_uniform(int d, Rng& rng);

double dot(const Vec& x, const Vec& y);
double norm(const Vec& x);
Vec& normalize(Vec& x);

/// Common angle phi(x, y) = arccos(<x,y>/(|x||y|)), in [0, pi].
double angle(const Vec& x, const Vec& y);

}  // namespace tuplesieve
