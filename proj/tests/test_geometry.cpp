#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "core/geometry.hpp"
#include "doctest.h"

using namespace tuplesieve;

TEST_CASE("cap exponent closed forms") {
  // C(alpha) = 2^{d/2 log2(1-alpha^2) + o(d)}
  CHECK(cap_exponent(0.0) == doctest::Approx(0.0));
  CHECK(cap_exponent(0.5) == doctest::Approx(0.5 * std::log2(0.75)).epsilon(1e-12));
  CHECK(cap_exponent(0.5) == doctest::Approx(-0.2075187496).epsilon(1e-8));
  CHECK(cap_exponent(-0.5) == cap_exponent(0.5));  // exponent ignores the dominant half
}

TEST_CASE("cap exponent is decreasing in |alpha|") {
  double prev = cap_exponent(0.05);
  for (double a = 0.1; a < 0.95; a += 0.05) {
    const double cur = cap_exponent(a);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("cap exponent domain") {
  CHECK_THROWS_AS(cap_exponent(1.0), std::domain_error);
  CHECK_THROWS_AS(cap_exponent(-1.0), std::domain_error);
  CHECK_THROWS_AS(cap_exponent(1.5), std::domain_error);
}

TEST_CASE("wedge exponent: symmetric pi/3 landmark") {
  // W(1/2, 1/2, pi/3) = 2^{-0.2925 d + o(d)}
  CHECK(wedge_exponent(0.5, 0.5, M_PI / 3) == doctest::Approx(-0.2925).epsilon(0.0002));
  CHECK(wedge_exponent(0.5, 0.5, M_PI / 3) ==
        doctest::Approx(0.5 * std::log2(2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("wedge is smaller than either cap") {
  for (double theta : {0.6, 1.0, M_PI / 3, 1.4}) {
    for (double a1 : {0.2, 0.4, 0.6}) {
      for (double a2 : {0.2, 0.4, 0.5}) {
        WedgeParams w{a1, a2, theta};
        if (!wedge_nonempty(w)) continue;
        const double we = wedge_exponent(w);
        CHECK(we <= cap_exponent(a1) + 1e-12);
        CHECK(we <= cap_exponent(a2) + 1e-12);
      }
    }
  }
}

TEST_CASE("wedge symmetry in the two thresholds") {
  CHECK(wedge_exponent(0.3, 0.6, 1.1) == doctest::Approx(wedge_exponent(0.6, 0.3, 1.1)));
}

TEST_CASE("empty wedge detection") {
  // far-apart caps with high thresholds cannot intersect
  WedgeParams w{0.9, 0.9, 2.0};
  CHECK_FALSE(wedge_nonempty(w));
  CHECK_THROWS_AS(wedge_exponent(w), EmptyWedgeError);
  CHECK(wedge_nonempty({0.5, 0.5, M_PI / 3}));
}

TEST_CASE("wedge domain errors") {
  CHECK_THROWS_AS(wedge_exponent(0.5, 0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(wedge_exponent(0.5, 0.5, M_PI), std::domain_error);
  CHECK_THROWS_AS(wedge_exponent(1.0, 0.5, 1.0), std::domain_error);
}

TEST_CASE("uniform sphere samples are unit and reproducible") {
  Rng rng(42);
  Vec prev;
  for (int i = 0; i < 100; ++i) {
    const Vec v = sample_uniform(24, rng);
    REQUIRE(v.size() == 24);
    CHECK(std::fabs(norm(v) - 1.0) < 1e-9);
    if (!prev.empty()) CHECK(std::fabs(dot(v, prev)) < 0.999);
    prev = v;
  }
  Rng a(7), b(7);
  CHECK(sample_uniform(16, a) == sample_uniform(16, b));
  CHECK_THROWS_AS(sample_uniform(1, rng), std::domain_error);
}

TEST_CASE("uniform samples have near-zero mean inner product") {
  Rng rng(3);
  const Vec q = sample_uniform(32, rng);
  double acc = 0.0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) acc += dot(q, sample_uniform(32, rng));
  CHECK(std::fabs(acc / trials) < 0.02);
}

TEST_CASE("angle basics") {
  Vec e1{1.0, 0.0, 0.0}, e2{0.0, 1.0, 0.0};
  CHECK(angle(e1, e2) == doctest::Approx(M_PI / 2));
  CHECK(angle(e1, e1) == doctest::Approx(0.0));
  Vec m{-2.0, 0.0, 0.0};
  CHECK(angle(e1, m) == doctest::Approx(M_PI));
}
