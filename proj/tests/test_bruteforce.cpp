#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "core/bruteforce.hpp"
#include "doctest.h"

using namespace tuplesieve;

namespace {

Basis parse(const std::string& s) { return parse_basis(s); }

}  // namespace

TEST_CASE("exact cap fraction basics") {
  CHECK(exact_cap_fraction(10, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(exact_cap_fraction(10, -0.3) ==
        doctest::Approx(1.0 - exact_cap_fraction(10, 0.3)).epsilon(1e-12));
  // d = 3 caps have closed form (1 - alpha) / 2
  for (double a : {0.1, 0.4, 0.7})
    CHECK(exact_cap_fraction(3, a) == doctest::Approx((1.0 - a) / 2.0).epsilon(1e-10));
  CHECK_THROWS_AS(exact_cap_fraction(10, 1.0), std::domain_error);
}

TEST_CASE("monte carlo agrees with the exact cap volume") {
  Rng rng(1);
  for (double a : {0.2, 0.5}) {
    const McEstimate e = mc_cap_fraction(12, a, 200000, rng);
    const double exact = exact_cap_fraction(12, a);
    CHECK_FALSE(e.censored);
    CHECK(std::fabs(e.fraction - exact) < 5.0 * e.stderr_fraction + 1e-9);
  }
}

TEST_CASE("monte carlo agrees with the exact wedge volume") {
  Rng rng(2);
  const WedgeParams w{0.3, 0.3, M_PI / 3};
  const McEstimate e = mc_wedge_fraction(10, w, 300000, rng);
  const double exact = exact_wedge_fraction(10, w);
  CHECK_FALSE(e.censored);
  CHECK(std::fabs(e.fraction - exact) < 5.0 * e.stderr_fraction + 1e-9);
}

TEST_CASE("wedge fraction is bounded by both caps and positive when nonempty") {
  const WedgeParams w{0.4, 0.5, 1.2};
  const double f = exact_wedge_fraction(24, w);
  CHECK(f > 0.0);
  CHECK(f <= exact_cap_fraction(24, 0.4));
  CHECK(f <= exact_cap_fraction(24, 0.5));
}

TEST_CASE("per-dimension exact exponents converge to the asymptotic formulas") {
  // the polynomial prefactor vanishes per-dimension: the gap must shrink
  const double alpha = 0.5;
  const double target_cap = cap_exponent(alpha);
  const double gap_small = std::fabs(std::log2(exact_cap_fraction(30, alpha)) / 30 - target_cap);
  const double gap_large = std::fabs(std::log2(exact_cap_fraction(240, alpha)) / 240 - target_cap);
  CHECK(gap_large < gap_small);
  CHECK(gap_large < 0.02);

  const WedgeParams w{0.5, 0.5, M_PI / 3};
  const double target_wedge = wedge_exponent(w);
  const double wg_small = std::fabs(std::log2(exact_wedge_fraction(30, w)) / 30 - target_wedge);
  const double wg_large = std::fabs(std::log2(exact_wedge_fraction(240, w)) / 240 - target_wedge);
  CHECK(wg_large < wg_small);
  CHECK(wg_large < 0.035);
}

TEST_CASE("censoring is flagged for unobservably small volumes") {
  Rng rng(3);
  const McEstimate e = mc_cap_fraction(60, 0.9, 1000, rng);
  CHECK(e.censored);
  CHECK(e.hits == 0);
}

TEST_CASE("linear_nn finds exactly the threshold matches") {
  Rng rng(4);
  std::vector<Vec> list;
  for (int i = 0; i < 100; ++i) list.push_back(sample_uniform(10, rng));
  const Vec q = sample_uniform(10, rng);
  const auto hits = linear_nn(q, list, 0.4);
  int count = 0;
  for (int i = 0; i < 100; ++i)
    if (std::fabs(dot(q, list[i])) >= 0.4) ++count;
  CHECK(static_cast<int>(hits.size()) == count);
  for (const QueryHit& h : hits)
    CHECK(h.sign * dot(q, list[h.id]) >= 0.4);
}

TEST_CASE("brute force tuples: guard and soundness") {
  std::vector<Vec> big(4000, Vec(4, 0.5));
  CHECK_THROWS_AS(brute_force_tuples(3, big, 0.1, 1.0), InfeasibleError);

  // handcrafted triple: three unit vectors at pairwise inner product -1/2
  // (planar 120-degree star) sum to zero, well under any norm bound
  std::vector<Vec> list{{1.0, 0.0, 0.0}, {-0.5, std::sqrt(3.0) / 2.0, 0.0},
                        {-0.5, -std::sqrt(3.0) / 2.0, 0.0}};
  const auto sols = brute_force_tuples(3, list, 0.2, 0.5);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].ids == std::vector<std::int64_t>{0, 1, 2});
  CHECK(sols[0].signs == std::vector<int>{1, 1, 1});
  CHECK(sols[0].result_norm == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("enumerate_shortest on known lattices") {
  CHECK(enumerate_shortest(parse("[[1 0][0 1]]")).norm_sq == doctest::Approx(1.0));
  CHECK(enumerate_shortest(parse("[[2 0][1 1]]")).norm_sq == doctest::Approx(2.0));
  // scaled lattice scales the answer
  CHECK(enumerate_shortest(parse("[[6 0][3 3]]")).norm_sq == doctest::Approx(18.0));
  Basis big;
  big.d = 30;
  big.rows.assign(30, std::vector<std::int64_t>(30, 0));
  for (int i = 0; i < 30; ++i) big.rows[i][i] = 1;
  CHECK_THROWS_AS(enumerate_shortest(big, 4), InfeasibleError);
}
