// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "le/errors.hpp"
#include "le/normal.hpp"
#include "le/oracle.hpp"
#include "le/simulate.hpp"
#include "test_support.hpp"

using namespace le;

TEST_CASE("make_lattice_law normalization") {
  SUBCASE("already-maximal span is kept") {
    const auto law = make_lattice_law(0.0, 1.0, {{0, 0.4}, {1, 0.6}});
    CHECK(law.span == 1.0);
    CHECK(law.offset == 0.0);
    REQUIRE(law.pmf.size() == 2);
    CHECK(law.pmf[0].first == 0);
    CHECK(law.pmf[1].first == 1);
  }

  SUBCASE("gcd reduction rescales the span") {
    const auto law = make_lattice_law(0.0, 1.0, {{0, 0.5}, {2, 0.5}});
    CHECK(law.span == 2.0);
    CHECK(law.pmf[0].first == 0);
    CHECK(law.pmf[1].first == 1);
  }

  SUBCASE("offset absorbs the smallest index") {
    const auto law = make_lattice_law(1.0, 0.5, {{-2, 0.5}, {4, 0.5}});
    CHECK(law.offset == doctest::Approx(0.0));
    CHECK(law.span == doctest::Approx(3.0));
    CHECK(law.pmf[0].first == 0);
    CHECK(law.pmf[1].first == 1);
  }

  SUBCASE("validation errors") {
    CHECK_THROWS_AS((void)make_lattice_law(0.0, 1.0, {{0, 1.0}}),
                    std::invalid_argument);  // degenerate
    CHECK_THROWS_AS((void)make_lattice_law(0.0, 1.0, {{0, 0.7}, {1, -0.3},
                                                      {2, 0.6}}),
                    std::invalid_argument);  // negative probability
    CHECK_THROWS_AS((void)make_lattice_law(0.0, 0.0, {{0, 0.5}, {1, 0.5}}),
                    std::invalid_argument);  // zero span
    CHECK_THROWS_AS((void)make_lattice_law(0.0, 1.0, {{0, 0.5}, {1, 0.4}}),
                    std::invalid_argument);  // mass != 1
    // zero-probability atoms are dropped, and dropping can degenerate
    CHECK_THROWS_AS((void)make_lattice_law(0.0, 1.0, {{0, 1.0}, {1, 0.0}}),
                    std::invalid_argument);
  }
}

TEST_CASE("bernoulli and moments") {
  const auto law = bernoulli(0.4);  // P(X=0) = 0.4
  const auto m = moments(law);
  CHECK(m.mean == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(m.variance == doctest::Approx(0.24).epsilon(1e-14));
  // q(1-q)(2q-1) with q = P(X=0) = 0.4
  CHECK(m.mu3 == doctest::Approx(-0.048).epsilon(1e-13));
  CHECK(m.mu4 == doctest::Approx(0.24 * (1 - 3 * 0.24)).epsilon(1e-12));

  CHECK(moments(bernoulli(0.5)).mean == doctest::Approx(0.5));
  CHECK(moments(bernoulli(0.5)).mu3 == doctest::Approx(0.0));
  CHECK(moments(bernoulli(0.5)).variance == doctest::Approx(0.25));

  SUBCASE("success-prob flag flips the convention") {
    const auto flipped = bernoulli(0.4, /*success_prob=*/true);
    CHECK(moments(flipped).mean == doctest::Approx(0.4));
  }

  SUBCASE("three-atom uniform") {
    const auto uniform =
        make_lattice_law(0.0, 1.0, {{0, 1.0 / 3}, {1, 1.0 / 3}, {2, 1.0 / 3}});
    const auto mu = moments(uniform);
    CHECK(mu.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mu.variance == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(mu.mu3 == doctest::Approx(0.0));
  }

  CHECK_THROWS_AS((void)bernoulli(0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)bernoulli(1.0), std::invalid_argument);
}

TEST_CASE("MeanSumModel derived quantities") {
  const auto model = le::test::two_bernoulli_model(20, 28);
  CHECK(model.total_size() == 48);
  CHECK(model.mean() == doctest::Approx(0.6 + 0.4).epsilon(1e-14));
  CHECK(model.variance() ==
        doctest::Approx(0.24 / 20 + 0.24 / 28).epsilon(1e-14));
  CHECK_THROWS_AS(MeanSumModel{{}}, std::invalid_argument);
  CHECK_THROWS_AS((MeanSumModel{{{bernoulli(0.3), 0}}}),
                  std::invalid_argument);
}

TEST_CASE("exact_sum_distribution") {
  SUBCASE("two coins, one draw each") {
    const MeanSumModel model{{{bernoulli(0.5), 1}, {bernoulli(0.5), 1}}};
    const auto dist = exact_sum_distribution(model);
    REQUIRE(dist.size() == 3);
    CHECK(dist.support()[0] == doctest::Approx(0.0));
    CHECK(dist.support()[1] == doctest::Approx(1.0));
    CHECK(dist.support()[2] == doctest::Approx(2.0));
    CHECK(dist.probability()[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(dist.probability()[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dist.probability()[2] == doctest::Approx(0.25).epsilon(1e-14));
  }

  SUBCASE("k=1 Bernoulli mean equals binomial / n") {
    const int n = 10;
    const MeanSumModel model{{{bernoulli(0.4), n}}};  // P(X=1) = 0.6
    const auto dist = exact_sum_distribution(model);
    const auto oracle = le::test::binomial_pmf(n, 0.6);
    REQUIRE(dist.size() == oracle.size());
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      CHECK(dist.support()[k] ==
            doctest::Approx(static_cast<double>(k) / n).epsilon(1e-14));
      CHECK(std::abs(dist.probability()[k] - oracle[k]) < 1e-12);
    }
  }

  SUBCASE("mass, mean and variance invariants") {
    const auto check_model = [](const MeanSumModel& model) {
      const auto dist = exact_sum_distribution(model);
      CHECK(std::abs(dist.cumulative().back() - 1.0) < 1e-10);
      CHECK(std::abs(dist.mean() - model.mean()) < 1e-10);
      CHECK(std::abs(dist.variance() - model.variance()) < 1e-10);
    };
    check_model(le::test::two_bernoulli_model(20, 28));
    check_model(le::test::two_bernoulli_model(7, 5));
    check_model(MeanSumModel{{{bernoulli(0.3), 2000}}});  // n in the thousands
    check_model(MeanSumModel{
        {{make_lattice_law(0.0, 1.0, {{0, 0.25}, {1, 0.5}, {2, 0.25}}), 15},
         {bernoulli(0.4), 20}}});
    check_model(MeanSumModel{{{bernoulli(0.3), 9},
                              {bernoulli(0.5), 11},
                              {bernoulli(0.7), 13}}});  // k = 3
  }

  SUBCASE("order independence") {
    const auto law_a =
        make_lattice_law(0.0, 1.0, {{0, 0.25}, {1, 0.5}, {2, 0.25}});
    const auto law_b = bernoulli(0.35);
    const MeanSumModel ab{{{law_a, 7}, {law_b, 11}}};
    const MeanSumModel ba{{{law_b, 11}, {law_a, 7}}};
    const auto dist_ab = exact_sum_distribution(ab);
    const auto dist_ba = exact_sum_distribution(ba);
    REQUIRE(dist_ab.size() == dist_ba.size());
    for (std::size_t i = 0; i < dist_ab.size(); ++i) {
      CHECK(std::abs(dist_ab.support()[i] - dist_ba.support()[i]) < 1e-12);
      CHECK(std::abs(dist_ab.probability()[i] - dist_ba.probability()[i]) <
            1e-12);
    }
  }

  SUBCASE("irrational span takes the merging path") {
    const auto law =
        make_lattice_law(0.0, std::sqrt(2.0), {{0, 0.5}, {1, 0.5}});
    const MeanSumModel model{{{law, 6}, {bernoulli(0.5), 4}}};
    const auto dist = exact_sum_distribution(model);
    CHECK(std::abs(dist.cumulative().back() - 1.0) < 1e-10);
    CHECK(std::abs(dist.mean() - model.mean()) < 1e-10);
    CHECK(std::abs(dist.variance() - model.variance()) < 1e-10);
  }

  SUBCASE("budget exhaustion is an explicit error") {
    CHECK_THROWS_AS(
        (void)exact_sum_distribution(le::test::two_bernoulli_model(200, 283), 50),
        OracleInfeasibleError);
    CHECK_THROWS_AS(
        (void)exact_sum_distribution(
            MeanSumModel{{{bernoulli(0.5), 20000000}}}),
        OracleInfeasibleError);
  }
}

TEST_CASE("exact_cdf_standardized") {
  const auto model = le::test::two_bernoulli_model(20, 28);
  CHECK(exact_cdf_standardized(model, 100.0) == doctest::Approx(1.0));
  CHECK(exact_cdf_standardized(model, -100.0) == doctest::Approx(0.0));

  SUBCASE("left-closed at an atom") {
    // Two fair coins: S in {0,1,2}, ES = 1. At x = 0 the atom at the
    // mean is included: P(S <= 1) = 0.75.
    const MeanSumModel coins{{{bernoulli(0.5), 1}, {bernoulli(0.5), 1}}};
    CHECK(exact_cdf_standardized(coins, 0.0) ==
          doctest::Approx(0.75).epsilon(1e-14));
  }

  SUBCASE("the 10/10 pair at the mean, regression-pinned") {
    // Fixed by the exact convolution oracle itself.
    CHECK(exact_cdf_standardized(le::test::two_bernoulli_model(10, 10), 0.0) ==
          doctest::Approx(0.59001432291046063).epsilon(1e-13));
  }

  SUBCASE("Monte Carlo cross-check at the 20/28 pair") {
    const auto m = le::test::two_bernoulli_model(20, 28);
    const double z95 = normal_quantile(0.95);
    const double exact = exact_cdf_standardized(m, z95);
    const auto [p, se] = estimate_P(m, z95, 100000, 777);
    CHECK(std::abs(p - exact) <= 3.0 * se);
  }

  SUBCASE("matches direct distribution lookup") {
    const auto dist = exact_sum_distribution(model);
    const double sd = std::sqrt(model.variance());
    for (double x : {-2.0, -0.5, 0.0, 0.5, 1.6449, 2.0}) {
      CHECK(exact_cdf_standardized(model, x) ==
            doctest::Approx(dist.cdf(model.mean() + x * sd, 1e-9 * sd)));
    }
  }
}

TEST_CASE("DiscreteCdf validation") {
  CHECK_THROWS_AS(DiscreteCdf({1.0, 0.5}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteCdf({0.0, 1.0}, {0.7, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteCdf({}, {}), std::invalid_argument);
  const DiscreteCdf d({0.0, 1.0}, {0.25, 0.75});
  CHECK(d.cdf(-0.5) == 0.0);
  CHECK(d.cdf(0.0) == doctest::Approx(0.25));
  CHECK(d.cdf(5.0) == doctest::Approx(1.0));
  CHECK(d.mean() == doctest::Approx(0.75));
  CHECK(d.central_moment(2) == doctest::Approx(0.1875));
}
