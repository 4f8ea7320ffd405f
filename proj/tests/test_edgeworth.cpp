// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "le/edgeworth.hpp"
#include "le/normal.hpp"
#include "le/oracle.hpp"
#include "le/rng.hpp"
#include "test_support.hpp"

using namespace le;

namespace {

// K_direct's series, re-summed naively over a wide window; independent
// of the production truncation logic and of the gamma prefactor.
double bare_direct_sum(const TwoSampleParams& p, double x) {
  const auto c = lattice_coefficients(p);
  const double n1 = static_cast<double>(p.n1);
  const double n2 = static_cast<double>(p.n2);
  const double A = x / c.c1;
  const double a = p.e2 * std::sqrt(n1) / (p.sigma1 * n2);
  const double b = p.e2 / (p.sigma2 * std::sqrt(n2));
  const double ratio = p.e2 * n1 / (p.e1 * n2);
  const double xi = xi_n(p, x);
  double sum = 0.0;
  for (std::int64_t nu = -100000; nu <= 100000; ++nu) {
    const double v = static_cast<double>(nu);
    sum += normal_pdf(A - a * v) * normal_pdf(b * v) * psi(xi - ratio * v);
  }
  return sum;
}

}  // namespace

TEST_CASE("psi sawtooth") {
  CHECK(psi(0.0) == 0.5);
  CHECK(psi(0.5) == 0.0);
  CHECK(psi(-0.25) == -0.25);  // floor(-0.25) = -1
  CHECK(psi(2.0) == 0.5);
  CounterRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = (rng.next_double() - 0.5) * 1000.0;
    CHECK(psi(x) == doctest::Approx(psi(x + 1.0)).epsilon(1e-9));
    CHECK(std::abs(psi(x)) <= 0.5);
  }
}

TEST_CASE("skewness_beta") {
  SUBCASE("third moments cancel in the balanced two-Bernoulli model") {
    CHECK(skewness_beta(le::test::two_bernoulli_model(25, 25)) ==
          doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("symmetric single population") {
    const MeanSumModel model{{{bernoulli(0.5), 40}}};
    CHECK(skewness_beta(model) == doctest::Approx(0.0));
  }
  SUBCASE("k=1 closed form and oracle cross-check") {
    const MeanSumModel model{{{bernoulli(0.4), 25}}};
    // beta = sqrt(n) * (mu3/n^2) / (var/n)^{3/2} = mu3 / sigma^3
    const double expected = -0.048 / std::pow(0.24, 1.5);
    CHECK(skewness_beta(model) == doctest::Approx(expected).epsilon(1e-12));
    const auto dist = exact_sum_distribution(model);
    const double via_oracle = std::sqrt(25.0) * dist.central_moment(3) /
                              std::pow(dist.variance(), 1.5);
    CHECK(skewness_beta(model) ==
          doctest::Approx(via_oracle).epsilon(1e-9));
  }
}

TEST_CASE("smooth_expansion") {
  const auto model = le::test::two_bernoulli_model(10, 14);
  SUBCASE("skew term vanishes at x = 1") {
    const auto b = smooth_expansion(model, 1.0);
    CHECK(b.skew == 0.0);
    CHECK(b.total == doctest::Approx(normal_cdf(1.0)));
    CHECK(b.lattice == 0.0);
  }
  SUBCASE("beta = 0 model reduces to Phi") {
    const auto balanced = le::test::two_bernoulli_model(25, 25);
    for (double x : {-1.3, 0.0, 0.4, 2.2}) {
      CHECK(smooth_expansion(balanced, x).total ==
            doctest::Approx(normal_cdf(x)).epsilon(1e-15));
    }
  }
  SUBCASE("k=1 skew plug-in") {
    const MeanSumModel single{{{bernoulli(0.4), 25}}};
    const double x = 1.6449;
    const double beta = -0.048 / std::pow(0.24, 1.5);
    const double expected =
        normal_cdf(x) +
        (1.0 / 5.0) * (1.0 / 6.0) * beta * (1.0 - x * x) * normal_pdf(x);
    CHECK(smooth_expansion(single, x).total ==
          doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("breakdown always sums exactly") {
    for (double x : {-2.0, -0.3, 0.9, 3.1}) {
      const auto b = smooth_expansion(model, x);
      CHECK(b.total == b.normal + b.skew + b.lattice);
      CHECK(b.normal >= 0.0);
      CHECK(b.normal <= 1.0);
    }
  }
}

TEST_CASE("one_sample_expansion") {
  SUBCASE("jump magnitude at a sawtooth discontinuity") {
    // Symmetric law, zero offset: xi_n = 0 and the psi argument at
    // x = 2 is the integer 2, where psi = +1/2.
    const auto law = bernoulli(0.5);
    const auto b = one_sample_expansion(law, 4, 2.0);
    const double expected = 0.5 * 2.0 * 0.5 * normal_pdf(2.0);
    CHECK(b.lattice == doctest::Approx(expected).epsilon(1e-8));
  }
  SUBCASE("tails vanish") {
    const auto law = bernoulli(0.4);
    for (double x : {-40.0, 40.0}) {
      const auto b = one_sample_expansion(law, 20, x);
      CHECK(std::abs(b.lattice) < 1e-200);
      CHECK(std::abs(b.skew) < 1e-200);
    }
  }
  SUBCASE("lattice term reduces the error against the exact oracle") {
    const auto law = bernoulli(0.4);
    const std::int64_t n = 20;
    const MeanSumModel model{{{law, n}}};
    const double exact = exact_cdf_standardized(model, 0.0);
    const auto with = one_sample_expansion(law, n, 0.0);
    const auto without = smooth_expansion(model, 0.0);
    CHECK(std::abs(with.total - exact) < std::abs(without.total - exact));
  }
}

TEST_CASE("lattice_coefficients") {
  SUBCASE("symmetric model") {
    const MeanSumModel model{{{bernoulli(0.5), 12}, {bernoulli(0.5), 12}}};
    const auto c = lattice_coefficients(model);
    const double sigma = 0.5;
    CHECK(c.c1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(c.c2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(c.c3 == doctest::Approx(1.0 / sigma).epsilon(1e-14));
    CHECK(c.c4 == doctest::Approx(1.0 / sigma).epsilon(1e-14));
    CHECK(c.gamma == doctest::Approx(1.0 / (sigma * sigma)).epsilon(1e-14));
    CHECK(c.xi1n == 0.0);  // zero offsets
    CHECK(c.xi2n == 0.0);
  }
  SUBCASE("c1^2 + c2^2 = 1 over random models") {
    CounterRng rng(99);
    for (int i = 0; i < 1000; ++i) {
      TwoSampleParams p;
      p.e1 = 0.5 + rng.next_double();
      p.e2 = 0.5 + rng.next_double();
      p.n1 = 1 + static_cast<std::int64_t>(rng.next_below(200));
      p.n2 = 1 + static_cast<std::int64_t>(rng.next_below(200));
      p.sigma1 = 0.1 + rng.next_double();
      p.sigma2 = 0.1 + rng.next_double();
      const auto c = lattice_coefficients(p);
      CHECK(std::abs(c.c1 * c.c1 + c.c2 * c.c2 - 1.0) < 1e-12);
      CHECK(c.gamma > 0.0);
    }
  }
  SUBCASE("the 20/28 pair, regression-pinned") {
    const auto c = lattice_coefficients(le::test::two_bernoulli_model(20, 28));
    CHECK(c.c1 == doctest::Approx(0.76376261582597327).epsilon(1e-14));
    CHECK(c.c2 == doctest::Approx(0.6454972243679028).epsilon(1e-14));
    CHECK(c.c3 == doctest::Approx(1.4580296087995108).epsilon(1e-14));
    CHECK(c.c4 == doctest::Approx(1.7251638983558857).epsilon(1e-14));
    CHECK(c.gamma == doctest::Approx(4.166666666666667).epsilon(1e-14));
    CHECK(c.xi1n == 0.0);
    CHECK(c.xi2n == 0.0);
  }

  SUBCASE("k != 2 is rejected") {
    const MeanSumModel one{{{bernoulli(0.5), 4}}};
    CHECK_THROWS_AS((void)lattice_coefficients(one), std::invalid_argument);
  }
}

TEST_CASE("xi_n affine structure") {
  const MeanSumModel model{{{bernoulli(0.5), 9}, {bernoulli(0.5), 16}}};
  const auto c = lattice_coefficients(model);
  CHECK(xi_n(model, 0.0) == doctest::Approx(0.0));  // zero offsets
  const double slope = 0.5 * 3.0 / (c.c1 * 1.0);    // sigma1 sqrt(n1)/(c1 e1)
  CHECK(xi_n(model, 1.0) - xi_n(model, 0.0) ==
        doctest::Approx(slope).epsilon(1e-13));
  CHECK(xi_n(model, 2.5) - xi_n(model, 1.5) ==
        doctest::Approx(slope).epsilon(1e-13));

  SUBCASE("the 20/28 pair, regression-pinned") {
    CHECK(xi_n(le::test::two_bernoulli_model(20, 28), 1.6449) ==
          doctest::Approx(4.7184756947859459).epsilon(1e-14));
  }
}

TEST_CASE("K_direct") {
  const auto params20 =
      TwoSampleParams::from_model(le::test::two_bernoulli_model(20, 20));
  const auto params28 =
      TwoSampleParams::from_model(le::test::two_bernoulli_model(20, 28));

  SUBCASE("vanishes deep in the tails") {
    CHECK(std::abs(K_direct(params20, 12.0)) < 1e-20);
    CHECK(std::abs(K_direct(params20, -12.0)) < 1e-20);
  }

  SUBCASE("gamma is a multiplicative prefactor of the series") {
    for (double x : {0.0, 0.7, 1.6449}) {
      const auto c = lattice_coefficients(params20);
      CHECK(K_direct(params20, x, 1e-14) ==
            doctest::Approx(c.gamma * bare_direct_sum(params20, x))
                .epsilon(1e-10));
    }
  }

  SUBCASE("rho = 1 resonates, the sqrt2 pair damps") {
    const double z95 = normal_quantile(0.95);
    const double k_equal = K_direct(params20, z95);
    const double k_sqrt2 = K_direct(params28, z95);
    CHECK(std::abs(k_equal) > 0.0);
    CHECK(std::abs(k_sqrt2) < std::abs(k_equal));
    CHECK(k_equal == doctest::Approx(0.26869668497611698).epsilon(1e-12));
    CHECK(k_sqrt2 == doctest::Approx(0.051327741723548745).epsilon(1e-12));
  }

  SUBCASE("truncation soundness under tail_eps halving") {
    const double n = 40.0;
    for (double tail_eps : {1e-8, 1e-10, 1e-12}) {
      const double k1 = K_direct(params20, 0.7, tail_eps);
      const double k2 = K_direct(params20, 0.7, tail_eps / 2.0);
      CHECK(std::abs(k1 - k2) < 10.0 * tail_eps * n);
    }
  }

  SUBCASE("integer offset shifts leave the expansion invariant") {
    const auto shifted_model = MeanSumModel{
        {{make_lattice_law(3.0, 1.0, {{0, 0.4}, {1, 0.6}}), 20},
         {make_lattice_law(-7.0, 1.0, {{0, 0.6}, {1, 0.4}}), 20}}};
    for (double x : {-1.0, 0.0, 0.5, 2.0}) {
      const auto base =
          full_expansion(le::test::two_bernoulli_model(20, 20), x,
                         ExpansionVariant::two_sample_direct);
      const auto shifted = full_expansion(shifted_model, x,
                                          ExpansionVariant::two_sample_direct);
      CHECK(std::abs(base.total - shifted.total) < 1e-10);
    }
  }
}

TEST_CASE("gaussian_pair_derivative vs central finite differences") {
  const double A = 0.8, c3 = 1.7, c4 = 2.2;
  const auto f = [&](double u) {
    return normal_pdf(A - c3 * u) * normal_pdf(c4 * u);
  };
  for (double u : {-0.6, 0.0, 0.4}) {
    for (int r = 1; r <= 4; ++r) {
      // O(h^2) central stencils with one Richardson step.
      const auto stencil = [&](double h) {
        switch (r) {
          case 1:
            return (f(u + h) - f(u - h)) / (2 * h);
          case 2:
            return (f(u + h) - 2 * f(u) + f(u - h)) / (h * h);
          case 3:
            return (f(u + 2 * h) - 2 * f(u + h) + 2 * f(u - h) -
                    f(u - 2 * h)) /
                   (2 * h * h * h);
          default:
            return (f(u + 2 * h) - 4 * f(u + h) + 6 * f(u) - 4 * f(u - h) +
                    f(u - 2 * h)) /
                   (h * h * h * h);
        }
      };
      const double h = 0.005;
      const double fd = (4.0 * stencil(h / 2) - stencil(h)) / 3.0;
      const double closed = gaussian_pair_derivative(A, c3, c4, u, r);
      CHECK(closed == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("K_blocked") {
  SUBCASE("degenerate blocking reduces to K_direct") {
    BlockingConfig degenerate;
    degenerate.alpha = 0.0;
    degenerate.r0 = 0;
    degenerate.tail_eps = 1e-14;
    const auto params =
        TwoSampleParams::from_model(le::test::two_bernoulli_model(20, 28));
    for (double x : {-1.5, 0.0, 0.5, 1.6449}) {
      CHECK(std::abs(K_blocked(params, x, degenerate) -
                     K_direct(params, x, 1e-14)) < 1e-12);
    }
  }

  SUBCASE("vanishes deep in the tails") {
    const auto params =
        TwoSampleParams::from_model(le::test::two_bernoulli_model(50, 50));
    BlockingConfig cfg;
    CHECK(std::abs(K_blocked(params, 12.0, cfg)) < 1e-18);
    CHECK(std::abs(K_blocked(params, -12.0, cfg)) < 1e-18);
  }

  SUBCASE("agrees with K_direct within the blocked form's O(1) slack") {
    const auto params =
        TwoSampleParams::from_model(le::test::two_bernoulli_model(200, 283));
    BlockingConfig cfg;  // alpha = 0.4, r0 = 8
    const double blocked = K_blocked(params, 0.0, cfg);
    const double direct = K_direct(params, 0.0);
    CHECK(std::abs(blocked - direct) <= 5.0);
  }

  SUBCASE("config validation") {
    BlockingConfig bad;
    bad.alpha = 0.6;
    CHECK_THROWS_AS((void)validate(bad), std::invalid_argument);
    bad.alpha = 0.4;
    bad.r0 = 3;  // needs >= 8
    CHECK_THROWS_AS((void)validate(bad), std::invalid_argument);
    bad.r0 = 8;
    bad.tail_eps = 0.5;
    CHECK_THROWS_AS((void)validate(bad), std::invalid_argument);
  }
}

TEST_CASE("full_expansion") {
  const auto model = le::test::two_bernoulli_model(20, 20);

  SUBCASE("smooth variant equals smooth_expansion") {
    for (double x : {-1.0, 0.3, 1.9}) {
      CHECK(full_expansion(model, x, ExpansionVariant::smooth).total ==
            smooth_expansion(model, x).total);
    }
  }

  SUBCASE("limits") {
    CHECK(full_expansion(model, 40.0, ExpansionVariant::two_sample_direct)
              .total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(full_expansion(model, -40.0, ExpansionVariant::two_sample_direct)
              .total == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("lattice term shrinks the max error against the oracle") {
    std::vector<double> grid;
    for (double x = -3.0; x <= 3.0 + 1e-12; x += 0.05) grid.push_back(x);
    const auto exact = exact_cdf_standardized_grid(model, grid);
    double err_with = 0.0, err_without = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      err_with = std::max(
          err_with,
          std::abs(full_expansion(model, grid[i],
                                  ExpansionVariant::two_sample_direct)
                       .total -
                   exact[i]));
      err_without = std::max(
          err_without,
          std::abs(smooth_expansion(model, grid[i]).total - exact[i]));
    }
    CHECK(err_with < err_without);
  }

  SUBCASE("one-sample variant needs k = 1") {
    CHECK_THROWS_AS(
        (void)full_expansion(model, 0.0, ExpansionVariant::one_sample),
        std::invalid_argument);
    const MeanSumModel single{{{bernoulli(0.4), 20}}};
    const auto b = full_expansion(single, 0.0, ExpansionVariant::one_sample);
    CHECK(b.total == one_sample_expansion(bernoulli(0.4), 20, 0.0).total);
    CHECK_THROWS_AS((void)full_expansion(single, 0.0,
                                         ExpansionVariant::two_sample_direct),
                    std::invalid_argument);
  }
}

TEST_CASE("variant names round-trip") {
  for (auto v :
       {ExpansionVariant::smooth, ExpansionVariant::one_sample,
        ExpansionVariant::two_sample_direct,
        ExpansionVariant::two_sample_blocked}) {
    CHECK(variant_from_name(variant_name(v)) == v);
  }
  CHECK_THROWS_AS((void)variant_from_name("cubic"), std::invalid_argument);
}
