// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/edgeworth.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "le/kahan.hpp"
#include "le/normal.hpp"

namespace le {

std::string_view variant_name(ExpansionVariant v) {
  switch (v) {
    case ExpansionVariant::smooth:
      return "smooth";
    case ExpansionVariant::one_sample:
      return "one-sample";
    case ExpansionVariant::two_sample_direct:
      return "two-sample-direct";
    case ExpansionVariant::two_sample_blocked:
      return "two-sample-blocked";
  }
  return "unknown";
}

ExpansionVariant variant_from_name(std::string_view name) {
  if (name == "smooth") return ExpansionVariant::smooth;
  if (name == "one-sample") return ExpansionVariant::one_sample;
  if (name == "two-sample-direct") return ExpansionVariant::two_sample_direct;
  if (name == "two-sample-blocked") {
    return ExpansionVariant::two_sample_blocked;
  }
  throw std::invalid_argument("unknown expansion variant: " +
                              std::string(name));
}

void validate(const BlockingConfig& cfg) {
  if (!(cfg.alpha >= 0.0 && cfg.alpha < 0.5)) {
    throw std::invalid_argument("BlockingConfig: alpha must lie in [0, 1/2)");
  }
  if (cfg.r0 < 0) throw std::invalid_argument("BlockingConfig: r0 < 0");
  const double needed = 4.0 * cfg.alpha / (1.0 - 2.0 * cfg.alpha);
  if (static_cast<double>(cfg.r0) < needed - 1e-9) {
    throw std::invalid_argument(
        "BlockingConfig: r0 must be >= 4 alpha / (1 - 2 alpha)");
  }
  if (!(cfg.tail_eps > 0.0 && cfg.tail_eps <= 1e-6)) {
    throw std::invalid_argument("BlockingConfig: tail_eps in (0, 1e-6]");
  }
}

TwoSampleParams TwoSampleParams::from_model(const MeanSumModel& model) {
  if (model.k() != 2) {
    throw std::invalid_argument("two-sample form needs exactly k = 2");
  }
  const auto& p1 = model.population(0);
  const auto& p2 = model.population(1);
  TwoSampleParams params;
  params.e1 = p1.law.span;
  params.e2 = p2.law.span;
  params.x1 = p1.law.offset;
  params.x2 = p2.law.offset;
  params.n1 = p1.sample_size;
  params.n2 = p2.sample_size;
  params.sigma1 = std::sqrt(p1.moments.variance);
  params.sigma2 = std::sqrt(p2.moments.variance);
  return params;
}

double skewness_beta(std::span<const PopulationSummary> populations) {
  KahanAccumulator third, var;
  std::int64_t n = 0;
  for (const auto& pop : populations) {
    if (pop.n < 1) throw std::invalid_argument("skewness_beta: n_j < 1");
    const double nj = static_cast<double>(pop.n);
    third += pop.mu3 / (nj * nj);
    var += pop.variance / nj;
    n += pop.n;
  }
  const double v = var.value();
  if (!(v > 0.0)) throw std::invalid_argument("skewness_beta: Var S <= 0");
  return std::sqrt(static_cast<double>(n)) * third.value() / std::pow(v, 1.5);
}

double skewness_beta(const MeanSumModel& model) {
  std::vector<PopulationSummary> summaries;
  summaries.reserve(model.k());
  for (const auto& pop : model.populations()) {
    summaries.push_back(
        {pop.moments.variance, pop.moments.mu3, pop.sample_size});
  }
  return skewness_beta(summaries);
}

namespace {

double frac_part(double y) { return y - std::floor(y); }

double xi_jn(double e, double sigma, std::int64_t n, double x) {
  return e / (sigma * std::sqrt(static_cast<double>(n))) *
         frac_part(static_cast<double>(n) * x / e);
}

}  // namespace

LatticeCoefficients lattice_coefficients(const TwoSampleParams& p) {
  if (p.n1 < 1 || p.n2 < 1 || !(p.sigma1 > 0.0) || !(p.sigma2 > 0.0) ||
      !(p.e1 > 0.0) || !(p.e2 > 0.0)) {
    throw std::invalid_argument("lattice_coefficients: invalid parameters");
  }
  const double n1 = static_cast<double>(p.n1);
  const double n2 = static_cast<double>(p.n2);
  const double v1 = p.sigma1 * p.sigma1 / n1;
  const double v2 = p.sigma2 * p.sigma2 / n2;
  LatticeCoefficients c;
  c.c1 = std::sqrt(v1 / (v1 + v2));
  c.c2 = std::sqrt(v2 / (v1 + v2));
  c.c3 = p.e2 * n1 / (p.sigma1 * n2);
  c.c4 = (p.e1 / p.sigma2) * std::sqrt(n1 / n2);
  c.gamma = (p.e1 / p.sigma1) * (p.e2 / p.sigma2);
  c.xi1n = xi_jn(p.e1, p.sigma1, p.n1, p.x1);
  c.xi2n = xi_jn(p.e2, p.sigma2, p.n2, p.x2);
  return c;
}

LatticeCoefficients lattice_coefficients(const MeanSumModel& model) {
  return lattice_coefficients(TwoSampleParams::from_model(model));
}

double xi_n(const TwoSampleParams& p, double x) {
  const LatticeCoefficients c = lattice_coefficients(p);
  return (x - (c.c1 * c.xi1n + c.c2 * c.xi2n)) *
         (p.sigma1 * std::sqrt(static_cast<double>(p.n1)) / (c.c1 * p.e1));
}

double xi_n(const MeanSumModel& model, double x) {
  return xi_n(TwoSampleParams::from_model(model), x);
}

double K_direct(const TwoSampleParams& p, double x, double tail_eps) {
  if (!(tail_eps > 0.0 && tail_eps <= 1e-6)) {
    throw std::invalid_argument("K_direct: tail_eps in (0, 1e-6]");
  }
  const LatticeCoefficients c = lattice_coefficients(p);
  const double n1 = static_cast<double>(p.n1);
  const double n2 = static_cast<double>(p.n2);
  const double A = x / c.c1;
  const double a = p.e2 * std::sqrt(n1) / (p.sigma1 * n2);
  const double b = p.e2 / (p.sigma2 * std::sqrt(n2));
  const double ratio = p.e2 * n1 / (p.e1 * n2);
  const double xi = (x - (c.c1 * c.xi1n + c.c2 * c.xi2n)) *
                    (p.sigma1 * std::sqrt(n1) / (c.c1 * p.e1));

  // Keep every nu where both Gaussian factors exceed tail_eps, plus two
  // standardized units of slack on each side.
  const double radius = std::sqrt(2.0 * std::log(1.0 / tail_eps)) + 2.0;
  const double lo_d = std::max(-radius / b, (A - radius) / a);
  const double hi_d = std::min(radius / b, (A + radius) / a);
  const auto lo = static_cast<std::int64_t>(std::ceil(lo_d));
  const auto hi = static_cast<std::int64_t>(std::floor(hi_d));

  KahanAccumulator sum;
  for (std::int64_t nu = lo; nu <= hi; ++nu) {
    const double v = static_cast<double>(nu);
    sum += normal_pdf(A - a * v) * normal_pdf(b * v) * psi(xi - ratio * v);
  }
  return c.gamma * sum.value();
}

double K_direct(const MeanSumModel& model, double x, double tail_eps) {
  return K_direct(TwoSampleParams::from_model(model), x, tail_eps);
}

namespace {

// d^r/du^r of phi(A - c3 u) phi(c4 u) at u, via
// phi^(i)(t) = (-1)^i He_i(t) phi(t):
//   phi_r = phi(t1) phi(t2) sum_j C(r,j) c3^{r-j} He_{r-j}(t1) (-c4)^j He_j(t2)
struct GaussianPairDerivatives {
  std::vector<double> he1, he2, pow_c3, pow_neg_c4;
  double phi_product = 0.0;

  GaussianPairDerivatives(int r0, double c3, double c4, double t1,
                          double t2) {
    const std::size_t m = static_cast<std::size_t>(r0) + 1;
    he1.resize(m);
    he2.resize(m);
    pow_c3.resize(m);
    pow_neg_c4.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      he1[i] = i == 0 ? 1.0 : (i == 1 ? t1 : 0.0);
      he2[i] = i == 0 ? 1.0 : (i == 1 ? t2 : 0.0);
    }
    for (std::size_t i = 2; i < m; ++i) {
      he1[i] = t1 * he1[i - 1] - static_cast<double>(i - 1) * he1[i - 2];
      he2[i] = t2 * he2[i - 1] - static_cast<double>(i - 1) * he2[i - 2];
    }
    pow_c3[0] = 1.0;
    pow_neg_c4[0] = 1.0;
    for (std::size_t i = 1; i < m; ++i) {
      pow_c3[i] = pow_c3[i - 1] * c3;
      pow_neg_c4[i] = pow_neg_c4[i - 1] * (-c4);
    }
    phi_product = normal_pdf(t1) * normal_pdf(t2);
  }

  double derivative(int r) const {
    double acc = 0.0;
    double binom = 1.0;  // C(r, j)
    for (int j = 0; j <= r; ++j) {
      acc += binom * pow_c3[static_cast<std::size_t>(r - j)] *
             he1[static_cast<std::size_t>(r - j)] *
             pow_neg_c4[static_cast<std::size_t>(j)] *
             he2[static_cast<std::size_t>(j)];
      binom = binom * static_cast<double>(r - j) / static_cast<double>(j + 1);
    }
    return phi_product * acc;
  }
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

double K_blocked(const TwoSampleParams& p, double x,
                 const BlockingConfig& cfg) {
  validate(cfg);
  const LatticeCoefficients c = lattice_coefficients(p);
  const double n1 = static_cast<double>(p.n1);
  const double n2 = static_cast<double>(p.n2);
  const double n = n1 + n2;
  const double sqn1 = std::sqrt(n1);
  const double A = x / c.c1;
  const double ratio = p.e2 * n1 / (p.e1 * n2);
  const double xi = xi_n(p, x);

  const std::int64_t width =
      cfg.alpha == 0.0
          ? 1
          : 2 * static_cast<std::int64_t>(std::floor(std::pow(n, cfg.alpha))) +
                1;
  const std::int64_t half = (width - 1) / 2;

  // nu window where both Gaussian factors (evaluated at block centers)
  // can exceed tail_eps; whole blocks are kept or skipped.
  const double a_coeff = c.c3 / sqn1;
  const double b_coeff = c.c4 / sqn1;
  const double radius = std::sqrt(2.0 * std::log(1.0 / cfg.tail_eps)) + 2.0;
  const double lo_d = std::max(-radius / b_coeff, (A - radius) / a_coeff);
  const double hi_d = std::min(radius / b_coeff, (A + radius) / a_coeff);
  if (!(lo_d <= hi_d)) return 0.0;
  const auto lo = static_cast<std::int64_t>(std::floor(lo_d));
  const auto hi = static_cast<std::int64_t>(std::ceil(hi_d));
  const std::int64_t block_lo = floor_div(lo + half, width);
  const std::int64_t block_hi = floor_div(hi + half, width);

  std::vector<double> inner(static_cast<std::size_t>(cfg.r0) + 1);
  std::vector<double> inv_scale(static_cast<std::size_t>(cfg.r0) + 1);
  inv_scale[0] = 1.0;
  double factorial = 1.0;
  for (int r = 1; r <= cfg.r0; ++r) {
    factorial *= static_cast<double>(r);
    inv_scale[static_cast<std::size_t>(r)] =
        1.0 / (factorial * std::pow(sqn1, r));
  }

  KahanAccumulator total;
  for (std::int64_t block = block_lo; block <= block_hi; ++block) {
    const std::int64_t center = block * width;
    const double u = static_cast<double>(center) / sqn1;
    GaussianPairDerivatives derivs(cfg.r0, c.c3, c.c4, A - c.c3 * u,
                                   c.c4 * u);
    // Both factors below tail_eps at the center: the whole block is
    // beyond the envelope.
    if (derivs.phi_product < cfg.tail_eps * cfg.tail_eps) continue;

    std::fill(inner.begin(), inner.end(), 0.0);
    for (std::int64_t nu = center - half; nu <= center + half; ++nu) {
      const double jump = psi(xi - ratio * static_cast<double>(nu));
      const double d = static_cast<double>(nu - center);
      double power = 1.0;
      for (int r = 0; r <= cfg.r0; ++r) {
        inner[static_cast<std::size_t>(r)] += power * jump;
        power *= d;
      }
    }
    for (int r = 0; r <= cfg.r0; ++r) {
      total += derivs.derivative(r) * inv_scale[static_cast<std::size_t>(r)] *
               inner[static_cast<std::size_t>(r)];
    }
  }
  return c.gamma * total.value();
}

double K_blocked(const MeanSumModel& model, double x,
                 const BlockingConfig& cfg) {
  return K_blocked(TwoSampleParams::from_model(model), x, cfg);
}

double gaussian_pair_derivative(double A, double c3, double c4, double u,
                                int r) {
  if (r < 0) throw std::invalid_argument("gaussian_pair_derivative: r < 0");
  const GaussianPairDerivatives derivs(r, c3, c4, A - c3 * u, c4 * u);
  return derivs.derivative(r);
}

namespace {

ExpansionBreakdown assemble(double x, double beta, std::int64_t n,
                            double lattice, ExpansionVariant variant) {
  ExpansionBreakdown out;
  out.x = x;
  out.variant = variant;
  out.normal = normal_cdf(x);
  out.skew = (1.0 / std::sqrt(static_cast<double>(n))) * (1.0 / 6.0) * beta *
             (1.0 - x * x) * normal_pdf(x);
  out.lattice = lattice;
  out.total = out.normal + out.skew + out.lattice;
  return out;
}

}  // namespace

ExpansionBreakdown smooth_expansion(const MeanSumModel& model, double x) {
  return assemble(x, skewness_beta(model), model.total_size(), 0.0,
                  ExpansionVariant::smooth);
}

ExpansionBreakdown one_sample_expansion(const LatticeLaw& law, std::int64_t n,
                                        double x) {
  if (n < 1) throw std::invalid_argument("one_sample_expansion: n < 1");
  const PopulationMoments m = moments(law);
  const double sigma = std::sqrt(m.variance);
  const double e0 = law.span;
  const double x0 = law.offset;
  const double root_n = std::sqrt(static_cast<double>(n));
  const double beta = skewness_beta(
      std::vector<PopulationSummary>{{m.variance, m.mu3, n}});
  const double xi =
      (e0 / (sigma * root_n)) *
      (0.5 - psi(static_cast<double>(n) * x0 / e0));
  // Lattice term evaluated with the shared atom-inclusion convention.
  const double lattice =
      (1.0 / root_n) * (e0 / sigma) *
      psi((x + kAtomInclusionTol - xi) * sigma * root_n / e0) * normal_pdf(x);
  return assemble(x, beta, n, lattice, ExpansionVariant::one_sample);
}

ExpansionBreakdown full_expansion(const MeanSumModel& model, double x,
                                  ExpansionVariant variant,
                                  const BlockingConfig& cfg) {
  switch (variant) {
    case ExpansionVariant::smooth:
      return smooth_expansion(model, x);
    case ExpansionVariant::one_sample: {
      if (model.k() != 1) {
        throw std::invalid_argument("one-sample variant needs k = 1");
      }
      const auto& pop = model.population(0);
      return one_sample_expansion(pop.law, pop.sample_size, x);
    }
    case ExpansionVariant::two_sample_direct:
    case ExpansionVariant::two_sample_blocked: {
      const TwoSampleParams params = TwoSampleParams::from_model(model);
      // Lattice term at x + tol: same side of a jump as the oracle CDF.
      const double x_lattice = x + kAtomInclusionTol;
      const double K = variant == ExpansionVariant::two_sample_direct
                           ? K_direct(params, x_lattice, cfg.tail_eps)
                           : K_blocked(params, x_lattice, cfg);
      const double scale = 1.0 / std::sqrt(static_cast<double>(params.n1) *
                                           static_cast<double>(params.n2));
      return assemble(x, skewness_beta(model), model.total_size(), scale * K,
                      variant);
    }
  }
  throw std::invalid_argument("full_expansion: unknown variant");
}

}  // namespace le
