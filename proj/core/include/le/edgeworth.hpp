// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "le/mean_sum_model.hpp"
#include "le/sawtooth.hpp"

namespace le {

enum class ExpansionVariant {
  smooth,
  one_sample,
  two_sample_direct,
  two_sample_blocked,
};

std::string_view variant_name(ExpansionVariant v);
ExpansionVariant variant_from_name(std::string_view name);

/// One evaluation of an Edgeworth approximation at a point x, split
/// into its normal, skew and lattice terms; total is their exact sum.
struct ExpansionBreakdown {
  double x = 0.0;
  double normal = 0.0;   // Phi(x)
  double skew = 0.0;     // n^-1/2 (1/6) beta (1-x^2) phi(x)
  double lattice = 0.0;  // continuity-correction term, or 0
  double total = 0.0;
  ExpansionVariant variant = ExpansionVariant::smooth;
};

/// Two-sample constants: c1^2 + c2^2 = 1 by construction;
/// c3 = e2 n1 / (sigma1 n2); c4 = (e1/sigma2) sqrt(n1/n2);
/// gamma = (e1/sigma1)(e2/sigma2); xi_jn the lattice phase offsets.
struct LatticeCoefficients {
  double c1 = 0.0, c2 = 0.0;
  double c3 = 0.0, c4 = 0.0;
  double gamma = 0.0;
  double xi1n = 0.0, xi2n = 0.0;
};

/// Blocked-sum evaluation parameters. Blocks hold 2*floor(n^alpha)+1
/// consecutive integers; r0 must be >= 4 alpha / (1 - 2 alpha). alpha=0
/// is a degenerate testing configuration with single-integer blocks.
struct BlockingConfig {
  double alpha = 0.4;
  int r0 = 8;
  double tail_eps = 1e-14;
};

void validate(const BlockingConfig& cfg);

/// The inputs the two-sample lattice term actually consumes. Built from
/// a model, or from plug-in estimates (bootstrap path).
struct TwoSampleParams {
  double e1 = 1.0, e2 = 1.0;  // maximal spans
  double x1 = 0.0, x2 = 0.0;  // lattice offsets
  std::int64_t n1 = 1, n2 = 1;
  double sigma1 = 1.0, sigma2 = 1.0;

  static TwoSampleParams from_model(const MeanSumModel& model);  // k == 2
};

/// Per-population (variance, mu3, n) for the standardized skewness.
struct PopulationSummary {
  double variance = 0.0;
  double mu3 = 0.0;
  std::int64_t n = 1;
};

/// beta = n^{1/2} sum_j mu3_j / n_j^2 / (sum_j sigma_j^2 / n_j)^{3/2},
/// n the total sample size. Bounded in n under the model assumptions.
double skewness_beta(std::span<const PopulationSummary> populations);
double skewness_beta(const MeanSumModel& model);

LatticeCoefficients lattice_coefficients(const TwoSampleParams& params);
LatticeCoefficients lattice_coefficients(const MeanSumModel& model);

/// xi_n(x) = {x - (c1 xi1n + c2 xi2n)} sigma1 sqrt(n1) / (c1 e1).
double xi_n(const TwoSampleParams& params, double x);
double xi_n(const MeanSumModel& model, double x);

/// Direct single-series lattice term
///   K(x) = gamma sum_nu phi(x/c1 - e2 sqrt(n1)/(sigma1 n2) nu)
///                    phi(e2 nu / (sigma2 sqrt(n2)))
///                    psi(xi_n(x) - e2 n1/(e1 n2) nu),
/// truncated where both Gaussian factors fall below tail_eps (plus two
/// standardized units of slack). The discarded tail is below
/// 10 * tail_eps * n in absolute value.
double K_direct(const TwoSampleParams& params, double x,
                double tail_eps = 1e-14);
double K_direct(const MeanSumModel& model, double x, double tail_eps = 1e-14);

/// Blocked form: integers partitioned into blocks of 2 floor(n^alpha)+1
/// with block 0 centered at nu = 0; Gaussian pair phi(u, x) Taylor
/// expanded to order r0 at block centers, derivatives in closed form
/// via Hermite polynomials.
double K_blocked(const TwoSampleParams& params, double x,
                 const BlockingConfig& cfg = {});
double K_blocked(const MeanSumModel& model, double x,
                 const BlockingConfig& cfg = {});

/// r-th derivative in u of phi(A - c3 u) phi(c4 u), the closed Hermite
/// form used inside K_blocked. Exposed for finite-difference checks.
double gaussian_pair_derivative(double A, double c3, double c4, double u,
                                int r);

/// One-term smooth expansion, lattice term zero. Any k.
ExpansionBreakdown smooth_expansion(const MeanSumModel& model, double x);

/// Single-mean expansion with the discrete continuity correction
/// d_n(x) = (e0/sigma) psi{(x - xi_n) sigma sqrt(n) / e0},
/// xi_n = (e0 / sigma sqrt(n)) {1/2 - psi(n x0 / e0)}.
ExpansionBreakdown one_sample_expansion(const LatticeLaw& law, std::int64_t n,
                                        double x);

/// Assembled approximation of P{(S-ES)/sqrt(Var S) <= x} for the chosen
/// variant; the two-sample variants add (n1 n2)^{-1/2} K(x).
ExpansionBreakdown full_expansion(const MeanSumModel& model, double x,
                                  ExpansionVariant variant,
                                  const BlockingConfig& cfg = {});

}  // namespace le
