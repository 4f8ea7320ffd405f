// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "le/kahan.hpp"
#include "le/normal.hpp"
#include "le/parallel.hpp"
#include "le/sawtooth.hpp"

namespace le {

std::vector<double> chi_default_grid(std::int64_t N, double tau) {
  if (N < 1) throw std::invalid_argument("chi grid: N < 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(3 * N));
  for (std::int64_t i = 1; i <= N; ++i) {
    const double y = tau * static_cast<double>(i);
    double f = y - std::floor(y);
    grid.push_back(f);
    double lo = f - 1e-9;
    if (lo < 0.0) lo += 1.0;
    double hi = f + 1e-9;
    if (hi >= 1.0) hi -= 1.0;
    grid.push_back(lo);
    grid.push_back(hi);
  }
  return grid;
}

double chi_discrepancy(std::int64_t N, std::span<const double> poly_coeffs,
                       double tau, std::span<const double> z_grid) {
  if (N < 1) throw std::invalid_argument("chi_discrepancy: N < 1");
  if (z_grid.empty()) {
    throw std::invalid_argument("chi_discrepancy: empty z grid");
  }
  // Pre-compute q(i/N) and tau*i once.
  std::vector<double> weight(static_cast<std::size_t>(N));
  std::vector<double> shift(static_cast<std::size_t>(N));
  for (std::int64_t i = 1; i <= N; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(N);
    double w = 0.0;
    for (std::size_t c = poly_coeffs.size(); c-- > 0;) {
      w = w * t + poly_coeffs[c];
    }
    weight[static_cast<std::size_t>(i - 1)] = poly_coeffs.empty() ? 1.0 : w;
    shift[static_cast<std::size_t>(i - 1)] = tau * static_cast<double>(i);
  }

  std::vector<double> abs_sum(z_grid.size());
  parallel_for(static_cast<std::int64_t>(z_grid.size()),
               [&](std::int64_t g) {
                 const double z = z_grid[static_cast<std::size_t>(g)];
                 KahanAccumulator acc;
                 for (std::size_t i = 0; i < weight.size(); ++i) {
                   acc += weight[i] * psi(z - shift[i]);
                 }
                 abs_sum[static_cast<std::size_t>(g)] = std::abs(acc.value());
               });
  return *std::max_element(abs_sum.begin(), abs_sum.end());
}

double erdos_turan_rhs(std::int64_t N, std::int64_t m, double tau, double C) {
  if (N < 1 || m < 1) throw std::invalid_argument("erdos_turan_rhs: N, m >= 1");
  KahanAccumulator sum;
  for (std::int64_t ell = 1; ell <= m; ++ell) {
    const double s = std::abs(sin_pi_times(static_cast<double>(ell) * tau));
    if (s == 0.0) {
      throw std::invalid_argument(
          "erdos_turan_rhs: bound undefined for rational tau with "
          "denominator <= m (sin(l tau pi) = 0 at l = " +
          std::to_string(ell) + ")");
    }
    sum += 1.0 / (static_cast<double>(ell) * s);
  }
  return C * (static_cast<double>(N) / static_cast<double>(m) + sum.value());
}

RatioDiagnostics sin_condition_profile(double rho, std::int64_t n,
                                       std::int64_t L) {
  if (!(rho > 0.0)) throw std::invalid_argument("sin profile: rho <= 0");
  if (L < 1) throw std::invalid_argument("sin profile: L < 1");
  if (n < 1) throw std::invalid_argument("sin profile: n < 1");
  RatioDiagnostics diag;
  diag.rho = rho;
  diag.nearest_rational = rational_approximation(rho, 1000000);
  diag.epsilon = rho - static_cast<double>(diag.nearest_rational.p) /
                           static_cast<double>(diag.nearest_rational.q);
  const double root_n = std::sqrt(static_cast<double>(n));
  diag.min_value = std::numeric_limits<double>::infinity();
  for (std::int64_t ell = 1; ell <= L; ++ell) {
    const double v =
        root_n * std::abs(sin_pi_times(static_cast<double>(ell) * rho));
    diag.sin_profile.push_back({ell, v});
    diag.min_value = std::min(diag.min_value, v);
    if (v == 0.0) diag.condition_fails = true;
  }
  return diag;
}

}  // namespace le
