// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "le/continued_fraction.hpp"

namespace le {

/// The default evaluation grid for chi_discrepancy: the N breakpoints
/// frac(tau * i) where the sawtooth sum jumps, each with +-1e-9
/// offsets so both one-sided limits are sampled. The sum is piecewise
/// linear between breakpoints, so this grid-sup equals the true sup up
/// to slope * 1e-9.
std::vector<double> chi_default_grid(std::int64_t N, double tau);

/// chi(N, q, tau) = max over the grid of
///   | sum_{i=1..N} q(i/N) psi(z - tau i) |,
/// where q is the polynomial with the given coefficients (constant
/// first). Exact sup over z is attained on the breakpoint set.
double chi_discrepancy(std::int64_t N, std::span<const double> poly_coeffs,
                       double tau, std::span<const double> z_grid);

/// Erdos-Turan / Koksma style right-hand side
///   C * ( N/m + sum_{l=1..m} 1 / (l |sin(l tau pi)|) ).
/// Throws std::invalid_argument when some l <= m has sin(l tau pi) = 0
/// (rational tau with denominator <= m): the bound is undefined there.
double erdos_turan_rhs(std::int64_t N, std::int64_t m, double tau, double C);

/// Classical Erdos-Turan constant used as the default C for q == 1.
inline constexpr double kErdosTuranConstant = 3.0;

struct SinProfilePoint {
  std::int64_t ell = 0;
  double value = 0.0;  // sqrt(n) * |sin(ell rho pi)|
};

/// Oscillation-condition diagnostics for an observed ratio
/// rho = e2 n1 / (e1 n2).
struct RatioDiagnostics {
  double rho = 0.0;
  Convergent nearest_rational;  // best p/q with q <= 10^6
  double epsilon = 0.0;         // rho - p/q
  std::vector<SinProfilePoint> sin_profile;
  double min_value = 0.0;
  bool condition_fails = false;  // some profile entry is exactly zero
};

RatioDiagnostics sin_condition_profile(double rho, std::int64_t n,
                                       std::int64_t L);

}  // namespace le
