// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "le/irrational.hpp"

namespace le {

/// Distance from x to the nearest integer, in [0, 1/2].
double nearest_int_distance(double x);

/// First `depth` partial quotients [a0; a1, ...] of the decimal value.
/// Every quotient is certified: the Euclid chains for the value rounded
/// down and up at its last retained digit must agree. Throws
/// PrecisionExhaustedError naming the failing depth otherwise.
std::vector<std::uint64_t> continued_fraction(const IrrationalSpec& value,
                                              int depth);

/// All quotients certifiable from the stored digits (capped), without
/// throwing. An exactly-rational value yields its full terminating CF.
std::vector<std::uint64_t> continued_fraction_certified_prefix(
    const IrrationalSpec& value, int max_depth = 256);

/// A best rational approximation p/q with the certificate
/// |p/q - target| <= 1/q^2 checked at construction time.
struct Convergent {
  std::uint64_t p = 0;
  std::uint64_t q = 1;
  double error_bound = 0.0;  // |p/q - target|, rounded outward
};

/// p_k = a_k p_{k-1} + p_{k-2}, q_k likewise. Wide (128-bit) arithmetic
/// with overflow detection; throws std::overflow_error when a numerator
/// or denominator leaves the 64-bit output range. Each convergent is
/// certified against `value`.
std::vector<Convergent> convergents(std::span<const std::uint64_t> quotients,
                                    const IrrationalSpec& value);

/// Best rational approximation of a plain double with denominator <=
/// max_den, by the continued fraction of x. For diagnostics of observed
/// ratios; no high-precision certificate beyond the double itself.
Convergent rational_approximation(double x, std::int64_t max_den);

enum class PlanMode { convergent, nearest_int };

struct PlanEntry {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  double abs_error = 0.0;  // convergent: |n1/n2 - rho0|; nearest-int: |n2/n1 - rho0|
  double bound = 0.0;      // convergent: n2^-2; nearest-int: 1/(2 n1)
};

struct ConvergentPlan {
  std::string rho0;
  PlanMode mode = PlanMode::convergent;
  std::vector<PlanEntry> entries;
};

/// Sample-size pairs for suppressing the lattice term.
///  convergent:  coprime (n1, n2) with n1, n2 <= n_max and n1/n2 a
///               convergent of rho0 (the integer zeroth convergent is
///               skipped); every pair satisfies |n1/n2 - rho0| <= n2^-2.
///  nearest-int: (n1, [rho0 * n1]) for n1 = 2..n_max.
ConvergentPlan plan_sample_sizes(const IrrationalSpec& rho0,
                                 std::int64_t n_max, PlanMode mode);

/// sum_{l=1}^{m} 1 / (l * <l rho0>), evaluated with the exact decimal
/// value. Grows like m^(eta-1+delta) for a type-eta target.
double type_sum(const IrrationalSpec& rho0, std::int64_t m);

}  // namespace le
