// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "le/bigint.hpp"

namespace le {

/// A target ratio held as a high-precision decimal string. The string
/// is the value: named constants ship with 66 certified fractional
/// digits, custom strings are trusted as given. Exactly representable
/// as numerator / 10^scale_digits.
class IrrationalSpec {
 public:
  /// One of: sqrt2, sqrt3, sqrt5, e, pi_over_2, golden.
  static IrrationalSpec named(std::string_view name);

  /// decimal: "[digits].[digits]", at least 50 significant digits
  /// recommended for planning; fewer digits certify fewer convergents.
  static IrrationalSpec custom(std::string decimal,
                               std::optional<double> claimed_type = {});

  /// Exact decimal expansion of a (positive, finite) double. Used for
  /// rational targets such as rho0 = 1 or 2 in experiment configs.
  static IrrationalSpec from_double(double value);

  const std::string& name() const { return name_; }
  const std::string& decimal_value() const { return decimal_; }

  /// Literature upper bound on the type eta (>= 1). Metadata only;
  /// nothing in this library asserts it.
  std::optional<double> claimed_type() const { return claimed_type_; }

  const BigUint& numerator() const { return numerator_; }
  const BigUint& denominator() const { return denominator_; }
  std::size_t scale_digits() const { return scale_digits_; }

  double to_double() const;

  /// <ell * value>: distance from ell*value to the nearest integer,
  /// computed in exact decimal arithmetic then rounded once.
  double multiple_nearest_int_distance(std::uint64_t ell) const;

  /// [m * value]: nearest integer, halves rounded away from zero.
  std::int64_t nearest_int_multiple(std::int64_t m) const;

 private:
  IrrationalSpec() = default;

  std::string name_;
  std::string decimal_;
  std::optional<double> claimed_type_;
  BigUint numerator_;
  BigUint denominator_;
  std::size_t scale_digits_ = 0;
};

/// Typical geometric growth exponent of convergent denominators:
/// (1/k) log q_k -> pi^2 / (12 log 2) for almost every real number
/// (Khinchin-Levy), so successive denominators grow by a factor of
/// about exp(1.1866) ~ 3.28 on average.
inline constexpr double kKhinchinLevyExponent = 1.1865691104156254527521;

}  // namespace le
