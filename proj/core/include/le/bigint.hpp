// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace le {

/// Arbitrary-precision unsigned integer, base 2^32 limbs, little-endian.
/// Sized for 60..80-digit decimal constants; only the handful of
/// operations continued fractions and sawtooth distances need.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(std::uint64_t v);

  /// Parse a run of ASCII digits. Throws std::invalid_argument on
  /// anything else (callers strip the decimal point first).
  static BigUint from_decimal(std::string_view digits);
  static BigUint pow10(std::size_t k);

  bool is_zero() const { return limbs_.empty(); }
  std::size_t bit_length() const;

  /// -1, 0, +1 for <, ==, >.
  int compare(const BigUint& other) const;
  bool operator==(const BigUint& o) const { return compare(o) == 0; }
  bool operator<(const BigUint& o) const { return compare(o) < 0; }
  bool operator<=(const BigUint& o) const { return compare(o) <= 0; }

  BigUint& operator+=(const BigUint& other);
  /// Requires *this >= other.
  BigUint& operator-=(const BigUint& other);

  BigUint mul_u64(std::uint64_t m) const;
  BigUint mul(const BigUint& other) const;
  void increment();

  /// Schoolbook binary long division. den must be nonzero.
  static void divmod(const BigUint& num, const BigUint& den, BigUint& quot,
                     BigUint& rem);

  /// Throws std::overflow_error when the value exceeds 64 bits.
  std::uint64_t to_u64() const;
  /// Nearest double (monotone truncation of low bits; relative error
  /// ~1e-16, which is all callers need).
  double to_double() const;
  std::string to_decimal() const;

 private:
  void trim();
  bool bit(std::size_t i) const;
  void set_bit(std::size_t i);
  void shift_left_one();

  std::vector<std::uint32_t> limbs_;  // little-endian, no trailing zeros
};

}  // namespace le
