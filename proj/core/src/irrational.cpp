// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/irrational.hpp"

#include <cmath>
#include <stdexcept>

namespace le {

namespace {

struct NamedConstant {
  const char* name;
  const char* decimal;  // truncated (not rounded) expansions
  double claimed_type;  // literature bounds; sqrt/golden/e are type 1
};

// 66 fractional digits each; unit tests re-derive every string with
// integer arithmetic (isqrt, Taylor series, Machin's formula).
constexpr NamedConstant kNamedConstants[] = {
    {"sqrt2",
     "1.414213562373095048801688724209698078569671875376948073176679737990",
     1.0},
    {"sqrt3",
     "1.732050807568877293527446341505872366942805253810380628055806979451",
     1.0},
    {"sqrt5",
     "2.236067977499789696409173668731276235440618359611525724270897245410",
     1.0},
    {"e",
     "2.718281828459045235360287471352662497757247093699959574966967627724",
     1.0},
    {"pi_over_2",
     "1.570796326794896619231321691639751442098584699687552910487472296153",
     6.61},
    {"golden",
     "1.618033988749894848204586834365638117720309179805762862135448622705",
     1.0},
};

}  // namespace

IrrationalSpec IrrationalSpec::named(std::string_view name) {
  for (const auto& c : kNamedConstants) {
    if (name == c.name) {
      IrrationalSpec spec = custom(c.decimal, c.claimed_type);
      spec.name_ = c.name;
      return spec;
    }
  }
  throw std::invalid_argument("unknown named irrational: " +
                              std::string(name));
}

IrrationalSpec IrrationalSpec::custom(std::string decimal,
                                      std::optional<double> claimed_type) {
  if (claimed_type && *claimed_type < 1.0) {
    throw std::invalid_argument("claimed_type must be >= 1");
  }
  const auto dot = decimal.find('.');
  std::string int_part = dot == std::string::npos ? decimal
                                                  : decimal.substr(0, dot);
  std::string frac_part =
      dot == std::string::npos ? std::string() : decimal.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("empty decimal value");
  }
  if (int_part.empty()) int_part = "0";

  IrrationalSpec spec;
  spec.name_ = "custom";
  spec.decimal_ = decimal;
  spec.claimed_type_ = claimed_type;
  spec.scale_digits_ = frac_part.size();
  spec.numerator_ = BigUint::from_decimal(int_part + frac_part);
  spec.denominator_ = BigUint::pow10(frac_part.size());
  return spec;
}

IrrationalSpec IrrationalSpec::from_double(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("rho0 must be positive and finite");
  }
  // value = v * 2^-k with v integral; then v * 5^k / 10^k is exact.
  double v = value;
  int k = 0;
  while (v != std::floor(v)) {
    v *= 2.0;
    ++k;
    if (k > 1100) throw std::invalid_argument("rho0: cannot rationalize");
  }
  if (v > 9.0e18) {
    throw std::invalid_argument("rho0: value too large to rationalize");
  }
  BigUint num(static_cast<std::uint64_t>(v));
  for (int i = 0; i < k; ++i) num = num.mul_u64(5);
  BigUint den = BigUint::pow10(static_cast<std::size_t>(k));

  IrrationalSpec spec;
  spec.name_ = "custom";
  spec.decimal_ = num.to_decimal();  // scaled; decimal_ kept for reference
  if (k > 0) {
    std::string digits = spec.decimal_;
    while (digits.size() <= static_cast<std::size_t>(k)) {
      digits.insert(digits.begin(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(k), 1, '.');
    spec.decimal_ = digits;
  }
  spec.scale_digits_ = static_cast<std::size_t>(k);
  spec.numerator_ = std::move(num);
  spec.denominator_ = std::move(den);
  return spec;
}

double IrrationalSpec::to_double() const {
  return numerator_.to_double() / denominator_.to_double();
}

double IrrationalSpec::multiple_nearest_int_distance(std::uint64_t ell) const {
  BigUint q, r;
  BigUint::divmod(numerator_.mul_u64(ell), denominator_, q, r);
  const double f = r.to_double() / denominator_.to_double();
  return std::min(f, 1.0 - f);
}

std::int64_t IrrationalSpec::nearest_int_multiple(std::int64_t m) const {
  if (m < 0) throw std::invalid_argument("nearest_int_multiple: m < 0");
  BigUint q, r;
  BigUint::divmod(numerator_.mul_u64(static_cast<std::uint64_t>(m)),
                  denominator_, q, r);
  std::uint64_t base = q.to_u64();
  // round half away from zero (value is positive)
  if (denominator_ <= r.mul_u64(2)) ++base;
  return static_cast<std::int64_t>(base);
}

}  // namespace le
