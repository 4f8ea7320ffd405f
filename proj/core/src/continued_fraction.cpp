// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/continued_fraction.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "le/errors.hpp"
#include "le/kahan.hpp"

namespace le {

double nearest_int_distance(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("nearest_int_distance: non-finite x");
  }
  const double f = x - std::floor(x);
  return std::min(f, 1.0 - f);
}

namespace {

// One Euclid chain: emits partial quotients of num/den.
struct EuclidChain {
  BigUint num, den;
  bool done = false;

  // Returns false when the chain terminated (exactly rational).
  bool next(std::uint64_t& quotient) {
    if (done || den.is_zero()) {
      done = true;
      return false;
    }
    BigUint q, r;
    BigUint::divmod(num, den, q, r);
    quotient = q.to_u64();  // throws std::overflow_error if absurd
    num = den;
    den = r;
    if (den.is_zero()) done = true;
    return true;
  }
};

std::vector<std::uint64_t> certified_quotients(const IrrationalSpec& value,
                                               int limit, bool* exhausted,
                                               bool* terminated) {
  EuclidChain lo{value.numerator(), value.denominator()};
  BigUint hi_num = value.numerator();
  hi_num.increment();  // rounded up at the last retained digit
  EuclidChain hi{hi_num, value.denominator()};

  std::vector<std::uint64_t> out;
  *exhausted = false;
  *terminated = false;
  while (static_cast<int>(out.size()) < limit) {
    std::uint64_t a_lo = 0, a_hi = 0;
    const bool ok_lo = lo.next(a_lo);
    if (ok_lo && lo.done) {
      // The stored digits are exactly rational. The string is trusted
      // as the exact value, so its terminating expansion is complete
      // regardless of the rounded-up chain.
      out.push_back(a_lo);
      *terminated = true;
      return out;
    }
    const bool ok_hi = hi.next(a_hi);
    if (!ok_lo || !ok_hi || a_lo != a_hi) {
      // Interval [value, value + ulp] no longer pins this quotient.
      *exhausted = true;
      return out;
    }
    out.push_back(a_lo);
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> continued_fraction(const IrrationalSpec& value,
                                              int depth) {
  if (depth < 1) throw std::invalid_argument("continued_fraction: depth < 1");
  bool exhausted = false, terminated = false;
  auto q = certified_quotients(value, depth, &exhausted, &terminated);
  if (static_cast<int>(q.size()) < depth) {
    throw PrecisionExhaustedError(
        "continued_fraction: certification fails at depth " +
            std::to_string(q.size() + 1) + " (have " +
            std::to_string(value.scale_digits()) + " fractional digits)",
        static_cast<int>(q.size() + 1));
  }
  return q;
}

std::vector<std::uint64_t> continued_fraction_certified_prefix(
    const IrrationalSpec& value, int max_depth) {
  bool exhausted = false, terminated = false;
  return certified_quotients(value, max_depth, &exhausted, &terminated);
}

namespace {

// |p/q - num/den| <= 1/q^2, checked in exact integer arithmetic.
// Returns |p/q - num/den| as a double.
double certify_quadratic_bound(std::uint64_t p, std::uint64_t q, const BigUint& num,
                     const BigUint& den) {
  BigUint lhs = den.mul_u64(p);   // p * den
  BigUint rhs = num.mul_u64(q);   // q * num
  BigUint diff = lhs;
  if (diff.compare(rhs) < 0) {
    diff = rhs;
    diff -= lhs;
  } else {
    diff -= rhs;
  }
  if (den.compare(diff.mul_u64(q)) < 0) {
    throw std::logic_error("convergent failed the q^-2 certificate");
  }
  return diff.to_double() / (static_cast<double>(q) * den.to_double());
}

}  // namespace

std::vector<Convergent> convergents(std::span<const std::uint64_t> quotients,
                                    const IrrationalSpec& value) {
  if (quotients.empty()) {
    throw std::invalid_argument("convergents: empty quotient list");
  }
  using u128 = unsigned __int128;
  constexpr u128 kMax64 = static_cast<u128>(~std::uint64_t{0});
  std::vector<Convergent> out;
  out.reserve(quotients.size());
  u128 pk_minus1 = 1, pk_minus2 = 0;
  u128 qk_minus1 = 0, qk_minus2 = 1;
  for (std::uint64_t a : quotients) {
    u128 pk, qk;
    if (__builtin_mul_overflow(static_cast<u128>(a), pk_minus1, &pk) ||
        __builtin_add_overflow(pk, pk_minus2, &pk) ||
        __builtin_mul_overflow(static_cast<u128>(a), qk_minus1, &qk) ||
        __builtin_add_overflow(qk, qk_minus2, &qk) || pk > kMax64 ||
        qk > kMax64) {
      throw std::overflow_error("convergents: 64-bit output range exceeded");
    }
    const auto pu = static_cast<std::uint64_t>(pk);
    const auto qu = static_cast<std::uint64_t>(qk);
    Convergent c;
    c.p = pu;
    c.q = qu;
    c.error_bound = certify_quadratic_bound(pu, qu, value.numerator(),
                                  value.denominator());
    if (std::gcd(pu, qu) != 1) {
      throw std::logic_error("convergents: non-coprime pair");
    }
    out.push_back(c);
    pk_minus2 = pk_minus1;
    pk_minus1 = pk;
    qk_minus2 = qk_minus1;
    qk_minus1 = qk;
  }
  return out;
}

Convergent rational_approximation(double x, std::int64_t max_den) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::invalid_argument("rational_approximation: need finite x >= 0");
  }
  if (max_den < 1) {
    throw std::invalid_argument("rational_approximation: max_den < 1");
  }
  double y = x;
  std::uint64_t p_prev = 1, q_prev = 0;
  std::uint64_t p = static_cast<std::uint64_t>(std::floor(y));
  std::uint64_t q = 1;
  for (int step = 0; step < 64; ++step) {
    const double frac = y - std::floor(y);
    if (frac <= 0.0) break;
    y = 1.0 / frac;
    const double af = std::floor(y);
    if (af > 9.0e18) break;
    const auto a = static_cast<std::uint64_t>(af);
    const std::uint64_t p_next = a * p + p_prev;
    const std::uint64_t q_next = a * q + q_prev;
    if (q_next > static_cast<std::uint64_t>(max_den) || q_next < q) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  Convergent c;
  c.p = p;
  c.q = q;
  c.error_bound = std::abs(x - static_cast<double>(p) / static_cast<double>(q));
  return c;
}

ConvergentPlan plan_sample_sizes(const IrrationalSpec& rho0,
                                 std::int64_t n_max, PlanMode mode) {
  if (n_max < 2) throw std::invalid_argument("plan_sample_sizes: n_max < 2");
  ConvergentPlan plan;
  plan.rho0 = rho0.name() == "custom" ? rho0.decimal_value() : rho0.name();
  plan.mode = mode;

  if (mode == PlanMode::nearest_int) {
    for (std::int64_t n1 = 2; n1 <= n_max; ++n1) {
      const std::int64_t n2 = rho0.nearest_int_multiple(n1);
      if (n2 < 1) continue;
      PlanEntry e;
      e.n1 = n1;
      e.n2 = n2;
      e.abs_error = std::abs(static_cast<double>(n2) / static_cast<double>(n1) -
                             rho0.to_double());
      e.bound = 0.5 / static_cast<double>(n1);
      plan.entries.push_back(e);
    }
    return plan;
  }

  bool exhausted = false, terminated = false;
  const auto quotients =
      certified_quotients(rho0, 256, &exhausted, &terminated);
  if (quotients.empty()) {
    throw PrecisionExhaustedError(
        "plan_sample_sizes: no certifiable partial quotients", 1);
  }
  // Incremental recurrence, stopping as soon as the plan range is
  // covered; later convergents may overflow 64 bits and are not needed.
  bool range_covered = terminated;
  using u128 = unsigned __int128;
  u128 pk_minus1 = 1, pk_minus2 = 0, qk_minus1 = 0, qk_minus2 = 1;
  for (std::size_t k = 0; k < quotients.size(); ++k) {
    const u128 pk = static_cast<u128>(quotients[k]) * pk_minus1 + pk_minus2;
    const u128 qk = static_cast<u128>(quotients[k]) * qk_minus1 + qk_minus2;
    if (pk > static_cast<u128>(n_max) || qk > static_cast<u128>(n_max)) {
      range_covered = true;
      break;
    }
    if (k >= 1) {  // skip the integer zeroth convergent
      const auto pu = static_cast<std::uint64_t>(pk);
      const auto qu = static_cast<std::uint64_t>(qk);
      PlanEntry e;
      e.n1 = static_cast<std::int64_t>(pu);
      e.n2 = static_cast<std::int64_t>(qu);
      e.abs_error = certify_quadratic_bound(pu, qu, rho0.numerator(),
                                  rho0.denominator());
      e.bound = 1.0 / (static_cast<double>(qu) * static_cast<double>(qu));
      plan.entries.push_back(e);
    }
    pk_minus2 = pk_minus1;
    pk_minus1 = pk;
    qk_minus2 = qk_minus1;
    qk_minus1 = qk;
  }
  if (!range_covered) {
    throw PrecisionExhaustedError(
        "plan_sample_sizes: digits certify only part of the requested range",
        static_cast<int>(quotients.size() + 1));
  }
  return plan;
}

double type_sum(const IrrationalSpec& rho0, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("type_sum: m < 1");
  KahanAccumulator sum;
  for (std::int64_t ell = 1; ell <= m; ++ell) {
    const double d =
        rho0.multiple_nearest_int_distance(static_cast<std::uint64_t>(ell));
    if (d == 0.0) {
      throw std::invalid_argument(
          "type_sum: <l rho0> = 0 at l = " + std::to_string(ell) +
          " (rho0 is rational)");
    }
    sum += 1.0 / (static_cast<double>(ell) * d);
  }
  return sum.value();
}

}  // namespace le
