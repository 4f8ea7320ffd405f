// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace le {

BigUint::BigUint(std::uint64_t v) {
  if (v != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  }
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_decimal(std::string_view digits) {
  if (digits.empty()) throw std::invalid_argument("BigUint: empty digits");
  BigUint out;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') {
      throw std::invalid_argument("BigUint: invalid decimal digit");
    }
    out = out.mul_u64(10);
    std::uint64_t carry = static_cast<std::uint64_t>(ch - '0');
    for (std::size_t i = 0; carry != 0; ++i) {
      if (i == out.limbs_.size()) out.limbs_.push_back(0);
      carry += out.limbs_[i];
      out.limbs_[i] = static_cast<std::uint32_t>(carry);
      carry >>= 32;
    }
  }
  return out;
}

BigUint BigUint::pow10(std::size_t k) {
  BigUint out(1);
  for (std::size_t i = 0; i < k; ++i) out = out.mul_u64(10);
  return out;
}

std::size_t BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  std::uint32_t top = limbs_.back();
  std::size_t bits = (limbs_.size() - 1) * 32;
  while (top != 0) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

int BigUint::compare(const BigUint& other) const {
  if (limbs_.size() != other.limbs_.size()) {
    return limbs_.size() < other.limbs_.size() ? -1 : 1;
  }
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != other.limbs_[i]) {
      return limbs_[i] < other.limbs_[i] ? -1 : 1;
    }
  }
  return 0;
}

BigUint& BigUint::operator+=(const BigUint& other) {
  const std::size_t n = std::max(limbs_.size(), other.limbs_.size());
  limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    carry += limbs_[i];
    if (i < other.limbs_.size()) carry += other.limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(carry);
    carry >>= 32;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

BigUint& BigUint::operator-=(const BigUint& other) {
  if (compare(other) < 0) throw std::invalid_argument("BigUint: underflow");
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t cur = static_cast<std::int64_t>(limbs_[i]) - borrow -
                       (i < other.limbs_.size()
                            ? static_cast<std::int64_t>(other.limbs_[i])
                            : 0);
    borrow = 0;
    if (cur < 0) {
      cur += (std::int64_t{1} << 32);
      borrow = 1;
    }
    limbs_[i] = static_cast<std::uint32_t>(cur);
  }
  trim();
  return *this;
}

BigUint BigUint::mul_u64(std::uint64_t m) const {
  BigUint out;
  if (m == 0 || is_zero()) return out;
  const std::uint64_t lo = m & 0xFFFFFFFFull;
  const std::uint64_t hi = m >> 32;
  // value*m = value*lo + (value*hi << 32), done limb-wise.
  out.limbs_.assign(limbs_.size() + 2, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    carry += static_cast<std::uint64_t>(limbs_[i]) * lo + out.limbs_[i];
    out.limbs_[i] = static_cast<std::uint32_t>(carry);
    carry >>= 32;
  }
  out.limbs_[limbs_.size()] = static_cast<std::uint32_t>(carry);
  out.limbs_[limbs_.size() + 1] = static_cast<std::uint32_t>(carry >> 32);
  if (hi != 0) {
    carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      carry += static_cast<std::uint64_t>(limbs_[i]) * hi + out.limbs_[i + 1];
      out.limbs_[i + 1] = static_cast<std::uint32_t>(carry);
      carry >>= 32;
    }
    for (std::size_t i = limbs_.size() + 1; carry != 0; ++i) {
      if (i == out.limbs_.size()) out.limbs_.push_back(0);
      carry += out.limbs_[i];
      out.limbs_[i] = static_cast<std::uint32_t>(carry);
      carry >>= 32;
    }
  }
  out.trim();
  return out;
}

BigUint BigUint::mul(const BigUint& other) const {
  BigUint out;
  if (is_zero() || other.is_zero()) return out;
  out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
      carry += static_cast<std::uint64_t>(limbs_[i]) * other.limbs_[j] +
               out.limbs_[i + j];
      out.limbs_[i + j] = static_cast<std::uint32_t>(carry);
      carry >>= 32;
    }
    std::size_t k = i + other.limbs_.size();
    while (carry != 0) {
      carry += out.limbs_[k];
      out.limbs_[k] = static_cast<std::uint32_t>(carry);
      carry >>= 32;
      ++k;
    }
  }
  out.trim();
  return out;
}

void BigUint::increment() {
  std::uint64_t carry = 1;
  for (std::size_t i = 0; carry != 0; ++i) {
    if (i == limbs_.size()) limbs_.push_back(0);
    carry += limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(carry);
    carry >>= 32;
  }
}

bool BigUint::bit(std::size_t i) const {
  const std::size_t limb = i / 32;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (i % 32)) & 1u;
}

void BigUint::set_bit(std::size_t i) {
  const std::size_t limb = i / 32;
  if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
  limbs_[limb] |= (std::uint32_t{1} << (i % 32));
}

void BigUint::shift_left_one() {
  std::uint32_t carry = 0;
  for (auto& limb : limbs_) {
    const std::uint32_t next = limb >> 31;
    limb = (limb << 1) | carry;
    carry = next;
  }
  if (carry) limbs_.push_back(carry);
}

void BigUint::divmod(const BigUint& num, const BigUint& den, BigUint& quot,
                     BigUint& rem) {
  if (den.is_zero()) throw std::invalid_argument("BigUint: division by zero");
  quot = BigUint();
  rem = BigUint();
  for (std::size_t i = num.bit_length(); i-- > 0;) {
    rem.shift_left_one();
    if (num.bit(i)) {
      if (rem.limbs_.empty()) rem.limbs_.push_back(0);
      rem.limbs_[0] |= 1u;
    }
    if (den.compare(rem) <= 0) {
      rem -= den;
      quot.set_bit(i);
    }
  }
  quot.trim();
  rem.trim();
}

std::uint64_t BigUint::to_u64() const {
  if (limbs_.size() > 2) throw std::overflow_error("BigUint: > 64 bits");
  std::uint64_t v = 0;
  if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
  if (!limbs_.empty()) v |= limbs_[0];
  return v;
}

double BigUint::to_double() const {
  double v = 0.0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    v = v * 4294967296.0 + static_cast<double>(limbs_[i]);
  }
  return v;
}

std::string BigUint::to_decimal() const {
  if (is_zero()) return "0";
  std::string out;
  BigUint cur = *this;
  const BigUint billion(1000000000u);
  BigUint q, r;
  while (!cur.is_zero()) {
    divmod(cur, billion, q, r);
    std::uint64_t chunk = r.to_u64();
    for (int d = 0; d < 9; ++d) {
      out.push_back(static_cast<char>('0' + chunk % 10));
      chunk /= 10;
    }
    cur = q;
  }
  while (out.size() > 1 && out.back() == '0') out.pop_back();
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace le
