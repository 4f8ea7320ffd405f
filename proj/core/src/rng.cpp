// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/rng.hpp"

#include <stdexcept>

namespace le {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t CounterRng::derive(std::uint64_t key, std::uint64_t index) {
  return mix64(mix64(key + kGolden) ^ mix64(index + 0x94D049BB133111EBull));
}

std::uint64_t CounterRng::derive(std::uint64_t key, std::uint64_t a,
                                 std::uint64_t b) {
  return derive(derive(key, a), b);
}

std::uint64_t CounterRng::next_u64() {
  return mix64(key_ + (++counter_) * kGolden);
}

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below: n must be >= 1");
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace le
