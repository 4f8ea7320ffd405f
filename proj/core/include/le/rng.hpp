// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace le {

/// Counter-based generator: output i is a pure function of (key, i), so
/// streams keyed by (seed, row, replicate) reproduce bit-identically no
/// matter how work is scheduled across threads. The mixer is the
/// splitmix64 finalizer.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  /// Derive an independent subkey; chain for (seed, row, replicate).
  static std::uint64_t derive(std::uint64_t key, std::uint64_t index);
  static std::uint64_t derive(std::uint64_t key, std::uint64_t a,
                              std::uint64_t b);

  std::uint64_t next_u64();

  /// Uniform on [0,1) with 53 random bits.
  double next_double();

  /// Uniform integer on [0, n), unbiased (Lemire rejection). n >= 1.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace le
