// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace le {

/// Neumaier-compensated accumulator. Drop-in for a plain `double sum`
/// in loops that only ever `+=` and read the final value.
struct KahanAccumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void operator+=(double value) {
    const double t = sum + value;
    if (std::abs(sum) >= std::abs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + compensation; }
  operator double() const { return value(); }
};

}  // namespace le
