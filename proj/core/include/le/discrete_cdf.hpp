// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace le {

/// Exact finite discrete distribution with a cached cumulative table.
/// Support strictly increasing; total mass within 1e-10 of 1.
class DiscreteCdf {
 public:
  DiscreteCdf(std::vector<double> support, std::vector<double> probability);

  std::size_t size() const { return support_.size(); }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& probability() const { return probability_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

  /// P(S <= x + tol). Left-closed; a small positive tol absorbs the
  /// rounding of standardized thresholds onto atom positions.
  double cdf(double x, double tol = 0.0) const;

  double mean() const;
  double variance() const;
  /// k-th central moment, k >= 2.
  double central_moment(int k) const;

 private:
  std::vector<double> support_;
  std::vector<double> probability_;
  std::vector<double> cumulative_;
};

}  // namespace le
