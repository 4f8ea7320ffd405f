// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "le/lattice_law.hpp"

namespace le {

/// S = sum of k independent sample means, population j contributing the
/// mean of n_j iid draws from its lattice law.
class MeanSumModel {
 public:
  struct Population {
    LatticeLaw law;
    std::int64_t sample_size = 1;  // n_j
    PopulationMoments moments;     // of a single draw
  };

  MeanSumModel(std::vector<std::pair<LatticeLaw, std::int64_t>> populations);

  std::size_t k() const { return populations_.size(); }
  const std::vector<Population>& populations() const { return populations_; }
  const Population& population(std::size_t j) const { return populations_[j]; }

  /// n = sum of the n_j.
  std::int64_t total_size() const { return total_size_; }
  /// E S = sum of population means.
  double mean() const { return mean_; }
  /// Var S = sum of sigma_j^2 / n_j.
  double variance() const { return variance_; }

 private:
  std::vector<Population> populations_;
  std::int64_t total_size_ = 0;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

}  // namespace le
