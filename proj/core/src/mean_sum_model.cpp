// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/mean_sum_model.hpp"

#include <stdexcept>

#include "le/kahan.hpp"

namespace le {

MeanSumModel::MeanSumModel(
    std::vector<std::pair<LatticeLaw, std::int64_t>> populations) {
  if (populations.empty()) {
    throw std::invalid_argument("MeanSumModel: needs k >= 1 populations");
  }
  KahanAccumulator mean, variance;
  populations_.reserve(populations.size());
  for (auto& [law, n] : populations) {
    if (n < 1) throw std::invalid_argument("MeanSumModel: sample size < 1");
    Population pop;
    pop.moments = moments(law);
    pop.law = std::move(law);
    pop.sample_size = n;
    if (!(pop.moments.variance > 0.0)) {
      throw std::invalid_argument("MeanSumModel: zero-variance population");
    }
    total_size_ += n;
    mean += pop.moments.mean;
    variance += pop.moments.variance / static_cast<double>(n);
    populations_.push_back(std::move(pop));
  }
  mean_ = mean.value();
  variance_ = variance.value();
}

}  // namespace le
