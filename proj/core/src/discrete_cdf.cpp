// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/discrete_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "le/kahan.hpp"

namespace le {

DiscreteCdf::DiscreteCdf(std::vector<double> support,
                         std::vector<double> probability)
    : support_(std::move(support)), probability_(std::move(probability)) {
  if (support_.empty() || support_.size() != probability_.size()) {
    throw std::invalid_argument("DiscreteCdf: empty or mismatched arrays");
  }
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (!(support_[i] > support_[i - 1])) {
      throw std::invalid_argument("DiscreteCdf: support not increasing");
    }
  }
  cumulative_.resize(support_.size());
  KahanAccumulator acc;
  for (std::size_t i = 0; i < probability_.size(); ++i) {
    if (probability_[i] < 0.0) {
      throw std::invalid_argument("DiscreteCdf: negative probability");
    }
    acc += probability_[i];
    cumulative_[i] = acc.value();
  }
  if (std::abs(acc.value() - 1.0) > 1e-10) {
    throw std::invalid_argument("DiscreteCdf: mass differs from 1 by > 1e-10");
  }
}

double DiscreteCdf::cdf(double x, double tol) const {
  const double threshold = x + tol;
  auto it = std::upper_bound(support_.begin(), support_.end(), threshold);
  if (it == support_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double DiscreteCdf::mean() const {
  KahanAccumulator acc;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    acc += probability_[i] * support_[i];
  }
  return acc.value();
}

double DiscreteCdf::variance() const { return central_moment(2); }

double DiscreteCdf::central_moment(int k) const {
  if (k < 2) throw std::invalid_argument("central_moment: k >= 2");
  const double m = mean();
  KahanAccumulator acc;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    double term = probability_[i];
    const double d = support_[i] - m;
    for (int j = 0; j < k; ++j) term *= d;
    acc += term;
  }
  return acc.value();
}

}  // namespace le
