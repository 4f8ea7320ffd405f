// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "le/discrete_cdf.hpp"
#include "le/mean_sum_model.hpp"

namespace le {

inline constexpr std::int64_t kDefaultOracleBudget = 10'000'000;

/// Exact law of S by n_j-fold self-convolution of each population and
/// cross-convolution of the rescaled means. Inputs whose offsets and
/// spans are small rationals take an exact integer-grid path (common
/// denominator across populations); otherwise support points are merged
/// at 1e-12 relative distance. Throws OracleInfeasibleError when more
/// than `atom_budget` atoms would be materialized.
DiscreteCdf exact_sum_distribution(const MeanSumModel& model,
                                   std::int64_t atom_budget =
                                       kDefaultOracleBudget);

/// P{ (S - ES) / sqrt(Var S) <= x }, left-closed. Atom inclusion uses a
/// 1e-9 standardized tolerance so thresholds that land on an atom (up
/// to rounding) include it.
double exact_cdf_standardized(const MeanSumModel& model, double x,
                              std::int64_t atom_budget = kDefaultOracleBudget);

/// Same, sharing one convolution across a grid of x values.
std::vector<double> exact_cdf_standardized_grid(
    const MeanSumModel& model, std::span<const double> xs,
    std::int64_t atom_budget = kDefaultOracleBudget);

}  // namespace le
