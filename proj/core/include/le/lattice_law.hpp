// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace le {

/// A finite lattice distribution: support points offset + index * span.
/// Construction normalizes to the maximal span (index differences are
/// gcd-reduced) and shifts the offset so the smallest index is 0.
/// Immutable after construction.
struct LatticeLaw {
  double offset = 0.0;  // x_j
  double span = 1.0;    // e_j, maximal lattice edge width
  std::vector<std::pair<std::int64_t, double>> pmf;  // sorted, probs > 0

  std::int64_t max_index() const { return pmf.back().first; }
};

/// Validates and normalizes. Throws std::invalid_argument for a
/// degenerate (single-atom) law, negative probabilities, probabilities
/// not summing to 1 within 1e-12, or span <= 0.
LatticeLaw make_lattice_law(
    double offset, double span,
    const std::vector<std::pair<std::int64_t, double>>& pmf);

/// Two-point law on {0, 1} with P(X = 0) = p. This is the literal
/// convention of the experiments this library reproduces; pass
/// success_prob = true for the usual P(X = 1) = p parameterization.
LatticeLaw bernoulli(double p, bool success_prob = false);

struct PopulationMoments {
  double mean = 0.0;
  double variance = 0.0;
  double mu3 = 0.0;  // third central moment
  double mu4 = 0.0;  // fourth central moment
};

/// Exact moments by direct summation over the atoms.
PopulationMoments moments(const LatticeLaw& law);

/// Shared by LatticeLaw and plug-in empirical distributions: moments of
/// the law with P(offset + index*span) = prob, atoms in given order.
PopulationMoments moments_from_atoms(
    const std::vector<std::pair<std::int64_t, double>>& pmf, double offset,
    double span);

}  // namespace le
