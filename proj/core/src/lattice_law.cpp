// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/lattice_law.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "le/kahan.hpp"

namespace le {

LatticeLaw make_lattice_law(
    double offset, double span,
    const std::vector<std::pair<std::int64_t, double>>& pmf) {
  if (!std::isfinite(offset) || !std::isfinite(span)) {
    throw std::invalid_argument("lattice law: non-finite offset or span");
  }
  if (!(span > 0.0)) throw std::invalid_argument("lattice law: span <= 0");

  std::vector<std::pair<std::int64_t, double>> atoms;
  KahanAccumulator mass;
  for (const auto& [index, prob] : pmf) {
    if (prob < 0.0 || !std::isfinite(prob)) {
      throw std::invalid_argument("lattice law: negative probability");
    }
    if (prob == 0.0) continue;
    atoms.emplace_back(index, prob);
    mass += prob;
  }
  if (atoms.size() < 2) {
    throw std::invalid_argument("lattice law: degenerate (needs >= 2 atoms)");
  }
  if (std::abs(mass.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("lattice law: probabilities must sum to 1");
  }
  std::sort(atoms.begin(), atoms.end());
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].first == atoms[i - 1].first) {
      throw std::invalid_argument("lattice law: duplicate support index");
    }
  }

  // Maximal-span normalization: gcd-reduce index gaps, rebase to 0.
  const std::int64_t base = atoms.front().first;
  std::int64_t g = 0;
  for (const auto& [index, prob] : atoms) g = std::gcd(g, index - base);
  LatticeLaw law;
  law.offset = offset + static_cast<double>(base) * span;
  law.span = span * static_cast<double>(g);
  law.pmf.reserve(atoms.size());
  for (const auto& [index, prob] : atoms) {
    law.pmf.emplace_back((index - base) / g, prob);
  }
  return law;
}

LatticeLaw bernoulli(double p, bool success_prob) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("bernoulli: p must lie in (0,1)");
  }
  const double p0 = success_prob ? 1.0 - p : p;
  return make_lattice_law(0.0, 1.0, {{0, p0}, {1, 1.0 - p0}});
}

PopulationMoments moments_from_atoms(
    const std::vector<std::pair<std::int64_t, double>>& pmf, double offset,
    double span) {
  KahanAccumulator mean;
  for (const auto& [index, prob] : pmf) {
    mean += prob * (offset + static_cast<double>(index) * span);
  }
  const double m = mean.value();
  KahanAccumulator v2, v3, v4;
  for (const auto& [index, prob] : pmf) {
    const double d = (offset + static_cast<double>(index) * span) - m;
    v2 += prob * d * d;
    v3 += prob * d * d * d;
    v4 += prob * d * d * d * d;
  }
  PopulationMoments out;
  out.mean = m;
  out.variance = v2.value();
  out.mu3 = v3.value();
  out.mu4 = v4.value();
  return out;
}

PopulationMoments moments(const LatticeLaw& law) {
  return moments_from_atoms(law.pmf, law.offset, law.span);
}

}  // namespace le
