// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "le/continued_fraction.hpp"
#include "le/errors.hpp"
#include "le/kahan.hpp"
#include "le/sawtooth.hpp"

namespace le {

namespace {

// Dense nonnegative mass vector with Neumaier-compensated cells, so the
// 1e-10 total-mass invariant survives convolutions with n in the
// thousands.
struct MassVector {
  std::vector<double> sum;
  std::vector<double> comp;

  explicit MassVector(std::size_t n) : sum(n, 0.0), comp(n, 0.0) {}

  void add(std::size_t i, double value) {
    const double t = sum[i] + value;
    if (std::abs(sum[i]) >= std::abs(value)) {
      comp[i] += (sum[i] - t) + value;
    } else {
      comp[i] += (value - t) + sum[i];
    }
    sum[i] = t;
  }

  double value(std::size_t i) const { return sum[i] + comp[i]; }
  std::size_t size() const { return sum.size(); }
};

void check_budget(std::int64_t atoms, std::int64_t budget) {
  if (atoms > budget) {
    throw OracleInfeasibleError(
        "oracle infeasible: " + std::to_string(atoms) +
        " atoms exceed the budget of " + std::to_string(budget));
  }
}

struct ConvolvedPopulation {
  double offset = 0.0;      // support = offset + j * step, j = 0..mass-1
  double step = 0.0;        // e_j / n_j
  std::vector<double> mass; // law of n_j * (X-bar_j - offset) / e_j grid
};

// Law of the sum of n iid copies, on the law's own index grid.
std::vector<double> self_convolve(const LatticeLaw& law, std::int64_t n,
                                  std::int64_t budget) {
  const std::int64_t base = law.pmf.front().first;
  const std::int64_t width = law.pmf.back().first - base;  // >= 1
  const __int128 atoms = static_cast<__int128>(n) * width + 1;
  check_budget(atoms > (__int128{1} << 62)
                   ? std::numeric_limits<std::int64_t>::max()
                   : static_cast<std::int64_t>(atoms),
               budget);

  std::vector<double> single(static_cast<std::size_t>(width + 1), 0.0);
  for (const auto& [index, prob] : law.pmf) {
    single[static_cast<std::size_t>(index - base)] = prob;
  }
  std::vector<double> cur = single;
  for (std::int64_t step = 1; step < n; ++step) {
    MassVector next(cur.size() + single.size() - 1);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] == 0.0) continue;
      for (const auto& [index, prob] : law.pmf) {
        next.add(i + static_cast<std::size_t>(index - base), cur[i] * prob);
      }
    }
    cur.resize(next.size());
    for (std::size_t i = 0; i < next.size(); ++i) cur[i] = next.value(i);
  }
  return cur;
}

ConvolvedPopulation convolve_population(const MeanSumModel::Population& pop,
                                        std::int64_t budget) {
  ConvolvedPopulation out;
  const std::int64_t base = pop.law.pmf.front().first;
  out.offset = pop.law.offset + static_cast<double>(base) * pop.law.span;
  out.step = pop.law.span / static_cast<double>(pop.sample_size);
  out.mass = self_convolve(pop.law, pop.sample_size, budget);
  return out;
}

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// Recognize a double as an intended small rational. The tolerance is
// far below the 1/den^2 error of a genuine irrational's convergent at
// these denominators, so irrational spans fall through to the merging
// path.
std::optional<Rational> rationalize(double x) {
  if (x == 0.0) return Rational{0, 1};
  const double ax = std::abs(x);
  const Convergent c = rational_approximation(ax, 100000);
  const double approx = static_cast<double>(c.p) / static_cast<double>(c.q);
  if (std::abs(ax - approx) > 1e-13 * std::max(1.0, ax)) return std::nullopt;
  if (c.p > 4.0e18) return std::nullopt;
  Rational r;
  r.num = static_cast<std::int64_t>(c.p);
  r.den = static_cast<std::int64_t>(c.q);
  if (x < 0.0) r.num = -r.num;
  return r;
}

std::optional<std::int64_t> checked_lcm(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  const __int128 l = static_cast<__int128>(a / g) * b;
  if (l > 1000000000000LL) return std::nullopt;  // 1e12 grid cap
  return static_cast<std::int64_t>(l);
}

// Exact integer-grid combination. Returns false when the inputs are not
// commensurable within the guards, in which case the caller falls back
// to merged doubles.
bool combine_integer_grid(const std::vector<ConvolvedPopulation>& pops,
                          std::int64_t budget, std::vector<double>* support,
                          std::vector<double>* probability) {
  std::vector<Rational> steps, offsets;
  std::int64_t grid_den = 1;
  for (const auto& pop : pops) {
    auto rs = rationalize(pop.step);
    auto ro = rationalize(pop.offset);
    if (!rs || !ro || rs->num == 0) return false;
    steps.push_back(*rs);
    offsets.push_back(*ro);
    auto l1 = checked_lcm(grid_den, rs->den);
    if (!l1) return false;
    auto l2 = checked_lcm(*l1, ro->den);
    if (!l2) return false;
    grid_den = *l2;
  }

  // Population j contributes base_j + stride_j * nu on the 1/grid_den
  // lattice; work modulo the gcd of the strides to keep arrays small.
  std::vector<std::int64_t> strides(pops.size());
  __int128 base = 0;
  __int128 total_span = 0;
  std::int64_t g = 0;
  for (std::size_t j = 0; j < pops.size(); ++j) {
    const __int128 stride128 =
        static_cast<__int128>(steps[j].num) * (grid_den / steps[j].den);
    if (stride128 > (1LL << 62) || stride128 < -(1LL << 62)) return false;
    strides[j] = static_cast<std::int64_t>(stride128);
    base += static_cast<__int128>(offsets[j].num) * (grid_den / offsets[j].den);
    total_span += static_cast<__int128>(std::abs(strides[j])) *
                  (static_cast<std::int64_t>(pops[j].mass.size()) - 1);
    g = std::gcd(g, std::abs(strides[j]));
  }
  if (g == 0) return false;
  if (total_span / g + 1 > budget) {
    throw OracleInfeasibleError(
        "oracle infeasible: integer grid needs " +
        std::to_string(static_cast<long long>(total_span / g + 1)) +
        " atoms, budget is " + std::to_string(budget));
  }

  const std::size_t width = static_cast<std::size_t>(total_span / g) + 1;
  // Negative strides shift the base so cell indices stay nonnegative.
  for (std::size_t j = 0; j < pops.size(); ++j) {
    if (strides[j] < 0) {
      base += static_cast<__int128>(strides[j]) *
              (static_cast<std::int64_t>(pops[j].mass.size()) - 1);
    }
  }

  std::vector<double> cur{1.0};
  for (std::size_t j = 0; j < pops.size(); ++j) {
    const std::int64_t stride = std::abs(strides[j]) / g;
    const auto& mass = pops[j].mass;
    MassVector next(cur.size() + stride * (mass.size() - 1));
    if (next.size() > width + 8) return false;  // cannot happen; guard
    for (std::size_t t = 0; t < cur.size(); ++t) {
      if (cur[t] == 0.0) continue;
      for (std::size_t v = 0; v < mass.size(); ++v) {
        if (mass[v] == 0.0) continue;
        const std::size_t cell =
            strides[j] >= 0
                ? t + static_cast<std::size_t>(stride) * v
                : t + static_cast<std::size_t>(stride) * (mass.size() - 1 - v);
        next.add(cell, cur[t] * mass[v]);
      }
    }
    cur.resize(next.size());
    for (std::size_t i = 0; i < next.size(); ++i) cur[i] = next.value(i);
  }

  support->clear();
  probability->clear();
  const double den = static_cast<double>(grid_den);
  for (std::size_t t = 0; t < cur.size(); ++t) {
    const double p = cur[t];
    if (p <= 0.0) continue;
    const double pos = static_cast<double>(base + static_cast<__int128>(g) *
                                                      static_cast<std::int64_t>(t));
    support->push_back(pos / den);
    probability->push_back(p);
  }
  return true;
}

void combine_merged(const std::vector<ConvolvedPopulation>& pops,
                    std::int64_t budget, std::vector<double>* support,
                    std::vector<double>* probability) {
  std::vector<std::pair<double, double>> cur{{0.0, 1.0}};
  for (const auto& pop : pops) {
    std::size_t atoms = 0;
    for (double m : pop.mass) atoms += (m > 0.0);
    check_budget(static_cast<std::int64_t>(cur.size() * atoms), budget);

    std::vector<std::pair<double, double>> next;
    next.reserve(cur.size() * atoms);
    for (const auto& [value, prob] : cur) {
      for (std::size_t v = 0; v < pop.mass.size(); ++v) {
        if (pop.mass[v] <= 0.0) continue;
        next.emplace_back(
            value + pop.offset + static_cast<double>(v) * pop.step,
            prob * pop.mass[v]);
      }
    }
    std::sort(next.begin(), next.end());
    // Greedy left-anchored merge at 1e-12 relative distance.
    std::vector<std::pair<double, double>> merged;
    std::size_t i = 0;
    while (i < next.size()) {
      const double anchor = next[i].first;
      const double tol = 1e-12 * std::max({1.0, std::abs(anchor)});
      KahanAccumulator mass;
      std::size_t j = i;
      while (j < next.size() && next[j].first - anchor <= tol) {
        mass += next[j].second;
        ++j;
      }
      merged.emplace_back(anchor, mass.value());
      i = j;
    }
    cur = std::move(merged);
  }
  support->clear();
  probability->clear();
  for (const auto& [value, prob] : cur) {
    if (prob <= 0.0) continue;
    support->push_back(value);
    probability->push_back(prob);
  }
}

}  // namespace

DiscreteCdf exact_sum_distribution(const MeanSumModel& model,
                                   std::int64_t atom_budget) {
  if (atom_budget < 1) {
    throw std::invalid_argument("exact_sum_distribution: bad budget");
  }
  std::vector<ConvolvedPopulation> pops;
  pops.reserve(model.k());
  for (const auto& pop : model.populations()) {
    pops.push_back(convolve_population(pop, atom_budget));
  }
  std::vector<double> support, probability;
  if (!combine_integer_grid(pops, atom_budget, &support, &probability)) {
    combine_merged(pops, atom_budget, &support, &probability);
  }
  return DiscreteCdf(std::move(support), std::move(probability));
}

double exact_cdf_standardized(const MeanSumModel& model, double x,
                              std::int64_t atom_budget) {
  const DiscreteCdf dist = exact_sum_distribution(model, atom_budget);
  const double sd = std::sqrt(model.variance());
  return dist.cdf(model.mean() + x * sd, kAtomInclusionTol * sd);
}

std::vector<double> exact_cdf_standardized_grid(const MeanSumModel& model,
                                                std::span<const double> xs,
                                                std::int64_t atom_budget) {
  const DiscreteCdf dist = exact_sum_distribution(model, atom_budget);
  const double sd = std::sqrt(model.variance());
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    out.push_back(dist.cdf(model.mean() + x * sd, kAtomInclusionTol * sd));
  }
  return out;
}

}  // namespace le
