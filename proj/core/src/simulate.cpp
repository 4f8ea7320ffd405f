// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "le/continued_fraction.hpp"
#include "le/errors.hpp"
#include "le/kahan.hpp"
#include "le/normal.hpp"
#include "le/parallel.hpp"
#include "le/rng.hpp"

namespace le {

std::string_view method_name(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::mc:
      return "mc";
    case EstimateMethod::oracle:
      return "oracle";
    case EstimateMethod::smooth:
      return "smooth";
    case EstimateMethod::two_sample_direct:
      return "two-sample-direct";
    case EstimateMethod::two_sample_blocked:
      return "two-sample-blocked";
  }
  return "unknown";
}

EstimateMethod method_from_name(std::string_view name) {
  if (name == "mc") return EstimateMethod::mc;
  if (name == "oracle") return EstimateMethod::oracle;
  if (name == "smooth") return EstimateMethod::smooth;
  if (name == "two-sample-direct") return EstimateMethod::two_sample_direct;
  if (name == "two-sample-blocked") return EstimateMethod::two_sample_blocked;
  throw std::invalid_argument("unknown estimate method: " + std::string(name));
}

namespace {

// Per-population index sampler: cumulative inverse-CDF over the atoms.
struct LawSampler {
  std::vector<double> cumulative;
  std::vector<std::int64_t> index;

  explicit LawSampler(const LatticeLaw& law) {
    KahanAccumulator acc;
    for (const auto& [idx, prob] : law.pmf) {
      acc += prob;
      cumulative.push_back(acc.value());
      index.push_back(idx);
    }
  }

  std::int64_t draw(CounterRng& rng) const {
    const double u = rng.next_double();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t at =
        std::min(static_cast<std::size_t>(it - cumulative.begin()),
                 index.size() - 1);
    return index[at];
  }
};

}  // namespace

std::pair<double, double> estimate_P(const MeanSumModel& model, double x,
                                     std::int64_t reps,
                                     std::uint64_t stream_key) {
  if (reps < 1) throw std::invalid_argument("estimate_P: reps < 1");
  std::vector<LawSampler> samplers;
  samplers.reserve(model.k());
  for (const auto& pop : model.populations()) {
    samplers.emplace_back(pop.law);
  }
  const double sd = std::sqrt(model.variance());
  const double mean = model.mean();
  // Same atom-inclusion tolerance as the oracle CDF.
  const double threshold = x + kAtomInclusionTol;

  std::vector<std::uint8_t> hit(static_cast<std::size_t>(reps), 0);
  parallel_for(reps, [&](std::int64_t rep) {
    CounterRng rng(
        CounterRng::derive(stream_key, static_cast<std::uint64_t>(rep)));
    KahanAccumulator s;
    for (std::size_t j = 0; j < samplers.size(); ++j) {
      const auto& pop = model.population(j);
      std::int64_t sum = 0;
      for (std::int64_t i = 0; i < pop.sample_size; ++i) {
        sum += samplers[j].draw(rng);
      }
      s += pop.law.offset + pop.law.span * (static_cast<double>(sum) /
                                            static_cast<double>(pop.sample_size));
    }
    const double standardized = (s.value() - mean) / sd;
    hit[static_cast<std::size_t>(rep)] = standardized <= threshold ? 1 : 0;
  });
  std::int64_t count = 0;
  for (std::uint8_t h : hit) count += h;
  const double p = static_cast<double>(count) / static_cast<double>(reps);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
  return {p, se};
}

std::optional<std::int64_t> n2_for(const N2Rule& rule,
                                   const IrrationalSpec& rho0,
                                   std::int64_t n1) {
  switch (rule.kind) {
    case N2RuleKind::nearest_int: {
      const std::int64_t n2 = rho0.nearest_int_multiple(n1);
      if (n2 < 1) return std::nullopt;
      return n2;
    }
    case N2RuleKind::convergent: {
      const auto plan = plan_sample_sizes(
          rho0, std::max<std::int64_t>(n1, 2), PlanMode::convergent);
      for (const auto& entry : plan.entries) {
        if (entry.n1 == n1) return entry.n2;
      }
      return std::nullopt;
    }
    case N2RuleKind::offset_power: {
      if (!(rule.kappa > 0.0 && rule.kappa < 1.0)) {
        throw std::invalid_argument("offset-power rule: kappa in (0,1)");
      }
      const double offset =
          std::round(std::pow(static_cast<double>(n1), rule.kappa));
      return n1 + static_cast<std::int64_t>(offset);
    }
  }
  return std::nullopt;
}

SimTable run_pvals_grid(const ExperimentConfig& config) {
  if (config.laws.size() != 2) {
    throw std::invalid_argument("experiment config: exactly two populations");
  }
  if (config.n1_range.step < 1 ||
      config.n1_range.end < config.n1_range.start) {
    throw std::invalid_argument("experiment config: bad n1 range");
  }
  if (config.alphas.empty()) {
    throw std::invalid_argument("experiment config: no alpha levels");
  }
  if (config.method == EstimateMethod::mc && !config.seed) {
    throw std::invalid_argument("experiment config: mc method needs a seed");
  }
  const std::uint64_t seed = config.seed.value_or(0);

  SimTable table;
  std::uint64_t row_index = 0;
  for (std::int64_t n1 = config.n1_range.start; n1 <= config.n1_range.end;
       n1 += config.n1_range.step) {
    const auto n2 = n2_for(config.n2_rule, config.rho0, n1);
    if (!n2) continue;
    for (double alpha : config.alphas) {
      const double x = normal_quantile(alpha);
      SimRow row;
      row.n1 = n1;
      row.n2 = *n2;
      row.x = x;
      row.alpha = alpha;
      row.seed = seed;
      row.method = std::string(method_name(config.method));
      const MeanSumModel model(
          {{config.laws[0], n1}, {config.laws[1], *n2}});
      try {
        switch (config.method) {
          case EstimateMethod::mc: {
            const auto [p, se] = estimate_P(
                model, x, config.reps, CounterRng::derive(seed, row_index));
            row.estimate = p;
            row.std_error = se;
            break;
          }
          case EstimateMethod::oracle:
            row.estimate =
                exact_cdf_standardized(model, x, config.oracle_budget);
            row.std_error = 0.0;
            break;
          case EstimateMethod::smooth:
          case EstimateMethod::two_sample_direct:
          case EstimateMethod::two_sample_blocked: {
            const ExpansionVariant variant =
                config.method == EstimateMethod::smooth
                    ? ExpansionVariant::smooth
                    : (config.method == EstimateMethod::two_sample_direct
                           ? ExpansionVariant::two_sample_direct
                           : ExpansionVariant::two_sample_blocked);
            const ExpansionBreakdown breakdown =
                full_expansion(model, x, variant, config.blocking);
            row.estimate = std::clamp(breakdown.total, 0.0, 1.0);
            row.std_error = 0.0;
            break;
          }
        }
      } catch (const OracleInfeasibleError&) {
        row.method = "oracle-infeasible";
        row.estimate = std::numeric_limits<double>::quiet_NaN();
        row.std_error = std::numeric_limits<double>::quiet_NaN();
      }
      table.rows.push_back(std::move(row));
      ++row_index;
    }
  }
  return table;
}

double oscillation_amplitude(const SimTable& table, double alpha) {
  std::vector<std::pair<double, double>> points;  // (1/sqrt(n1), estimate)
  for (const auto& row : table.rows) {
    if (std::abs(row.alpha - alpha) < 1e-12 && std::isfinite(row.estimate)) {
      points.emplace_back(1.0 / std::sqrt(static_cast<double>(row.n1)),
                          row.estimate);
    }
  }
  const auto m = static_cast<double>(points.size());
  if (points.size() < 8) {
    throw std::invalid_argument(
        "oscillation_amplitude: needs >= 8 rows at this alpha");
  }
  // Least squares fit estimate ~ a + b / sqrt(n1).
  KahanAccumulator st, sy, stt, sty;
  for (const auto& [t, y] : points) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double det = m * stt.value() - st.value() * st.value();
  double a, b;
  if (std::abs(det) < 1e-30) {  // all n1 equal: fall back to the mean
    a = sy.value() / m;
    b = 0.0;
  } else {
    b = (m * sty.value() - st.value() * sy.value()) / det;
    a = (sy.value() - b * st.value()) / m;
  }
  KahanAccumulator ss;
  for (const auto& [t, y] : points) {
    const double r = y - (a + b * t);
    ss += r * r;
  }
  return std::sqrt(ss.value() / m);
}

std::vector<CoverageRow> run_coverage(const CoverageConfig& config) {
  if (config.laws.size() != 2) {
    throw std::invalid_argument("coverage config: exactly two populations");
  }
  if (!config.seed) {
    throw std::invalid_argument("coverage config: seed required");
  }
  if (config.alphas.empty() || config.conventions.empty()) {
    throw std::invalid_argument("coverage config: empty alpha/convention set");
  }
  if (config.parametric) {
    for (const auto& law : config.laws) {
      if (law.pmf.size() != 2) {
        throw std::invalid_argument(
            "coverage config: parametric resampling is supported for "
            "two-point laws only (there it equals empirical resampling)");
      }
    }
  }
  std::vector<CoverageRow> rows;
  std::uint64_t row_index = 0;
  for (std::int64_t n1 = config.n1_range.start; n1 <= config.n1_range.end;
       n1 += config.n1_range.step) {
    const auto n2 = n2_for(config.n2_rule, config.rho0, n1);
    if (!n2) continue;
    const MeanSumModel model({{config.laws[0], n1}, {config.laws[1], *n2}});
    for (double alpha : config.alphas) {
      for (CoverageConvention convention : config.conventions) {
        CoverageRow row = coverage_experiment(
            model, alpha, config.reps, config.B,
            CounterRng::derive(*config.seed, row_index), convention);
        row.seed = *config.seed;  // report the master seed
        rows.push_back(row);
        ++row_index;
      }
    }
  }
  return rows;
}

}  // namespace le
