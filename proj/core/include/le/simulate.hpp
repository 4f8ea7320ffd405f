// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "le/bootstrap.hpp"
#include "le/edgeworth.hpp"
#include "le/irrational.hpp"
#include "le/mean_sum_model.hpp"
#include "le/oracle.hpp"

namespace le {

enum class EstimateMethod {
  mc,
  oracle,
  smooth,
  two_sample_direct,
  two_sample_blocked,
};

std::string_view method_name(EstimateMethod m);
EstimateMethod method_from_name(std::string_view name);

struct N1Range {
  std::int64_t start = 10;
  std::int64_t end = 80;
  std::int64_t step = 1;
};

enum class N2RuleKind {
  nearest_int,   // n2 = [rho0 * n1]
  convergent,    // rows only where n1/n2 is a convergent of rho0
  offset_power,  // n2 = n1 + [n1^kappa]
};

struct N2Rule {
  N2RuleKind kind = N2RuleKind::nearest_int;
  double kappa = 0.2;  // offset-power exponent, in (0,1)
};

struct ExperimentConfig {
  std::vector<LatticeLaw> laws;  // exactly two population templates
  IrrationalSpec rho0 = IrrationalSpec::from_double(1.0);
  N1Range n1_range;
  N2Rule n2_rule;
  std::vector<double> alphas{0.95, 0.85, 0.75};
  std::int64_t reps = 100000;
  std::optional<std::uint64_t> seed;
  EstimateMethod method = EstimateMethod::oracle;
  BlockingConfig blocking;
  std::int64_t oracle_budget = kDefaultOracleBudget;
};

struct SimRow {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  double x = 0.0;
  double alpha = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::string method;
  std::uint64_t seed = 0;
};

struct SimTable {
  std::vector<SimRow> rows;
};

/// Monte Carlo estimate of P{(S-ES)/sqrt(Var S) <= x} with binomial
/// standard error. Replicates run on substreams keyed by (stream_key,
/// replicate); identical keys give bit-identical results.
std::pair<double, double> estimate_P(const MeanSumModel& model, double x,
                                     std::int64_t reps,
                                     std::uint64_t stream_key);

/// n2 for a given n1 under the rule; nullopt when the rule yields no
/// pair at this n1 (convergent rule off-plan, or n2 < 1).
std::optional<std::int64_t> n2_for(const N2Rule& rule,
                                   const IrrationalSpec& rho0,
                                   std::int64_t n1);

/// One row per (n1, alpha): n2 from the rule, estimate from the
/// configured method (Monte Carlo, exact oracle, or an expansion
/// variant). Rows where the oracle is infeasible are flagged with
/// method "oracle-infeasible" and NaN estimates, never dropped.
SimTable run_pvals_grid(const ExperimentConfig& config);

/// Standard deviation of estimates at the given alpha after removing a
/// least-squares linear trend in 1/sqrt(n1); isolates the oscillating
/// lattice component from the smooth skew decay. Needs >= 8 rows.
double oscillation_amplitude(const SimTable& table, double alpha);

struct CoverageConfig {
  std::vector<LatticeLaw> laws;
  IrrationalSpec rho0 = IrrationalSpec::from_double(1.0);
  N1Range n1_range;
  N2Rule n2_rule;
  std::vector<double> alphas{0.95};
  std::vector<CoverageConvention> conventions{CoverageConvention::literal};
  std::int64_t reps = 1000;
  std::int64_t B = 999;
  std::optional<std::uint64_t> seed;
  /// Parametric resampling is accepted for two-point laws only, where
  /// the fitted law equals the empirical distribution and the two
  /// resampling schemes coincide.
  bool parametric = false;
};

/// Coverage of the percentile interval over the (n1, alpha, convention)
/// grid. Each row runs on a substream derived from (seed, row index).
std::vector<CoverageRow> run_coverage(const CoverageConfig& config);

}  // namespace le
