// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "le/edgeworth.hpp"
#include "le/mean_sum_model.hpp"
#include "le/rng.hpp"

namespace le {

/// Observations from one population, stored as lattice indices so that
/// resampling arithmetic is exact integer work: value = offset +
/// index * span. Immutable after construction.
struct PopulationSample {
  double offset = 0.0;
  double span = 1.0;
  std::vector<std::int64_t> indices;

  /// Snaps values onto the lattice; throws when an observation is more
  /// than 1e-9 (relative) off it.
  static PopulationSample from_values(double offset, double span,
                                      std::span<const double> values);

  std::int64_t n() const { return static_cast<std::int64_t>(indices.size()); }
  std::int64_t index_sum() const;
  double mean() const;

  /// Plug-in moments of the empirical distribution (divide by n).
  PopulationMoments plugin_moments() const;
};

class SampleSet {
 public:
  explicit SampleSet(std::vector<PopulationSample> populations);

  /// One draw of n_j observations per population from the model's laws.
  static SampleSet draw(const MeanSumModel& model, CounterRng& rng);

  std::size_t k() const { return populations_.size(); }
  const std::vector<PopulationSample>& populations() const {
    return populations_;
  }

  /// S = sum of the observed sample means.
  double sum_of_means() const;

 private:
  std::vector<PopulationSample> populations_;
};

/// S* = sum over populations of the mean of n_j draws with replacement
/// from that population's observations.
double resample_sum(const SampleSet& data, CounterRng& rng);

struct BootstrapQuantile {
  double alpha = 0.0;
  double s_hat = 0.0;  // inf{s : P(S*-S <= s | data) >= alpha}
  std::int64_t B = 0;
};

/// Empirical inf-quantile of B resampled values of S* - S: the
/// ceil(alpha B)-th order statistic, no interpolation.
BootstrapQuantile bootstrap_quantile(const SampleSet& data, double alpha,
                                     std::int64_t B, CounterRng& rng);

struct HalfLine {
  double upper = 0.0;  // the interval (-inf, upper]
};

/// Percentile interval (-inf, S - s_hat_alpha].
HalfLine percentile_interval(const SampleSet& data, double alpha,
                             std::int64_t B, CounterRng& rng);

/// Plug-in expansion: the population quantities replaced by exact
/// conditional moments of the resampled means (closed forms, not Monte
/// Carlo). Throws for a degenerate sample (zero plug-in variance).
ExpansionBreakdown plugin_expansion(const SampleSet& data, double x,
                                    ExpansionVariant variant,
                                    const BlockingConfig& cfg = {});

enum class CoverageConvention {
  literal,     // (-inf, S - s_hat_alpha]; nominal coverage 1 - alpha
  complement,  // (-inf, S - s_hat_{1-alpha}]; nominal coverage alpha
};

std::string_view convention_name(CoverageConvention c);
CoverageConvention convention_from_name(std::string_view name);
double nominal_coverage(CoverageConvention c, double alpha);

struct CoverageRow {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  double alpha = 0.0;
  CoverageConvention convention = CoverageConvention::literal;
  double coverage = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
  std::int64_t B = 0;
  std::uint64_t seed = 0;
};

/// Repeats: draw data from the model, build the interval from B
/// resamples, record whether E(S) lands inside. Replicates run on
/// substreams keyed by (seed, replicate), so results are bit-identical
/// for a given seed regardless of worker count.
CoverageRow coverage_experiment(const MeanSumModel& model, double alpha,
                                std::int64_t reps, std::int64_t B,
                                std::uint64_t seed,
                                CoverageConvention convention);

}  // namespace le
