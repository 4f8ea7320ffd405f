// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "le/kahan.hpp"
#include "le/normal.hpp"
#include "le/parallel.hpp"

namespace le {

PopulationSample PopulationSample::from_values(double offset, double span,
                                               std::span<const double> values) {
  if (!(span > 0.0)) throw std::invalid_argument("sample: span <= 0");
  if (values.empty()) throw std::invalid_argument("sample: empty population");
  PopulationSample out;
  out.offset = offset;
  out.span = span;
  out.indices.reserve(values.size());
  for (double v : values) {
    const double idx = (v - offset) / span;
    const double snapped = std::nearbyint(idx);
    if (std::abs(idx - snapped) > 1e-9 * std::max(1.0, std::abs(idx))) {
      throw std::invalid_argument("sample: observation off the lattice");
    }
    out.indices.push_back(static_cast<std::int64_t>(snapped));
  }
  return out;
}

std::int64_t PopulationSample::index_sum() const {
  std::int64_t s = 0;
  for (std::int64_t i : indices) s += i;
  return s;
}

double PopulationSample::mean() const {
  return offset + span * (static_cast<double>(index_sum()) /
                          static_cast<double>(n()));
}

PopulationMoments PopulationSample::plugin_moments() const {
  // Histogram the indices so the empirical moments use the same
  // atom-ordered accumulation as LatticeLaw moments; when the empirical
  // distribution equals a law exactly, so do the moments.
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t i : indices) ++counts[i];
  std::vector<std::pair<std::int64_t, double>> pmf;
  pmf.reserve(counts.size());
  const double inv_n = 1.0 / static_cast<double>(n());
  for (const auto& [index, count] : counts) {
    pmf.emplace_back(index, static_cast<double>(count) * inv_n);
  }
  return moments_from_atoms(pmf, offset, span);
}

SampleSet::SampleSet(std::vector<PopulationSample> populations)
    : populations_(std::move(populations)) {
  if (populations_.empty()) {
    throw std::invalid_argument("SampleSet: needs k >= 1 populations");
  }
  for (const auto& pop : populations_) {
    if (pop.indices.empty()) {
      throw std::invalid_argument("SampleSet: empty population");
    }
  }
}

SampleSet SampleSet::draw(const MeanSumModel& model, CounterRng& rng) {
  std::vector<PopulationSample> pops;
  pops.reserve(model.k());
  for (const auto& pop : model.populations()) {
    // Inverse-CDF draw over the law's atoms.
    std::vector<double> cumulative;
    cumulative.reserve(pop.law.pmf.size());
    KahanAccumulator acc;
    for (const auto& [index, prob] : pop.law.pmf) {
      acc += prob;
      cumulative.push_back(acc.value());
    }
    PopulationSample sample;
    sample.offset = pop.law.offset;
    sample.span = pop.law.span;
    sample.indices.reserve(static_cast<std::size_t>(pop.sample_size));
    for (std::int64_t i = 0; i < pop.sample_size; ++i) {
      const double u = rng.next_double();
      const auto it =
          std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const std::size_t at = std::min(
          static_cast<std::size_t>(it - cumulative.begin()),
          pop.law.pmf.size() - 1);
      sample.indices.push_back(pop.law.pmf[at].first);
    }
    pops.push_back(std::move(sample));
  }
  return SampleSet(std::move(pops));
}

double SampleSet::sum_of_means() const {
  KahanAccumulator s;
  for (const auto& pop : populations_) s += pop.mean();
  return s.value();
}

namespace {

std::int64_t resample_index_sum(const PopulationSample& pop, CounterRng& rng) {
  const auto n = static_cast<std::uint64_t>(pop.n());
  std::int64_t sum = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    sum += pop.indices[static_cast<std::size_t>(rng.next_below(n))];
  }
  return sum;
}

// S* - S as an exact function of integer index sums; location shifts of
// the data cancel algebraically, never through float subtraction.
double resample_delta(const SampleSet& data,
                      std::span<const std::int64_t> data_sums,
                      CounterRng& rng) {
  KahanAccumulator delta;
  const auto& pops = data.populations();
  for (std::size_t j = 0; j < pops.size(); ++j) {
    const std::int64_t diff = resample_index_sum(pops[j], rng) - data_sums[j];
    delta += pops[j].span * static_cast<double>(diff) /
             static_cast<double>(pops[j].n());
  }
  return delta.value();
}

std::vector<std::int64_t> index_sums(const SampleSet& data) {
  std::vector<std::int64_t> sums;
  sums.reserve(data.k());
  for (const auto& pop : data.populations()) sums.push_back(pop.index_sum());
  return sums;
}

std::int64_t quantile_rank(double alpha, std::int64_t B) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("bootstrap: alpha must lie in (0,1)");
  }
  if (B < 1) throw std::invalid_argument("bootstrap: B < 1");
  auto rank = static_cast<std::int64_t>(
      std::ceil(alpha * static_cast<double>(B)));
  return std::clamp<std::int64_t>(rank, 1, B);
}

}  // namespace

double resample_sum(const SampleSet& data, CounterRng& rng) {
  KahanAccumulator s;
  for (const auto& pop : data.populations()) {
    s += pop.offset + pop.span *
                          (static_cast<double>(resample_index_sum(pop, rng)) /
                           static_cast<double>(pop.n()));
  }
  return s.value();
}

BootstrapQuantile bootstrap_quantile(const SampleSet& data, double alpha,
                                     std::int64_t B, CounterRng& rng) {
  const std::int64_t rank = quantile_rank(alpha, B);
  const auto sums = index_sums(data);
  std::vector<double> deltas(static_cast<std::size_t>(B));
  for (std::int64_t b = 0; b < B; ++b) {
    deltas[static_cast<std::size_t>(b)] = resample_delta(data, sums, rng);
  }
  std::nth_element(deltas.begin(), deltas.begin() + (rank - 1), deltas.end());
  BootstrapQuantile q;
  q.alpha = alpha;
  q.B = B;
  q.s_hat = deltas[static_cast<std::size_t>(rank - 1)];
  return q;
}

HalfLine percentile_interval(const SampleSet& data, double alpha,
                             std::int64_t B, CounterRng& rng) {
  const BootstrapQuantile q = bootstrap_quantile(data, alpha, B, rng);
  return HalfLine{data.sum_of_means() - q.s_hat};
}

ExpansionBreakdown plugin_expansion(const SampleSet& data, double x,
                                    ExpansionVariant variant,
                                    const BlockingConfig& cfg) {
  const auto& pops = data.populations();
  std::vector<PopulationMoments> hat(pops.size());
  std::vector<PopulationSummary> summaries(pops.size());
  for (std::size_t j = 0; j < pops.size(); ++j) {
    hat[j] = pops[j].plugin_moments();
    if (!(hat[j].variance > 0.0)) {
      throw std::invalid_argument(
          "plugin_expansion: degenerate sample in population " +
          std::to_string(j + 1));
    }
    summaries[j] = {hat[j].variance, hat[j].mu3, pops[j].n()};
  }
  const double beta_hat = skewness_beta(summaries);
  std::int64_t n = 0;
  for (const auto& pop : pops) n += pop.n();

  ExpansionBreakdown out;
  out.x = x;
  out.variant = variant;
  out.normal = normal_cdf(x);
  out.skew = (1.0 / std::sqrt(static_cast<double>(n))) * (1.0 / 6.0) *
             beta_hat * (1.0 - x * x) * normal_pdf(x);
  out.lattice = 0.0;

  switch (variant) {
    case ExpansionVariant::smooth:
      break;
    case ExpansionVariant::one_sample: {
      if (pops.size() != 1) {
        throw std::invalid_argument("one-sample plug-in needs k = 1");
      }
      const auto& pop = pops[0];
      const double sigma = std::sqrt(hat[0].variance);
      const double root_n = std::sqrt(static_cast<double>(pop.n()));
      const double xi = (pop.span / (sigma * root_n)) *
                        (0.5 - psi(static_cast<double>(pop.n()) * pop.offset /
                                   pop.span));
      out.lattice = (1.0 / root_n) * (pop.span / sigma) *
                    psi((x + kAtomInclusionTol - xi) * sigma * root_n /
                        pop.span) *
                    normal_pdf(x);
      break;
    }
    case ExpansionVariant::two_sample_direct:
    case ExpansionVariant::two_sample_blocked: {
      if (pops.size() != 2) {
        throw std::invalid_argument("two-sample plug-in needs k = 2");
      }
      TwoSampleParams params;
      params.e1 = pops[0].span;
      params.e2 = pops[1].span;
      params.x1 = pops[0].offset;
      params.x2 = pops[1].offset;
      params.n1 = pops[0].n();
      params.n2 = pops[1].n();
      params.sigma1 = std::sqrt(hat[0].variance);
      params.sigma2 = std::sqrt(hat[1].variance);
      const double x_lattice = x + kAtomInclusionTol;
      const double K = variant == ExpansionVariant::two_sample_direct
                           ? K_direct(params, x_lattice, cfg.tail_eps)
                           : K_blocked(params, x_lattice, cfg);
      out.lattice = K / std::sqrt(static_cast<double>(params.n1) *
                                  static_cast<double>(params.n2));
      break;
    }
  }
  out.total = out.normal + out.skew + out.lattice;
  return out;
}

std::string_view convention_name(CoverageConvention c) {
  return c == CoverageConvention::literal ? "literal" : "complement";
}

CoverageConvention convention_from_name(std::string_view name) {
  if (name == "literal") return CoverageConvention::literal;
  if (name == "complement") return CoverageConvention::complement;
  throw std::invalid_argument("unknown coverage convention: " +
                              std::string(name));
}

double nominal_coverage(CoverageConvention c, double alpha) {
  return c == CoverageConvention::literal ? 1.0 - alpha : alpha;
}

CoverageRow coverage_experiment(const MeanSumModel& model, double alpha,
                                std::int64_t reps, std::int64_t B,
                                std::uint64_t seed,
                                CoverageConvention convention) {
  if (reps < 1) throw std::invalid_argument("coverage: reps < 1");
  const double quantile_alpha =
      convention == CoverageConvention::literal ? alpha : 1.0 - alpha;
  (void)quantile_rank(quantile_alpha, B);  // validate up front
  const double target = model.mean();

  std::vector<std::uint8_t> hit(static_cast<std::size_t>(reps), 0);
  parallel_for(reps, [&](std::int64_t rep) {
    CounterRng rng(CounterRng::derive(seed, static_cast<std::uint64_t>(rep)));
    const SampleSet data = SampleSet::draw(model, rng);
    const BootstrapQuantile q =
        bootstrap_quantile(data, quantile_alpha, B, rng);
    // E(S) in (-inf, S - s_hat] <=> s_hat <= S - E(S).
    hit[static_cast<std::size_t>(rep)] =
        q.s_hat <= data.sum_of_means() - target ? 1 : 0;
  });
  std::int64_t count = 0;
  for (std::uint8_t h : hit) count += h;

  CoverageRow row;
  row.n1 = model.population(0).sample_size;
  row.n2 = model.k() > 1 ? model.population(1).sample_size : 0;
  row.alpha = alpha;
  row.convention = convention;
  row.coverage = static_cast<double>(count) / static_cast<double>(reps);
  row.std_error =
      std::sqrt(row.coverage * (1.0 - row.coverage) /
                static_cast<double>(reps));
  row.reps = reps;
  row.B = B;
  row.seed = seed;
  return row;
}

}  // namespace le
