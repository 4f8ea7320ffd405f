// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "le/bootstrap.hpp"
#include "le/discrepancy.hpp"
#include "le/edgeworth.hpp"
#include "le/normal.hpp"
#include "le/oracle.hpp"
#include "le/rng.hpp"
#include "le/simulate.hpp"

namespace {

le::MeanSumModel two_bernoulli_model(std::int64_t n1, std::int64_t n2) {
  return le::MeanSumModel{{{le::bernoulli(0.4), n1},
                           {le::bernoulli(0.6), n2}}};
}

void BM_ExactSumDistribution(benchmark::State& state) {
  const auto n1 = state.range(0);
  const auto model = two_bernoulli_model(n1, le::IrrationalSpec::named("sqrt2")
                                            .nearest_int_multiple(n1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(le::exact_sum_distribution(model));
  }
}
BENCHMARK(BM_ExactSumDistribution)->Arg(20)->Arg(80)->Arg(320);

void BM_KDirect(benchmark::State& state) {
  const auto params =
      le::TwoSampleParams::from_model(two_bernoulli_model(state.range(0),
                                                     state.range(0)));
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(le::K_direct(params, x));
    x = x < 2.0 ? x + 1e-3 : -2.0;  // sweep to defeat caching
  }
}
BENCHMARK(BM_KDirect)->Arg(20)->Arg(200);

void BM_KBlocked(benchmark::State& state) {
  const auto params =
      le::TwoSampleParams::from_model(two_bernoulli_model(state.range(0),
                                                     state.range(0)));
  const le::BlockingConfig cfg;
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(le::K_blocked(params, x, cfg));
    x = x < 2.0 ? x + 1e-3 : -2.0;
  }
}
BENCHMARK(BM_KBlocked)->Arg(20)->Arg(200);

void BM_ChiDiscrepancy(benchmark::State& state) {
  const auto N = state.range(0);
  const double tau = std::sqrt(2.0);
  const std::vector<double> one{1.0};
  const auto grid = le::chi_default_grid(N, tau);
  for (auto _ : state) {
    benchmark::DoNotOptimize(le::chi_discrepancy(N, one, tau, grid));
  }
}
BENCHMARK(BM_ChiDiscrepancy)->Arg(100)->Arg(1000);

void BM_BootstrapQuantile(benchmark::State& state) {
  le::CounterRng draw_rng(7);
  const auto data = le::SampleSet::draw(two_bernoulli_model(40, 57), draw_rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    le::CounterRng rng(++seed);
    benchmark::DoNotOptimize(
        le::bootstrap_quantile(data, 0.95, state.range(0), rng));
  }
}
BENCHMARK(BM_BootstrapQuantile)->Arg(99)->Arg(999);

void BM_EstimateP(benchmark::State& state) {
  const auto model = two_bernoulli_model(20, 28);
  const double z95 = le::normal_quantile(0.95);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        le::estimate_P(model, z95, state.range(0), 12345));
  }
}
BENCHMARK(BM_EstimateP)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
