// SPDX-License-Identifier: Apache-2.0
//
// Micro-benchmarks for the hot paths: estimation error (closed form and
// quadrature), capacity evaluations, and the two overhead optimizers.

#include <benchmark/benchmark.h>

#include "pilotse/efficiency.h"
#include "pilotse/estimation.h"
#include "pilotse/mimo.h"
#include "pilotse/snr.h"
#include "pilotse/special_functions.h"
#include "pilotse/spectra.h"

namespace {

using namespace pilotse;

void BM_MmseClarkeJakesClosed(benchmark::State& state) {
  const SnrLinear snr(10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmse_clarke_jakes_closed(snr, 0.1, 0.02, 1.0));
  }
}
BENCHMARK(BM_MmseClarkeJakesClosed);

void BM_MmseClarkeJakesQuadrature(benchmark::State& state) {
  const Continuous model{DopplerSpec(0.02, SpectralShape::clarke_jakes())};
  const SnrLinear snr(10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmse(model, snr, 0.1, 1.0));
  }
}
BENCHMARK(BM_MmseClarkeJakesQuadrature);

void BM_MmseTabulated(benchmark::State& state) {
  const SpectralShape shape = SpectralShape::tabulated(
      {{-1.0, 0.1}, {-0.2, 0.8}, {0.4, 0.6}, {1.0, 0.2}});
  const Continuous model{DopplerSpec(0.02, shape)};
  const SnrLinear snr(10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmse(model, snr, 0.1, 1.0));
  }
}
BENCHMARK(BM_MmseTabulated);

void BM_CapacityScalar(benchmark::State& state) {
  const SnrLinear snr(10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(capacity_csi(snr));
  }
}
BENCHMARK(BM_CapacityScalar);

void BM_CapacityMimo(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SnrLinear snr(10.0);
  capacity_mimo({n, n}, snr);  // warm the cached quadrature rule
  for (auto _ : state) {
    benchmark::DoNotOptimize(capacity_mimo({n, n}, snr));
  }
}
BENCHMARK(BM_CapacityMimo)->Arg(2)->Arg(4)->Arg(8);

void BM_OptimizeOverhead(benchmark::State& state) {
  const Continuous model{DopplerSpec(0.02, SpectralShape::clarke_jakes())};
  const SnrLinear snr(10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_overhead(model, snr, false));
  }
}
BENCHMARK(BM_OptimizeOverhead);

void BM_OptimizeOverheadBoost(benchmark::State& state) {
  const Continuous model{DopplerSpec(0.001, SpectralShape::clarke_jakes())};
  const SnrLinear snr(10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_overhead(model, snr, true));
  }
}
BENCHMARK(BM_OptimizeOverheadBoost);

}  // namespace

BENCHMARK_MAIN();
