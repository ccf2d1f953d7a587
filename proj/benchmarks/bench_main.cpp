#include <benchmark/benchmark.h>

#include "erlang_spectral/characteristic.hpp"
#include "erlang_spectral/discrete.hpp"
#include "erlang_spectral/specfun.hpp"
#include "erlang_spectral/transient.hpp"

using namespace erlang_spectral;

static void BM_pcf(benchmark::State& s) {
  const double z = static_cast<double>(s.range(0)) / 2;
  for (auto _ : s) benchmark::DoNotOptimize(pcf_eval(-0.37, z));
}
BENCHMARK(BM_pcf)->Arg(0)->Arg(4)->Arg(12)->Arg(-8);

static void BM_pcf_extended(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(pcf<ext_float>(ext_float(-0.37), ext_float(1.5)));
}
BENCHMARK(BM_pcf_extended);

static void BM_char_v(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(char_v(-0.8, Params{1.0, 0.5}));
}
BENCHMARK(BM_char_v);

static void BM_spectral_gap(benchmark::State& s) {
  const double eta = 1.0 / static_cast<double>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(spectral_gap(Params{2.0, eta}));
}
BENCHMARK(BM_spectral_gap)->Arg(2)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_spectral_gap_near_eta(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(spectral_gap(Params{-1.0, 0.025}));
}
BENCHMARK(BM_spectral_gap_near_eta)->Unit(benchmark::kMillisecond);

static void BM_spectral_density(benchmark::State& s) {
  const SpectralExpansion e(Params{0.5, 0.5}, 30);
  for (auto _ : s) benchmark::DoNotOptimize(e.density(0.3, -0.5, 1.0));
}
BENCHMARK(BM_spectral_density);

static void BM_delta_det(benchmark::State& s) {
  const int m = static_cast<int>(s.range(0));
  const DiscreteParams dp = DiscreteParams::halfin_whitt(m, 1.0, 0.5);
  for (auto _ : s) benchmark::DoNotOptimize(delta_det(-0.8, dp));
}
BENCHMARK(BM_delta_det)->Arg(25)->Arg(400);

static void BM_generator_gap(benchmark::State& s) {
  const int m = static_cast<int>(s.range(0));
  const DiscreteParams dp = DiscreteParams::halfin_whitt(m, 1.0, 0.5);
  for (auto _ : s) benchmark::DoNotOptimize(generator_gap(dp));
}
BENCHMARK(BM_generator_gap)->Arg(25)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
