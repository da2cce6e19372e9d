#include <benchmark/benchmark.h>

#include <algorithm>

#include "fsot/fsot.hpp"

using namespace fsot;

namespace {

ClassConfig single_uniform() {
  return ClassConfig({{ClassFunction::box({0.0}, {1.0}),
                       std::make_shared<const TargetDensity>(TargetDensity::uniform()), 1.0}});
}

}  // namespace

static void BM_Offsets(benchmark::State& state) {
  const auto m = std::size_t(state.range(0));
  Rng rng = make_stream(1);
  std::vector<double> x(m), y(4 * m);
  for (double& v : x) v = uniform01(rng);
  for (double& v : y) v = uniform01(rng);
  std::sort(y.begin(), y.end());
  const auto bins = build_bins(y, m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_offsets(x, bins.means, m));
    benchmark::DoNotOptimize(gamma_factors(bins.bounds));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Offsets)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oNLogN);

static void BM_SlicedStep(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto set = new_random_set({2, Boundary::toroidal}, n, 2);
  const auto cfg = single_uniform();
  const OptimizerConfig opt;
  const StepSampler sampler(set, cfg, opt);
  Rng rng = make_stream(3);
  std::size_t draws = 0, empties = 0;
  SlicedStep step;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(set, rng, step, draws, empties));
}
BENCHMARK(BM_SlicedStep)->RangeMultiplier(4)->Range(256, 16384);

static void BM_Iteration(benchmark::State& state) {
  const auto problem = make_preset(state.range(1) == 0 ? "three-class" : "cmyk15", 2048);
  auto set = new_random_set(problem.domain, 2048, 4);
  OptimizerConfig opt;
  opt.iterations = 1;
  opt.threads = int(state.range(0));
  for (auto _ : state) {
    auto rep = run(set, *problem.config, opt);
    benchmark::DoNotOptimize(rep.final_set);
    ++opt.seed;
  }
}
BENCHMARK(BM_Iteration)->Args({1, 0})->Args({1, 1})->Unit(benchmark::kMillisecond);

static void BM_PowerSpectrum(benchmark::State& state) {
  const auto set = new_random_set({2, Boundary::toroidal}, std::size_t(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(power_spectrum(set.points(), 64));
}
BENCHMARK(BM_PowerSpectrum)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_PerceivedError(benchmark::State& state) {
  TileSpec spec;
  spec.width = spec.height = int(state.range(0));
  spec.recon = Kernel::gaussian(0.5);
  spec.percept = Kernel::gaussian(1.0);
  const auto tile = initial_tile(spec, 6);
  const auto profile = tile_profile(spec);
  const auto f = von_mises_integrand(2);
  for (auto _ : state) benchmark::DoNotOptimize(perceived_error_image(tile, spec.width, spec.height, f, *profile));
}
BENCHMARK(BM_PerceivedError)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
