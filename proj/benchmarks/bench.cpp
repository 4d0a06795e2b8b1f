#include <benchmark/benchmark.h>

#include "chirplet/chirp_model.hpp"
#include "chirplet/extrema.hpp"
#include "chirplet/generators.hpp"
#include "chirplet/hierarchy.hpp"
#include "chirplet/l2_fit.hpp"
#include "chirplet/pointwise_fit.hpp"
#include "chirplet/spectrum.hpp"

using namespace chirplet;

namespace {

SampledAmplitude academic(double omega_max, std::size_t n) {
  SampledAmplitude a;
  a.omega_max = omega_max;
  a.values.resize(2 * n + 1);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    a.values[i] = academic_amplitude(a.omega_at(i));
  return a;
}

void BM_ComputeSpectrum(benchmark::State& state) {
  GeneratorOptions opts = default_generator_options(GeneratorKind::two_bump_cubic);
  const RealSignal sig = generate_signal(GeneratorKind::two_bump_cubic, opts);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_spectrum(sig, 4.0, n));
  }
  state.SetComplexityN(static_cast<long long>(n));
}
BENCHMARK(BM_ComputeSpectrum)->Arg(128)->Arg(256)->Arg(512)->Complexity();

void BM_InnerProduct(benchmark::State& state) {
  const GaussianAtom a{1.0, 1.2, 0.3, AtomKind::pair};
  const GaussianAtom b{1.0, 2.4, 0.5, AtomKind::pair};
  for (auto _ : state) benchmark::DoNotOptimize(inner_product(a, b));
}
BENCHMARK(BM_InnerProduct);

void BM_DiscreteInnerProduct(benchmark::State& state) {
  const SampledAmplitude amp = academic(4.0, static_cast<std::size_t>(state.range(0)));
  const GaussianAtom g{1.0, 0.9, 0.3, AtomKind::pair};
  for (auto _ : state) benchmark::DoNotOptimize(discrete_inner_product(amp, g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DiscreteInnerProduct)->Arg(512)->Arg(1024)->Arg(2048)->Complexity();

void BM_PointwiseFitAcademic(benchmark::State& state) {
  const SampledAmplitude amp = academic(4.0, 1024);
  const std::vector<ExtremumPoint> targets{{1.0, 13.5, -36.0, ExtremumKind::maximum}};
  for (auto _ : state) benchmark::DoNotOptimize(fit_pointwise(amp, targets, 1e-12, 300));
}
BENCHMARK(BM_PointwiseFitAcademic);

void BM_L2FitAcademic(benchmark::State& state) {
  const SampledAmplitude amp = academic(4.0, 1024);
  L2Options opts;
  opts.record_history = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_l2(amp, {{1.0, 13.5 / 36.0, false}}, opts));
}
BENCHMARK(BM_L2FitAcademic);

void BM_HierarchyTwoLevels(benchmark::State& state) {
  const SampledAmplitude amp = academic(4.0, 1024);
  HierarchyConfig config;
  config.method = FitMethod::l2;
  config.max_levels = 2;
  config.eps_stop = 1e-15;
  config.l2.max_iter = 500;
  config.l2.record_history = false;
  for (auto _ : state) benchmark::DoNotOptimize(refine_until(amp, config));
}
BENCHMARK(BM_HierarchyTwoLevels);

void BM_SynthesizeChirps(benchmark::State& state) {
  ChirpletModel model;
  model.center = CenterChirp{1.0, 1.0, 0.0};
  model.atoms.push_back({2.0, 1.0, 0.3, 0.1, 0.5, 0.2});
  model.atoms.push_back({1.0, 2.5, 0.5, -0.4, -0.2, -0.6});
  const TimeGrid grid{-10.0, 0.01, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_chirps(model, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SynthesizeChirps)->Arg(512)->Arg(2048)->Complexity();

}  // namespace

BENCHMARK_MAIN();
