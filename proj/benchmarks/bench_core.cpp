#include "dlq/bogoliubov.hpp"
#include "dlq/observables.hpp"
#include "dlq/quadrature.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace dlq;

namespace {

FieldConfig config_for(std::size_t n_local, std::size_t n_global) {
  FieldConfig c;
  c.mass_times_R = 1.0;
  c.split_fraction = 0.3;
  c.n_local = n_local;
  c.n_global = n_global;
  return c;
}

void BM_SolveSpectrum(benchmark::State &state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_spectrum(1.0, 1.0, count));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SolveSpectrum)->Arg(100)->Arg(1000)->Arg(10000);

void BM_BuildMatrices(benchmark::State &state) {
  const auto config = config_for(30, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_matrices(config));
  state.SetItemsProcessed(state.iterations() * 2 * 30 * state.range(0));
}
BENCHMARK(BM_BuildMatrices)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_OscillatoryQuadrature(benchmark::State &state) {
  const double k = static_cast<double>(state.range(0)) * std::numbers::pi;
  QuadratureOptions opts;
  opts.tol = 1e-12;
  opts.initial_panels = panels_for_wavenumber(k, 1.0);
  const double breaks[] = {0.3};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate([k](double x) { return std::cos(k * x) * std::cos(0.5 * k * x); }, 0.0, 1.0,
                  breaks, opts));
}
BENCHMARK(BM_OscillatoryQuadrature)->Arg(10)->Arg(100)->Arg(1000);

void BM_CorrelationGrid(benchmark::State &state) {
  auto config = config_for(10, 1000);
  config.mass_times_R = 0.0;
  config.split_fraction = 1.0 / std::numbers::pi;
  const auto set = build_matrices(config);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        vacuum_correlation(set, CorrelationChannel::particle_particle, 10, 10));
}
BENCHMARK(BM_CorrelationGrid)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
