#include <benchmark/benchmark.h>

#include <vector>

#include "cutlab/criticality.hpp"
#include "cutlab/density.hpp"
#include "cutlab/gas.hpp"
#include "cutlab/transition.hpp"

using namespace cutlab;

static void BM_SolveOneCut(benchmark::State& state) {
  const auto v = Potential::birth_demo();
  for (auto _ : state) benchmark::DoNotOptimize(solve_one_cut(v, 0.2));
}
BENCHMARK(BM_SolveOneCut);

static void BM_LogPotential(benchmark::State& state) {
  const auto rd = solve_one_cut(Potential::birth_demo(), 0.2);
  const SpectralDensity sd(rd.M, rd.endpoints(), static_cast<int>(state.range(0)));
  double x = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sd.log_potential(x));
    x = x > 2.0 ? -0.5 : x + 0.01;
  }
}
BENCHMARK(BM_LogPotential)->Arg(64)->Arg(128)->Arg(256);

static void BM_FindCriticalTemperature(benchmark::State& state) {
  const auto v = Potential::birth_demo();
  for (auto _ : state) benchmark::DoNotOptimize(find_critical_temperature(v, 0.05, 5.0));
}
BENCHMARK(BM_FindCriticalTemperature)->Unit(benchmark::kMillisecond);

static void BM_TransitionSweep(benchmark::State& state) {
  const auto v = Potential::birth_demo();
  const auto crit = find_critical_temperature(v, 0.05, 5.0);
  const auto grid = transition_grid(crit.T_c);
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(v, grid, &crit));
}
BENCHMARK(BM_TransitionSweep)->Unit(benchmark::kMillisecond);

static void BM_GasRelax(benchmark::State& state) {
  const auto v = Potential::birth_demo();
  GasConfig cfg;
  cfg.N = static_cast<int>(state.range(0));
  cfg.T = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium_positions(v, cfg));
}
BENCHMARK(BM_GasRelax)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
