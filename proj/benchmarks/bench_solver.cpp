#include <benchmark/benchmark.h>

#include "solvagen/catalog.hpp"
#include "solvagen/solver.hpp"

namespace cat = solvagen::catalog;
namespace sv = solvagen::solver;

namespace {

// One bound state, potential sampled once; range(0) is the grid size.
void BM_FindEigenvalueOscillator(benchmark::State& state) {
  const auto sys = cat::build("harmonic_oscillator", 3, 0).value();
  const auto grid = sv::RadialGrid::make(0.0, 12.0, static_cast<int>(state.range(0))).value();
  const auto pot = sv::sample_potential(sv::reduce_to_u(sys, 0).value(), grid).value();
  for (auto _ : state) benchmark::DoNotOptimize(sv::find_eigenvalue(pot, 2));
}
BENCHMARK(BM_FindEigenvalueOscillator)->Arg(2000)->Arg(8000)->Arg(20000)->Unit(benchmark::kMillisecond);

// End to end: grid, sampling, bisection and the analytic comparison.
void BM_SolveStateCoulomb(benchmark::State& state) {
  const auto sys = cat::build("coulomb", 3, 1).value();
  for (auto _ : state) benchmark::DoNotOptimize(sv::solve_state(sys, 2));
}
BENCHMARK(BM_SolveStateCoulomb)->Unit(benchmark::kMillisecond);

void BM_Residual(benchmark::State& state) {
  const auto sys = cat::build("morse_like", 3, 0).value();
  for (auto _ : state) benchmark::DoNotOptimize(sv::residual(sys, 3));
}
BENCHMARK(BM_Residual)->Unit(benchmark::kMillisecond);

}  // namespace
