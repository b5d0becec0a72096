#include <benchmark/benchmark.h>

#include "solvagen/catalog.hpp"
#include "solvagen/expr.hpp"
#include "solvagen/transform.hpp"

namespace ex = solvagen::expr;

namespace {

const ex::Expr& sample_expr() {
  static const ex::Expr e = ex::parse("exp(-r)*sin(3*r)/(1 + r^2) + tanh(r)^3 - 0.25*r^2").value();
  return e;
}

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ex::parse("exp(-r)*sin(3*r)/(1 + r^2) + tanh(r)^3 - 0.25*r^2"));
}
BENCHMARK(BM_Parse);

void BM_Eval(benchmark::State& state) {
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ex::eval(sample_expr(), "r", r));
    r += 1e-6;
  }
}
BENCHMARK(BM_Eval);

void BM_DiffSimplify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ex::simplify(ex::diff(sample_expr(), "r")));
}
BENCHMARK(BM_DiffSimplify);

void BM_Schwartzian(benchmark::State& state) {
  const auto g = ex::parse("tanh(2*r) + 0.3*r").value();
  for (auto _ : state) benchmark::DoNotOptimize(solvagen::transform::schwartzian(g));
}
BENCHMARK(BM_Schwartzian);

// Full transformation for one catalog state: rhs, template and modulating function.
void BM_TransformApply(benchmark::State& state) {
  const auto sys = solvagen::catalog::build("rosen_morse_rederived", 3, 0).value();
  const auto fam = sys.family(2).value();
  const auto map = sys.mapping(2).value();
  for (auto _ : state) benchmark::DoNotOptimize(solvagen::transform::apply(fam, map, 3));
}
BENCHMARK(BM_TransformApply);

}  // namespace
