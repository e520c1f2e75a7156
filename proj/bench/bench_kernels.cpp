// Serial against OpenMP kernels on random matrices over Q(t, x).

#include <benchmark/benchmark.h>

#include <random>

#include "isomono/linsolve.hpp"
#include "isomono/matrix.hpp"
#include "isomono/parallel.hpp"
#include "test_support.hpp"

using namespace isomono;

namespace {

RMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Var> vars{var("x", VarKind::principal), var("t")};
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = testing::random_rf(rng, vars, 1);
  return m;
}

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) {
  state.SetLabel(exec_of(state) == Exec::serial ? "serial" : "parallel x" + std::to_string(max_threads()));
}

void BM_Multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(RMatrix::multiply(a, b, exec_of(state)));
  label(state);
}

void BM_Rref(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RMatrix a = random_matrix(n, 3);
  for (auto _ : state) {
    RMatrix m = a;
    benchmark::DoNotOptimize(rref(m, exec_of(state)));
  }
  label(state);
}

void BM_MapDerivative(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RMatrix a = random_matrix(n, 4);
  const Var t = var("t");
  for (auto _ : state)
    benchmark::DoNotOptimize(a.map([&](const RationalFunction& f) { return f.derivative(t); }, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_Multiply)->ArgsProduct({{2, 4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rref)->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapDerivative)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
