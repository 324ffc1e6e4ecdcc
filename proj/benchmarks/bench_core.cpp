#include <benchmark/benchmark.h>

#include "subguard/degree.hpp"
#include "subguard/kind.hpp"
#include "subguard/oracle.hpp"

namespace {

using subguard::Scenario;
using subguard::Vec;

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

Scenario worked_example() {
  return Scenario::canonical(v3(-1.5, 0, -1), v3(1.5, 0, 1.5), v3(0, 0, 2), 0.5);
}

void BM_EvaluateKind(benchmark::State& state) {
  const Scenario s = worked_example();
  for (auto _ : state) benchmark::DoNotOptimize(subguard::evaluate_kind(s));
}
BENCHMARK(BM_EvaluateKind);

void BM_SolveDws(benchmark::State& state) {
  const Scenario s = worked_example();
  for (auto _ : state) benchmark::DoNotOptimize(subguard::solve_dws(s));
}
BENCHMARK(BM_SolveDws);

void BM_SampleBarrier(benchmark::State& state) {
  const Scenario s = worked_example();
  const subguard::Barrier b(s.defender1, s.defender2, s.alpha);
  const int k = static_cast<int>(state.range(0));
  const subguard::BarrierGrid grid{(Vec(2) << -4, -4).finished(), (Vec(2) << 4, 4).finished(), {k, k}};
  for (auto _ : state) benchmark::DoNotOptimize(subguard::sample_barrier(b, grid));
  state.SetItemsProcessed(state.iterations() * k * k);
}
BENCHMARK(BM_SampleBarrier)->Arg(51)->Arg(101)->Arg(201);

void BM_OracleKind(benchmark::State& state) {
  const Scenario s = worked_example();
  for (auto _ : state) benchmark::DoNotOptimize(subguard::oracle_kind(s));
}
BENCHMARK(BM_OracleKind)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
