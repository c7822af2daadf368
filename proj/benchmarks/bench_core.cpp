#include "plg/dynamics.hpp"
#include "plg/models.hpp"

#include <benchmark/benchmark.h>

using namespace plg;

namespace {

void BM_Integrate(benchmark::State& state) {
  const ModelBundle m = builtin_model("lorenz");
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(m.chart, m.hamiltonians.front(), m.x0, 1e-3, steps));
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_Integrate)->Arg(100)->Arg(1000);

void BM_JacobiResidual(benchmark::State& state) {
  const auto ids = builtin_model_ids();
  const ModelBundle m = builtin_model(ids[static_cast<std::size_t>(state.range(0))]);
  state.SetLabel(m.id);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_residual(m.chart, m.x0));
}
BENCHMARK(BM_JacobiResidual)->DenseRange(0, 4);

void BM_ModularField(benchmark::State& state) {
  const ModelBundle m = builtin_model("sl2r");
  const VectorFn M = modular_field(m.chart, left_volume_density(*m.group));
  for (auto _ : state) benchmark::DoNotOptimize(M(m.x0));
}
BENCHMARK(BM_ModularField);

void BM_ElwModularField(benchmark::State& state) {
  const ModelBundle m = builtin_model("sl2r");
  const VectorFn M = elw_modular_field(*m.group, m.chart, *m.bialgebra);
  for (auto _ : state) benchmark::DoNotOptimize(M(m.x0));
}
BENCHMARK(BM_ElwModularField);

void BM_ValidateBundle(benchmark::State& state) {
  const ModelBundle m = builtin_model("eulertop");
  for (auto _ : state) benchmark::DoNotOptimize(validate_bundle(m, kDefaultSeed, 20));
}
BENCHMARK(BM_ValidateBundle);

}  // namespace
BENCHMARK_MAIN();
