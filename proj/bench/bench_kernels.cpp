// Serial reference loops against their OpenMP versions on the grid sweeps
// that dominate the checks.
#include <benchmark/benchmark.h>

#include <cmath>

#include "umbilic/constructor.hpp"
#include "umbilic/fields.hpp"
#include "umbilic/hypersurface.hpp"
#include "umbilic/kernels.hpp"

using namespace umbilic;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(max_threads()));
}

void BM_Umbilicity(benchmark::State& state) {
  const auto cos = FunctionSpec1D::sine_affine(0.0, 1.0, 1.0, M_PI / 2, {-1.55, 1.55});
  const auto chart = MetricChart::warped_product(cos, 2, FiberPreset::round_sphere);
  const auto pc = integrate_profile(cos, -1.2, 0.0, std::asin(0.99 * std::cos(1.2)), 4.0);
  const auto imm = build_umbilical_immersion(chart, pc);
  const auto grid = parameter_grid(imm, {40, 8, 8});
  for (auto _ : state) {
    benchmark::DoNotOptimize(umbilicity_report(chart, imm, grid, 1e-6,
                                               NormalOrientation::positive, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
  label(state);
}

void BM_Killing(benchmark::State& state) {
  const auto chart = MetricChart::theta3(FunctionSpec1D::sine_affine(M_PI / 4, 0.2, 1.0, 0.0));
  const Grid grid = tensor_grid({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, {24, 24, 24});
  for (auto _ : state) {
    benchmark::DoNotOptimize(killing_defect(chart, VectorFieldSpec::xi(), grid, 1e-10, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
  label(state);
}

}  // namespace

BENCHMARK(BM_Umbilicity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Killing)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
