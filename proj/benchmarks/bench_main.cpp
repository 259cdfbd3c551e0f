#include <benchmark/benchmark.h>

#include "isl/forward.hpp"
#include "isl/krein.hpp"
#include "isl/marchenko.hpp"
#include "isl/phase_shifts.hpp"
#include "isl/resonance.hpp"

namespace {

const isl::RadialPotential& well() {
  static const auto q = isl::RadialPotential::square_well(1.0, 1.0, 2.0, 0.01);
  return q;
}

isl::UniformGrid k_grid(double k_max, double step) {
  return isl::UniformGrid(step, step, static_cast<std::size_t>(k_max / step + 0.5));
}

void BM_ForwardData(benchmark::State& state) {
  const auto kg = k_grid(static_cast<double>(state.range(0)), 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(isl::forward_data(well(), kg));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kg.size()));
}
BENCHMARK(BM_ForwardData)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Marchenko(benchmark::State& state) {
  const auto data = isl::forward_data(well(), k_grid(60.0, 0.01));
  const auto xg = isl::UniformGrid::covering(0.0, 2.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(isl::invert_marchenko(data, xg));
}
BENCHMARK(BM_Marchenko)->Unit(benchmark::kMillisecond);

void BM_Krein(benchmark::State& state) {
  const auto data = isl::forward_data(well(), k_grid(60.0, 0.01));
  const auto xg = isl::UniformGrid::covering(0.0, 2.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(isl::invert_krein(data, xg));
}
BENCHMARK(BM_Krein)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_ZeroSearch(benchmark::State& state) {
  const isl::ComplexBox box{0.5, 6.0, -3.0, -0.01};
  for (auto _ : state) benchmark::DoNotOptimize(isl::find_resonances(well(), box));
}
BENCHMARK(BM_ZeroSearch)->Unit(benchmark::kMillisecond);

void BM_PhaseShifts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(isl::phase_shifts(well(), 1.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PhaseShifts)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
