#include <benchmark/benchmark.h>

#include <vector>

#include "kamlab/ground_action.hpp"
#include "kamlab/kam.hpp"
#include "kamlab/mane.hpp"

namespace {

const kamlab::InteractionModel& twisted() {
  static const kamlab::InteractionModel m = kamlab::InteractionModel::periodic(1.0, 0.1);
  return m;
}

void BM_ManeTable(benchmark::State& state) {
  const kamlab::Grid g({-8.0, 8.0}, 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kamlab::mane_table(twisted(), g, 0.0, 0.0).values.data());
  state.SetComplexityN(static_cast<benchmark::IterationCount>(g.size()));
}
BENCHMARK(BM_ManeTable)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LaxOleinik(benchmark::State& state) {
  const kamlab::Grid g({-8.0, 8.0}, 1.0 / static_cast<double>(state.range(0)));
  std::vector<double> u(g.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = 0.01 * static_cast<double>(i % 17);
  for (auto _ : state) benchmark::DoNotOptimize(kamlab::lax_oleinik(twisted(), g, u, 0.0, 3.0).values.data());
}
BENCHMARK(BM_LaxOleinik)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_GroundActionBracket(benchmark::State& state) {
  const kamlab::Grid g({-4.0, 4.0}, 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kamlab::bracket(twisted(), g, 16).estimate);
}
BENCHMARK(BM_GroundActionBracket)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
