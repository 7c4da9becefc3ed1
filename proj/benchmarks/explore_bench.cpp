#include <benchmark/benchmark.h>

#include "rfsmc/bench.hpp"
#include "rfsmc/explorer.hpp"
#include "rfsmc/oracle.hpp"

namespace {

using namespace rfsmc;

void run(benchmark::State& state, const Program& p, StrategyKind kind, bool exhaustive) {
  std::uint64_t seed = 0, states = 0;
  for (auto _ : state) {
    ExploreOptions o;
    o.strategy = {kind, seed++};
    o.stop_at_first_bug = !exhaustive;
    const Verdict v = explore(p, o);
    states += v.stats.states_visited;
    benchmark::DoNotOptimize(v.stats.traces_explored);
  }
  state.counters["states"] = benchmark::Counter(static_cast<double>(states), benchmark::Counter::kAvgIterations);
}

void BM_Factorial(benchmark::State& state) {
  run(state, bench::factorial_bench(static_cast<std::uint32_t>(state.range(0))), StrategyKind::Dfs, true);
}
BENCHMARK(BM_Factorial)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_PhilosophersMutex(benchmark::State& state) {
  run(state, bench::philosophers_mutex(static_cast<std::uint32_t>(state.range(0))), StrategyKind::Dfs, true);
}
BENCHMARK(BM_PhilosophersMutex)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_FirstBug(benchmark::State& state) {
  const auto kind = static_cast<StrategyKind>(state.range(1));
  run(state, bench::mpi_any(static_cast<std::uint32_t>(state.range(0))), kind, false);
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_FirstBug)
    ->ArgsProduct({{1, 2, 3}, {static_cast<int>(StrategyKind::Dfs), static_cast<int>(StrategyKind::UniformDfs),
                               static_cast<int>(StrategyKind::RfsStep), static_cast<int>(StrategyKind::RfsBranch)}})
    ->Unit(benchmark::kMillisecond);

void BM_OracleCensus(benchmark::State& state) {
  const Program p = bench::philosophers_mutex(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::count_classes(p));
}
BENCHMARK(BM_OracleCensus)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
