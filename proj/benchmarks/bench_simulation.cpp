#include <benchmark/benchmark.h>

#include "vcoop/simulation.hpp"
#include "vcoop/sweep.hpp"

namespace {

using namespace vcoop;

// One full-length run per iteration; the argument is the vehicle count.
void BM_SingleRun(benchmark::State& state, Strategy strategy) {
  RunHandle h;
  h.scenario = default_scenario();
  h.scenario.n_vehicles = static_cast<int>(state.range(0));
  h.strategy = strategy;
  h.master_seed = 1;
  std::uint64_t tasks = 0;
  for (auto _ : state) {
    const MetricsReport r = run(h);
    tasks += r.total_tasks;
    benchmark::DoNotOptimize(r);
  }
  state.counters["tasks/s"] = benchmark::Counter(static_cast<double>(tasks), benchmark::Counter::kIsRate);
}
BENCHMARK_CAPTURE(BM_SingleRun, ncs, Strategy::kNcs)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SingleRun, airs, Strategy::kAirs)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SingleRun, pirs, Strategy::kPirs)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
