#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "vcoop/config.hpp"
#include "vcoop/game.hpp"

namespace {

using namespace vcoop;

void BM_AnbsAllocate(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double busy[2] = {0.7, 1.1};
  for (auto _ : state) {
    const double l0 = unit(rng);
    const double lambda[2] = {l0, 1.0 - l0};
    benchmark::DoNotOptimize(game::anbs_allocate(busy, 4.0, lambda));
  }
}
BENCHMARK(BM_AnbsAllocate);

void BM_CandidateUtility(benchmark::State& state) {
  const GameConfig g;
  const double reward = game::action_reward(game::ActionProbability::pure(game::Action::kGive),
                                            g.ma, game::ActionProbability::pure(game::Action::kGet));
  double busy = 0.0;
  for (auto _ : state) {
    const game::RiskVector risk = game::risk_vector(busy, 2.0, {0.5, 0.5});
    benchmark::DoNotOptimize(game::utility(risk, g.mtheta, reward, game::Action::kGive));
    busy = busy > 1.9 ? 0.0 : busy + 0.01;
  }
}
BENCHMARK(BM_CandidateUtility);

void BM_UpdateWillingness(benchmark::State& state) {
  game::Willingness w;
  game::ActionRewards prev;
  const game::ActionRewards now{1.0, 0.0};
  for (auto _ : state) {
    w = game::update_willingness(w, now, prev, 0.1);
    prev = prev.give == 0.0 ? now : game::ActionRewards{};
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_UpdateWillingness);

}  // namespace
