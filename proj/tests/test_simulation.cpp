#include "vcoop/simulation.hpp"

#include <vector>

#include <gtest/gtest.h>

namespace vcoop {
namespace {

RunHandle handle(Strategy strategy, int n_vehicles, double duration_s = 300.0,
                 std::uint64_t seed = 42, int rep = 0) {
  RunHandle h;
  h.scenario = default_scenario();
  h.scenario.n_vehicles = n_vehicles;
  h.scenario.sim_duration_s = duration_s;
  h.strategy = strategy;
  h.master_seed = seed;
  h.rep_index = rep;
  return h;
}

void expect_same_report(const MetricsReport& a, const MetricsReport& b) {
  EXPECT_EQ(runs_csv(std::vector<MetricsReport>{a}), runs_csv(std::vector<MetricsReport>{b}));
}

TEST(Run, ZeroDurationHasNoTasks) {
  const MetricsReport r = run(handle(Strategy::kPirs, 10, 0.0));
  EXPECT_EQ(r.total_tasks, 0u);
}

TEST(Run, ReportIdentifiesTheRun) {
  const MetricsReport r = run(handle(Strategy::kAirs, 12, 60.0, 7, 3));
  EXPECT_EQ(r.strategy, Strategy::kAirs);
  EXPECT_EQ(r.n_vehicles, 12);
  EXPECT_EQ(r.rep, 3);
  EXPECT_EQ(r.seed, 7u);
  EXPECT_GT(r.total_tasks, 0u);
}

TEST(Run, SameHandleGivesIdenticalOutput) {
  for (Strategy s : {Strategy::kNcs, Strategy::kAirs, Strategy::kPirs}) {
    expect_same_report(run(handle(s, 30)), run(handle(s, 30)));
  }
}

TEST(Run, TraceIsReproducible) {
  RunOptions opts;
  opts.record_trace = true;
  const RunResult a = run_detailed(handle(Strategy::kPirs, 20), opts);
  const RunResult b = run_detailed(handle(Strategy::kPirs, 20), opts);
  ASSERT_FALSE(a.trace.empty());
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.trace.back().kind, EventKind::kSimEnd);
}

TEST(Run, DifferentRepsDiffer) {
  EXPECT_NE(run(handle(Strategy::kNcs, 20, 300.0, 42, 0)).total_tasks,
            run(handle(Strategy::kNcs, 20, 300.0, 42, 1)).total_tasks);
}

TEST(Run, LoneVehicleNeverUsesV2v) {
  for (Strategy s : {Strategy::kNcs, Strategy::kAirs, Strategy::kPirs}) {
    EXPECT_EQ(run(handle(s, 1, 1800.0)).executed_v2v, 0u);
  }
}

TEST(Run, WithoutNeighborsEveryStrategyPlacesLikeNcs) {
  RunOptions opts;
  opts.record_placements = true;
  const RunResult ncs = run_detailed(handle(Strategy::kNcs, 1, 1800.0), opts);
  ASSERT_FALSE(ncs.placements.empty());
  for (Strategy s : {Strategy::kAirs, Strategy::kPirs}) {
    const RunResult other = run_detailed(handle(s, 1, 1800.0), opts);
    ASSERT_EQ(other.placements.size(), ncs.placements.size());
    for (std::size_t i = 0; i < ncs.placements.size(); ++i) {
      EXPECT_EQ(other.placements[i].tier, ncs.placements[i].tier);
      EXPECT_EQ(other.placements[i].estimate_s, ncs.placements[i].estimate_s);
    }
  }
}

TEST(Run, StrategiesShareTheWorkloadByDefault) {
  RunOptions opts;
  opts.record_placements = true;
  const RunResult ncs = run_detailed(handle(Strategy::kNcs, 20), opts);
  const RunResult pirs = run_detailed(handle(Strategy::kPirs, 20), opts);
  ASSERT_EQ(ncs.placements.size(), pirs.placements.size());
  for (std::size_t i = 0; i < ncs.placements.size(); ++i) {
    EXPECT_EQ(ncs.placements[i].owner, pirs.placements[i].owner);
    EXPECT_EQ(ncs.placements[i].d_limit_s, pirs.placements[i].d_limit_s);
  }
}

TEST(Run, PerStrategyStreamsChangeTheWorkload) {
  RunOptions opts;
  opts.per_strategy_streams = true;
  EXPECT_NE(run_detailed(handle(Strategy::kNcs, 20), opts).report.total_tasks,
            run_detailed(handle(Strategy::kPirs, 20), opts).report.total_tasks);
}

TEST(Run, ConservationHoldsUnderEveryStrategyAndFailureMode) {
  RunOptions opts;
  opts.check_invariants = true;
  for (CoalitionFailure mode :
       {CoalitionFailure::kNone, CoalitionFailure::kOwner, CoalitionFailure::kAnyMember}) {
    for (Strategy s : {Strategy::kNcs, Strategy::kAirs, Strategy::kPirs}) {
      RunHandle h = handle(s, 40);
      h.scenario.mobility.coalition_failure = mode;
      const RunResult r = run_detailed(h, opts);
      EXPECT_EQ(r.invariant_violations, 0u)
          << to_string(s) << "/" << to_string(mode) << ": "
          << (r.violation_samples.empty() ? "" : r.violation_samples.front());
    }
  }
}

TEST(Run, OutcomesPartitionTotal) {
  for (Strategy s : {Strategy::kNcs, Strategy::kAirs, Strategy::kPirs}) {
    const MetricsReport r = run(handle(s, 40));
    EXPECT_EQ(r.failed_tasks + r.executed_local + r.executed_v2v + r.executed_edge +
                  r.executed_cloud,
              r.total_tasks);
    EXPECT_GE(r.offloaded_to_mec_tasks, r.executed_edge + r.executed_cloud);
  }
}

TEST(Run, NcsNeverUsesV2v) {
  EXPECT_EQ(run(handle(Strategy::kNcs, 60)).executed_v2v, 0u);
}

TEST(Run, CooperativeStrategiesUseV2v) {
  EXPECT_GT(run(handle(Strategy::kAirs, 60)).executed_v2v, 0u);
  EXPECT_GT(run(handle(Strategy::kPirs, 60)).executed_v2v, 0u);
}

TEST(Run, V2vPlacementsMeetTheirDeadline) {
  RunOptions opts;
  opts.record_placements = true;
  const RunResult r = run_detailed(handle(Strategy::kPirs, 60), opts);
  for (const PlacementLog& p : r.placements) {
    if (p.tier == Tier::kV2v) {
      EXPECT_LE(p.estimate_s, p.d_limit_s);
      EXPECT_GE(p.coalition_helpers, 1u);
      EXPECT_LE(p.coalition_helpers, 6u);
    }
  }
}

TEST(Run, EventsAreAccountedFor) {
  const RunResult r = run_detailed(handle(Strategy::kPirs, 20));
  EXPECT_EQ(r.events_scheduled, r.events_dispatched + r.events_drained);
}

TEST(Run, WarmupExcludesEarlyOutcomes) {
  RunHandle h = handle(Strategy::kNcs, 20);
  const std::uint64_t all = run(h).total_tasks;
  h.scenario.warmup_s = 150.0;
  EXPECT_LT(run(h).total_tasks, all);
}

TEST(Run, InvalidScenarioThrows) {
  RunHandle h = handle(Strategy::kNcs, 0);
  EXPECT_THROW(run(h), ConfigError);
}

}  // namespace
}  // namespace vcoop
