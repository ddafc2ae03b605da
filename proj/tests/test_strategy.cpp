#include "vcoop/strategy.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

namespace vcoop {
namespace {

// A small world: every vehicle starts at location 0 of the default map.
class StrategyTest : public ::testing::Test {
 protected:
  void build(int n_vehicles, std::vector<LocationId> locations = {}) {
    if (locations.empty()) locations.assign(static_cast<std::size_t>(n_vehicles), 0);
    map = std::make_unique<LocationMap>(cfg.mobility);
    world = std::make_unique<World>(cfg, *map, locations);
  }

  void occupy(VehicleId v, double gips) {
    world->compute().reserve(HostKind::kVehicle, v, gips, 1'000'000 + v, 0.0, 1e9);
  }

  TaskSpec task(std::string_view app, double length_gi, VehicleId owner = 0, TaskId id = 1) {
    const AppProfile& p = *cfg.find_app(app);
    TaskSpec t;
    t.task_id = id;
    t.owner_vehicle_id = owner;
    t.length_gi = length_gi;
    t.upload_kb = p.upload_kb;
    t.download_kb = p.download_kb;
    t.d_limit_s = p.delay_tolerance_s;
    t.vm_utilization_pct = p.vm_utilization_pct;
    return t;
  }

  VehicleState& vehicle(VehicleId v) { return world->compute().vehicle(v); }

  ScenarioConfig cfg = default_scenario();
  std::unique_ptr<LocationMap> map;
  std::unique_ptr<World> world;
};

TEST_F(StrategyTest, ShortTaskRunsLocally) {
  build(1);
  const Placement p = decide(task("Augmented Reality", 9.0), *world, Strategy::kNcs, 0.0);
  EXPECT_EQ(p.tier, Tier::kLocal);
  EXPECT_DOUBLE_EQ(p.estimate.total_s(), 4.5);
  EXPECT_DOUBLE_EQ(spare(vehicle(0)), 0.0);
  EXPECT_EQ(world->inflight().size(), 1u);
}

TEST_F(StrategyTest, NcsSendsTooLongTaskToEdge) {
  build(3);
  const Placement p = decide(task("Infotainment App", 45.0), *world, Strategy::kNcs, 0.0);
  EXPECT_EQ(p.tier, Tier::kEdge);
  EXPECT_EQ(p.attempted, Tier::kEdge);
  EXPECT_EQ(p.es_id, 0u);
  EXPECT_NEAR(p.estimate.total_s(), 0.368, 1e-3);
  EXPECT_FALSE(p.coalition.has_value());
  EXPECT_DOUBLE_EQ(world->compute().edge(0).utilization_pct, 30.0);
}

TEST_F(StrategyTest, LoneVehicleSkipsV2v) {
  build(1);
  occupy(0, 2.0);
  const Placement p = decide(task("Augmented Reality", 9.0), *world, Strategy::kPirs, 0.0);
  EXPECT_EQ(p.tier, Tier::kEdge);
}

TEST_F(StrategyTest, BusyEdgeOverflowsToCloud) {
  build(1);
  for (TaskId t = 0; t < 2; ++t) world->compute().edge_admit(0, 30.0, 500 + t, 0.0, 1e9);
  const Placement p = decide(task("Infotainment App", 45.0), *world, Strategy::kNcs, 0.0);
  EXPECT_EQ(p.tier, Tier::kCloud);
  EXPECT_NEAR(p.estimate.total_s(), 0.136, 1e-3);
}

TEST_F(StrategyTest, EdgeTooSlowFailsImmediately) {
  build(1);
  // 200/160 = 1.25 s of compute alone exceeds the 1 s tolerance.
  const Placement p = decide(task("Infotainment App", 200.0), *world, Strategy::kNcs, 0.0);
  EXPECT_EQ(p.tier, Tier::kFailed);
  EXPECT_EQ(p.attempted, Tier::kEdge);
  EXPECT_TRUE(p.reservations.empty());
  EXPECT_DOUBLE_EQ(world->compute().edge(0).utilization_pct, 0.0);
  EXPECT_TRUE(world->inflight().empty());
}

TEST_F(StrategyTest, CandidatesSortedByUtility) {
  build(4);
  occupy(1, 1.5);  // utility (0.1*0.75 + 1.0*0.25) = 0.325
  occupy(3, 1.0);  // utility 0.55
  const std::vector<Candidate> c = build_candidates(0, *world);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].vehicle_id, 2u);
  EXPECT_EQ(c[1].vehicle_id, 3u);
  EXPECT_EQ(c[2].vehicle_id, 1u);
  EXPECT_NEAR(c[0].utility, 1.0, 1e-12);
  EXPECT_NEAR(c[1].utility, 0.55, 1e-12);
  EXPECT_NEAR(c[2].utility, 0.325, 1e-12);
}

TEST_F(StrategyTest, CandidatesExcludeFullAndDistantVehicles) {
  build(4, {0, 0, 0, 1});
  occupy(1, 2.0);
  const std::vector<Candidate> c = build_candidates(0, *world);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].vehicle_id, 2u);
}

TEST_F(StrategyTest, CandidateTiesBreakByVehicleId) {
  build(5);
  const std::vector<Candidate> c = build_candidates(2, *world);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0].vehicle_id, 0u);
  EXPECT_EQ(c[1].vehicle_id, 1u);
  EXPECT_EQ(c[2].vehicle_id, 3u);
  EXPECT_EQ(c[3].vehicle_id, 4u);
}

TEST_F(StrategyTest, CandidatesBelowMinimumAreDropped) {
  cfg.game.candidate_utility_min = 0.5;
  build(3);
  occupy(1, 1.5);
  const std::vector<Candidate> c = build_candidates(0, *world);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].vehicle_id, 2u);
}

TEST_F(StrategyTest, ScalingRewardMatrixKeepsRanking) {
  build(6);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> load(0.0, 1.9);
  for (VehicleId v = 1; v < 6; ++v) occupy(v, load(rng));
  const std::vector<Candidate> base = build_candidates(0, *world);

  ScenarioConfig scaled = cfg;
  for (auto& row : scaled.game.ma) {
    for (double& x : row) x *= 3.0;
  }
  cfg = scaled;
  const std::vector<Candidate> after = build_candidates(0, *world);
  ASSERT_EQ(base.size(), after.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_EQ(base[i].vehicle_id, after[i].vehicle_id);
    EXPECT_NEAR(after[i].utility, 3.0 * base[i].utility, 1e-12);
  }
}

TEST_F(StrategyTest, AirsPoolsFullSpare) {
  build(3);
  occupy(0, 2.0);
  const auto c = form_coalition_airs(0, build_candidates(0, *world), task("Health App", 3.0),
                                     *world, 0.0);
  EXPECT_DOUBLE_EQ(c.owner_spare_gips, 0.0);
  ASSERT_EQ(c.members.size(), 2u);
  EXPECT_DOUBLE_EQ(c.pooled_gips, 4.0);
}

TEST_F(StrategyTest, AirsTakesPartialSpareAsIs) {
  build(2);
  occupy(1, 0.5);
  const auto c = form_coalition_airs(0, build_candidates(0, *world), task("Health App", 3.0),
                                     *world, 0.0);
  ASSERT_EQ(c.members.size(), 1u);
  EXPECT_DOUBLE_EQ(c.members[0].contribution_gips, 1.5);
}

TEST_F(StrategyTest, CoalitionCappedAtConnectionLimit) {
  build(9);
  const auto candidates = build_candidates(0, *world);
  ASSERT_EQ(candidates.size(), 8u);
  EXPECT_EQ(form_coalition_airs(0, candidates, task("Health App", 3.0), *world, 0.0).members.size(),
            6u);
  EXPECT_LE(form_coalition_pirs(0, candidates, task("Health App", 3.0), *world, 0.0).members.size(),
            6u);
}

TEST_F(StrategyTest, PirsHelperKeepsHalfUnderEqualPower) {
  build(2);
  occupy(0, 2.0);
  const auto c = form_coalition_pirs(0, build_candidates(0, *world), task("Health App", 3.0),
                                     *world, 0.0);
  ASSERT_EQ(c.members.size(), 1u);
  EXPECT_DOUBLE_EQ(c.members[0].contribution_gips, 1.0);
  EXPECT_DOUBLE_EQ(c.pooled_gips, 1.0);
  EXPECT_DOUBLE_EQ(vehicle(0).acquired_gips, 0.0);
}

TEST_F(StrategyTest, PirsSkipsHelperWhenOwnerAlreadyHoldsItsShare) {
  build(2);
  occupy(1, 1.0);
  vehicle(0).beta = {0.8, 0.2};
  vehicle(1).beta = {0.4, 0.6};
  // lambda_owner = 0.25; raw contribution 1 - 0.75 * 3 < 0.
  const auto c = form_coalition_pirs(0, build_candidates(0, *world), task("Health App", 3.0),
                                     *world, 0.0);
  EXPECT_TRUE(c.members.empty());
  EXPECT_DOUBLE_EQ(c.pooled_gips, 2.0);
  EXPECT_DOUBLE_EQ(vehicle(0).beta.give, 0.8);
  EXPECT_DOUBLE_EQ(vehicle(1).beta.give, 0.4);
}

TEST_F(StrategyTest, PirsWithFullOwnerPowerMatchesAirs) {
  build(2);
  occupy(0, 2.0);
  occupy(1, 0.5);
  vehicle(0).beta = {0.5, 0.5};
  vehicle(1).beta = {1.0, 0.0};
  const auto c = form_coalition_pirs(0, build_candidates(0, *world), task("Health App", 3.0),
                                     *world, 0.0);
  ASSERT_EQ(c.members.size(), 1u);
  EXPECT_DOUBLE_EQ(c.members[0].contribution_gips, 1.5);
}

TEST_F(StrategyTest, PirsUpdatesWillingnessOfBothParties) {
  build(2);
  occupy(0, 2.0);
  form_coalition_pirs(0, build_candidates(0, *world), task("Health App", 3.0), *world, 0.0);
  // Owner: reward (0.25, 1.0) against a zero history, step 0.1 * (0.2, 0.8).
  EXPECT_NEAR(vehicle(0).beta.give, 0.52 / 1.1, 1e-12);
  EXPECT_NEAR(vehicle(0).beta.get, 0.58 / 1.1, 1e-12);
  // Helper: reward (1.0, 0.0), step 0.1 * (1, 0).
  EXPECT_NEAR(vehicle(1).beta.give, 0.6 / 1.1, 1e-12);
  EXPECT_NEAR(vehicle(1).beta.get, 0.5 / 1.1, 1e-12);
  EXPECT_DOUBLE_EQ(vehicle(1).last_reward.give, 1.0);
  EXPECT_DOUBLE_EQ(vehicle(0).last_reward.get, 1.0);
}

TEST_F(StrategyTest, PirsNeverTakesMoreThanAirs) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> load(0.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    build(8);
    for (VehicleId v = 0; v < 8; ++v) {
      const double b = load(rng);
      if (b > 1e-6) occupy(v, b);
      const double g = unit(rng);
      vehicle(v).beta = {g, 1.0 - g};
    }
    const auto candidates = build_candidates(0, *world);
    if (candidates.empty()) continue;
    const TaskSpec t = task("Health App", 3.0);
    // Only the first helper faces identical state under both strategies.
    const auto airs = form_coalition_airs(0, candidates, t, *world, 0.0);
    const auto pirs = form_coalition_pirs(0, candidates, t, *world, 0.0);
    if (pirs.members.empty()) continue;
    if (pirs.members[0].vehicle_id != airs.members[0].vehicle_id) continue;
    EXPECT_LE(pirs.members[0].contribution_gips, airs.members[0].contribution_gips + 1e-12);
    EXPECT_GT(pirs.members[0].contribution_gips, 0.0);
    double sum = pirs.owner_spare_gips;
    for (const auto& m : pirs.members) sum += m.contribution_gips;
    EXPECT_NEAR(pirs.pooled_gips, sum, 1e-9);
  }
}

TEST_F(StrategyTest, AirsPlacesOnV2vWhenPoolIsFastEnough) {
  build(3);
  occupy(0, 2.0);
  // Pool 4 GIPS: 9/4 + 1525 KB at 10 Mbps = 2.25 + 1.22 s.
  const Placement p = decide(task("Augmented Reality", 9.0), *world, Strategy::kAirs, 0.0);
  ASSERT_EQ(p.tier, Tier::kV2v);
  ASSERT_TRUE(p.coalition.has_value());
  EXPECT_NEAR(p.estimate.total_s(), 3.47, 1e-12);
  EXPECT_LE(p.estimate.total_s(), 5.0);
  EXPECT_DOUBLE_EQ(spare(vehicle(1)), 0.0);
  EXPECT_DOUBLE_EQ(spare(vehicle(2)), 0.0);
  for (ReservationId r : p.reservations) {
    EXPECT_NEAR(world->compute().find(r)->release_at_s, p.estimate.compute_end_s(), 1e-12);
  }
}

TEST_F(StrategyTest, PirsFallsBackToEdgeWhenPartialPoolIsTooSlow) {
  build(3);
  occupy(0, 2.0);
  const Placement p = decide(task("Augmented Reality", 9.0), *world, Strategy::kPirs, 0.0);
  EXPECT_EQ(p.tier, Tier::kEdge);
  EXPECT_DOUBLE_EQ(spare(vehicle(1)), 2.0);
  EXPECT_DOUBLE_EQ(vehicle(0).acquired_gips, 0.0);
}

TEST_F(StrategyTest, PirsPlacesShortTaskOnV2v) {
  build(3);
  occupy(0, 2.0);
  const Placement p = decide(task("Augmented Reality", 2.0), *world, Strategy::kPirs, 0.0);
  ASSERT_EQ(p.tier, Tier::kV2v);
  // First round: equal power, helper 1 gives 1 of its 2 GIPS. Second round:
  // the owner already holds 1 GIPS and bargains with its updated get-willingness.
  const double lambda = (0.58 / 1.1) / (0.58 / 1.1 + 0.5);
  const double second = lambda * 3.0 - 1.0;
  ASSERT_EQ(p.coalition->members.size(), 2u);
  EXPECT_NEAR(p.coalition->members[0].contribution_gips, 1.0, 1e-12);
  EXPECT_NEAR(p.coalition->members[1].contribution_gips, second, 1e-12);
  EXPECT_NEAR(p.coalition->pooled_gips, 1.0 + second, 1e-12);
  EXPECT_NEAR(spare(vehicle(1)), 1.0, 1e-12);
  EXPECT_NEAR(spare(vehicle(2)), 2.0 - second, 1e-12);
}

TEST_F(StrategyTest, NcsNeverCooperates) {
  build(3);
  occupy(0, 2.0);
  const Placement p = decide(task("Augmented Reality", 2.0), *world, Strategy::kNcs, 0.0);
  EXPECT_EQ(p.tier, Tier::kEdge);
}

TEST_F(StrategyTest, OwnerRelocationFailsEdgeTask) {
  build(1);
  const Placement p = decide(task("Infotainment App", 45.0), *world, Strategy::kNcs, 0.0);
  ASSERT_EQ(p.tier, Tier::kEdge);
  const std::vector<InFlight> lost = on_relocation(0, *world);
  ASSERT_EQ(lost.size(), 1u);
  EXPECT_EQ(lost[0].tier, Tier::kEdge);
  EXPECT_DOUBLE_EQ(world->compute().edge(0).utilization_pct, 0.0);
  EXPECT_TRUE(world->inflight().empty());
}

TEST_F(StrategyTest, LocalTaskSurvivesRelocation) {
  build(1);
  decide(task("Augmented Reality", 9.0), *world, Strategy::kNcs, 0.0);
  EXPECT_TRUE(on_relocation(0, *world).empty());
  EXPECT_EQ(world->inflight().size(), 1u);
}

TEST_F(StrategyTest, HelperRelocationFailsCoalitionWhenConfigured) {
  cfg.mobility.coalition_failure = CoalitionFailure::kAnyMember;
  build(3);
  occupy(0, 2.0);
  const Placement p = decide(task("Augmented Reality", 9.0), *world, Strategy::kAirs, 0.0);
  ASSERT_EQ(p.tier, Tier::kV2v);
  const std::vector<InFlight> lost = on_relocation(2, *world);
  ASSERT_EQ(lost.size(), 1u);
  EXPECT_EQ(lost[0].tier, Tier::kV2v);
  EXPECT_DOUBLE_EQ(spare(vehicle(1)), 2.0);
  EXPECT_DOUBLE_EQ(spare(vehicle(2)), 2.0);
}

TEST_F(StrategyTest, OwnerRelocationFailsCoalitionInOwnerMode) {
  cfg.mobility.coalition_failure = CoalitionFailure::kOwner;
  build(3);
  occupy(0, 2.0);
  ASSERT_EQ(decide(task("Augmented Reality", 9.0), *world, Strategy::kAirs, 0.0).tier, Tier::kV2v);
  EXPECT_TRUE(on_relocation(1, *world).empty());
  EXPECT_EQ(on_relocation(0, *world).size(), 1u);
}

TEST_F(StrategyTest, CoalitionSurvivesRelocationByDefault) {
  build(3);
  occupy(0, 2.0);
  ASSERT_EQ(decide(task("Augmented Reality", 9.0), *world, Strategy::kAirs, 0.0).tier, Tier::kV2v);
  EXPECT_TRUE(on_relocation(0, *world).empty());
  EXPECT_TRUE(on_relocation(1, *world).empty());
  EXPECT_EQ(world->inflight().size(), 1u);
}

TEST_F(StrategyTest, MoveVehicleUpdatesResidents) {
  build(3);
  world->move_vehicle(1, 2);
  EXPECT_EQ(world->residents(0), (std::vector<VehicleId>{0, 2}));
  EXPECT_EQ(world->residents(2), (std::vector<VehicleId>{1}));
  EXPECT_EQ(vehicle(1).location_id, 2u);
}

}  // namespace
}  // namespace vcoop
