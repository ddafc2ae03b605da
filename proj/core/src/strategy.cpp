#include "vcoop/strategy.hpp"

#include <algorithm>

#include "vcoop/game.hpp"

namespace vcoop {

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::kLocal:
      return "local";
    case Tier::kV2v:
      return "v2v";
    case Tier::kEdge:
      return "edge";
    case Tier::kCloud:
      return "cloud";
    case Tier::kFailed:
      return "failed";
  }
  return "unknown";
}

World::World(const ScenarioConfig& config, const LocationMap& map,
             const std::vector<LocationId>& vehicle_locations)
    : config_(&config),
      map_(&map),
      compute_(config, map.size(), vehicle_locations),
      residents_(map.size()),
      exposure_(vehicle_locations.size()) {
  for (std::size_t v = 0; v < vehicle_locations.size(); ++v) {
    residents_.at(vehicle_locations[v]).push_back(static_cast<VehicleId>(v));
  }
}

void World::move_vehicle(VehicleId vehicle, LocationId to) {
  VehicleState& v = compute_.vehicle(vehicle);
  auto& from_list = residents_.at(v.location_id);
  from_list.erase(std::lower_bound(from_list.begin(), from_list.end(), vehicle));
  auto& to_list = residents_.at(to);
  to_list.insert(std::lower_bound(to_list.begin(), to_list.end(), vehicle), vehicle);
  v.location_id = to;
}

void World::track(InFlight record, std::span<const VehicleId> exposed) {
  const TaskId id = record.task.task_id;
  for (VehicleId v : exposed) exposure_.at(v).push_back(id);
  inflight_.emplace(id, std::move(record));
}

std::vector<Candidate> build_candidates(VehicleId owner, const World& world) {
  const GameConfig& game_cfg = world.config().game;
  const ComputeState& compute = world.compute();
  // The helper gives, the owner gets.
  const double reward =
      game::action_reward(game::ActionProbability::pure(game::Action::kGive), game_cfg.ma,
                          game::ActionProbability::pure(game::Action::kGet));

  std::vector<Candidate> out;
  for (VehicleId id : world.residents(compute.vehicle(owner).location_id)) {
    if (id == owner) continue;
    const VehicleState& v = compute.vehicle(id);
    if (!(spare(v) > 0.0)) continue;
    const game::RiskVector risk =
        game::risk_vector(v.busy_gips, v.base_capacity_gips + v.acquired_gips, v.beta);
    const double u = game::utility(risk, game_cfg.mtheta, reward, game::Action::kGive);
    if (u < game_cfg.candidate_utility_min) continue;
    out.push_back(Candidate{id, u});
  }
  // Residents are kept in id order, so a stable sort leaves ties by id.
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) { return a.utility > b.utility; });
  return out;
}

namespace {

std::size_t coalition_size(std::span<const Candidate> candidates, const World& world) {
  return std::min(candidates.size(),
                  static_cast<std::size_t>(world.config().compute.max_v2v_connections));
}

}  // namespace

Coalition form_coalition_airs(VehicleId owner, std::span<const Candidate> candidates,
                              const TaskSpec& task, const World& world, double now_s) {
  const ComputeState& compute = world.compute();
  Coalition c;
  c.task_id = task.task_id;
  c.owner_id = owner;
  c.formed_at_s = now_s;
  c.owner_spare_gips = spare(compute.vehicle(owner));
  c.pooled_gips = c.owner_spare_gips;
  const std::size_t n = coalition_size(candidates, world);
  for (std::size_t k = 0; k < n; ++k) {
    const double give = spare(compute.vehicle(candidates[k].vehicle_id));
    if (!(give > 0.0)) continue;
    c.members.push_back(CoalitionMember{candidates[k].vehicle_id, give});
    c.pooled_gips += give;
  }
  return c;
}

Coalition form_coalition_pirs(VehicleId owner, std::span<const Candidate> candidates,
                              const TaskSpec& task, World& world, double now_s) {
  ComputeState& compute = world.compute();
  const GameConfig& game_cfg = world.config().game;
  const game::ActionRewards owner_reward =
      game::counterfactual_rewards(game_cfg.ma, game::Action::kGive);
  const game::ActionRewards helper_reward =
      game::counterfactual_rewards(game_cfg.ma, game::Action::kGet);

  VehicleState& o = compute.vehicle(owner);
  Coalition c;
  c.task_id = task.task_id;
  c.owner_id = owner;
  c.formed_at_s = now_s;
  c.owner_spare_gips = spare(o);

  const std::size_t n = coalition_size(candidates, world);
  for (std::size_t k = 0; k < n; ++k) {
    VehicleState& h = compute.vehicle(candidates[k].vehicle_id);
    const double owner_spare = spare(o);
    const double helper_spare = spare(h);
    if (!(helper_spare > 0.0)) continue;

    const double lambda_owner = game::bargaining_power(o.beta.get, h.beta.get);
    const double busy[2] = {o.busy_gips, h.busy_gips};
    const double lambda[2] = {lambda_owner, 1.0 - lambda_owner};
    const double phi = (o.base_capacity_gips + o.acquired_gips) + h.base_capacity_gips;

    double contribution = 0.0;
    try {
      const game::BargainOutcome deal = game::anbs_allocate(busy, phi, lambda);
      // Whatever the owner ends up with beyond its current spare comes out of
      // the helper's spare.
      const double owner_gain = (deal.allocation[0] - o.busy_gips) - owner_spare;
      contribution = std::clamp(owner_gain, 0.0, helper_spare);
    } catch (const game::InfeasibleBargain&) {
      contribution = 0.0;
    }
    if (!(contribution > 0.0)) continue;

    o.acquired_gips += contribution;
    c.members.push_back(CoalitionMember{h.vehicle_id, contribution});

    o.beta = game::update_willingness(o.beta, owner_reward, o.last_reward, game_cfg.alpha);
    o.last_reward = owner_reward;
    h.beta = game::update_willingness(h.beta, helper_reward, h.last_reward, game_cfg.alpha);
    h.last_reward = helper_reward;
  }
  // Borrowed capacity is bookkeeping for the bargain only; the helpers'
  // contributions become reservations on the helpers themselves.
  o.acquired_gips = 0.0;

  c.pooled_gips = c.owner_spare_gips;
  for (const CoalitionMember& m : c.members) c.pooled_gips += m.contribution_gips;
  return c;
}

namespace {

void place_local(const TaskSpec& task, World& world, const DelayEstimate& est, double now_s,
                 Placement& p) {
  ComputeState& compute = world.compute();
  const double amount = spare(compute.vehicle(task.owner_vehicle_id));
  p.tier = p.attempted = Tier::kLocal;
  p.estimate = est;
  p.reservations.push_back(compute.reserve(HostKind::kVehicle, task.owner_vehicle_id, amount,
                                           task.task_id, now_s, now_s + est.total_s()));
}

void place_v2v(const TaskSpec& task, World& world, Coalition coalition,
               const DelayEstimate& est, double now_s, Placement& p) {
  ComputeState& compute = world.compute();
  const double until = now_s + est.compute_end_s();
  if (coalition.owner_spare_gips > 0.0) {
    p.reservations.push_back(compute.reserve(HostKind::kVehicle, coalition.owner_id,
                                             coalition.owner_spare_gips, task.task_id, now_s,
                                             until));
  }
  for (const CoalitionMember& m : coalition.members) {
    p.reservations.push_back(compute.reserve(HostKind::kVehicle, m.vehicle_id,
                                             m.contribution_gips, task.task_id, now_s, until));
  }
  p.tier = p.attempted = Tier::kV2v;
  p.estimate = est;
  p.coalition = std::move(coalition);
}

}  // namespace

Placement decide(const TaskSpec& task, World& world, Strategy strategy, double now_s) {
  const ScenarioConfig& cfg = world.config();
  ComputeState& compute = world.compute();
  const VehicleId owner = task.owner_vehicle_id;
  Placement p;

  const DelayEstimate local = local_delay(task.length_gi, spare(compute.vehicle(owner)));
  if (local.total_s() <= task.d_limit_s) {
    place_local(task, world, local, now_s, p);
    world.track(InFlight{task, Tier::kLocal, p.reservations, now_s + local.total_s()}, {});
    return p;
  }

  if (strategy != Strategy::kNcs) {
    const std::vector<Candidate> candidates = build_candidates(owner, world);
    if (!candidates.empty()) {
      Coalition coalition = strategy == Strategy::kAirs
                                ? form_coalition_airs(owner, candidates, task, world, now_s)
                                : form_coalition_pirs(owner, candidates, task, world, now_s);
      if (coalition.pooled_gips > 0.0 && !coalition.members.empty()) {
        const DelayEstimate v2v = v2v_delay(task.length_gi, task.upload_kb, task.download_kb,
                                            coalition.pooled_gips, cfg.net.v2v_rate_mbps);
        if (v2v.total_s() <= task.d_limit_s) {
          std::vector<VehicleId> exposed;
          if (cfg.mobility.coalition_failure != CoalitionFailure::kNone) exposed.push_back(owner);
          if (cfg.mobility.coalition_failure == CoalitionFailure::kAnyMember) {
            for (const CoalitionMember& m : coalition.members) exposed.push_back(m.vehicle_id);
          }
          place_v2v(task, world, std::move(coalition), v2v, now_s, p);
          world.track(InFlight{task, Tier::kV2v, p.reservations, now_s + v2v.total_s()},
                      exposed);
          return p;
        }
      }
    }
  }

  const auto es = static_cast<std::uint32_t>(compute.vehicle(owner).location_id);
  const VehicleId exposed[1] = {owner};
  if (compute.would_admit(es, task.vm_utilization_pct)) {
    const DelayEstimate edge = edge_delay(task.length_gi, task.upload_kb, task.download_kb,
                                          cfg.compute.edge_gips, cfg.net.v2i_rate_mbps);
    p.attempted = Tier::kEdge;
    p.es_id = es;
    p.estimate = edge;
    if (edge.total_s() > task.d_limit_s) {
      p.tier = Tier::kFailed;
      return p;
    }
    p.tier = Tier::kEdge;
    p.reservations.push_back(*compute.edge_admit(es, task.vm_utilization_pct, task.task_id,
                                                 now_s, now_s + edge.compute_end_s()));
    world.track(InFlight{task, Tier::kEdge, p.reservations, now_s + edge.total_s()}, exposed);
    return p;
  }

  const DelayEstimate cloud =
      cloud_delay(task.length_gi, task.upload_kb, task.download_kb, cfg.compute.cloud_gips,
                  cfg.net.v2i_rate_mbps, cfg.net.wan_rate_mbps);
  p.attempted = Tier::kCloud;
  p.estimate = cloud;
  if (cloud.total_s() > task.d_limit_s) {
    p.tier = Tier::kFailed;
    return p;
  }
  p.tier = Tier::kCloud;
  p.reservations.push_back(compute.reserve(HostKind::kCloud, 0, cfg.compute.cloud_gips,
                                           task.task_id, now_s, now_s + cloud.compute_end_s()));
  world.track(InFlight{task, Tier::kCloud, p.reservations, now_s + cloud.total_s()}, exposed);
  return p;
}

std::vector<InFlight> on_relocation(VehicleId vehicle, World& world) {
  std::vector<InFlight> failed;
  std::vector<TaskId>& exposed = world.exposure(vehicle);
  auto& inflight = world.inflight();
  for (TaskId id : exposed) {
    auto it = inflight.find(id);
    // Entries for tasks that already finished are stale; skip them.
    if (it == inflight.end() || it->second.tier == Tier::kLocal) continue;
    for (ReservationId r : it->second.reservations) world.compute().release(r);
    failed.push_back(std::move(it->second));
    inflight.erase(it);
  }
  exposed.clear();
  return failed;
}

}  // namespace vcoop
