#ifndef VCOOP_STRATEGY_HPP
#define VCOOP_STRATEGY_HPP

#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vcoop/compute.hpp"
#include "vcoop/config.hpp"
#include "vcoop/mobility.hpp"
#include "vcoop/netdelay.hpp"
#include "vcoop/types.hpp"
#include "vcoop/workload.hpp"

namespace vcoop {

enum class Tier : std::uint8_t { kLocal, kV2v, kEdge, kCloud, kFailed };

std::string_view to_string(Tier tier);

struct CoalitionMember {
  VehicleId vehicle_id = 0;
  double contribution_gips = 0.0;
};

/// Temporary group executing one partitioned task: the owner's own spare plus
/// whatever each helper hands over.
struct Coalition {
  TaskId task_id = 0;
  VehicleId owner_id = 0;
  double owner_spare_gips = 0.0;
  std::vector<CoalitionMember> members;  ///< helpers only, in bargaining order
  double pooled_gips = 0.0;
  double formed_at_s = 0.0;
};

struct Placement {
  Tier tier = Tier::kFailed;
  /// Where the task was sent. Differs from `tier` only for failed tasks.
  Tier attempted = Tier::kFailed;
  DelayEstimate estimate;
  std::optional<Coalition> coalition;
  std::optional<std::uint32_t> es_id;
  std::vector<ReservationId> reservations;
};

/// A placed task that has not reached a terminal state yet.
struct InFlight {
  TaskSpec task;
  Tier tier = Tier::kLocal;
  std::vector<ReservationId> reservations;
  double complete_at_s = 0.0;
};

/// Everything the placement logic can see: the instantaneous oracle view of
/// vehicle positions, capacities and in-flight work.
class World {
 public:
  World(const ScenarioConfig& config, const LocationMap& map,
        const std::vector<LocationId>& vehicle_locations);

  const ScenarioConfig& config() const { return *config_; }
  const LocationMap& map() const { return *map_; }
  ComputeState& compute() { return compute_; }
  const ComputeState& compute() const { return compute_; }

  /// Vehicles currently in `location`, ascending by id.
  const std::vector<VehicleId>& residents(LocationId location) const {
    return residents_.at(location);
  }
  void move_vehicle(VehicleId vehicle, LocationId to);

  std::unordered_map<TaskId, InFlight>& inflight() { return inflight_; }
  const std::unordered_map<TaskId, InFlight>& inflight() const { return inflight_; }

  /// Registers a placed task; `exposed` vehicles fail it if they relocate.
  void track(InFlight record, std::span<const VehicleId> exposed);
  std::vector<TaskId>& exposure(VehicleId vehicle) { return exposure_.at(vehicle); }

 private:
  const ScenarioConfig* config_;
  const LocationMap* map_;
  ComputeState compute_;
  std::vector<std::vector<VehicleId>> residents_;
  std::unordered_map<TaskId, InFlight> inflight_;
  std::vector<std::vector<TaskId>> exposure_;
};

struct Candidate {
  VehicleId vehicle_id = 0;
  double utility = 0.0;
};

/// Co-located vehicles with spare capacity, scored by their utility as a
/// giver paired with the owner as a getter. Sorted by utility descending,
/// ties by ascending id; entries below candidate_utility_min are dropped.
std::vector<Candidate> build_candidates(VehicleId owner, const World& world);

/// Top min(|candidates|, N^n) helpers each give their entire spare.
Coalition form_coalition_airs(VehicleId owner, std::span<const Candidate> candidates,
                              const TaskSpec& task, const World& world, double now_s);

/// Pairwise bargaining with the top min(|candidates|, N^n) helpers in order.
/// Each round splits the pair's joint spare by bargaining power; the helper
/// hands over what it holds beyond its share. Willingness of both parties is
/// updated after every round in which the helper contributes.
Coalition form_coalition_pirs(VehicleId owner, std::span<const Candidate> candidates,
                              const TaskSpec& task, World& world, double now_s);

/// Chooses a tier for a freshly arrived task and commits the reservations.
/// Non-failed placements are registered as in flight.
Placement decide(const TaskSpec& task, World& world, Strategy strategy, double now_s);

/// Fails every in-flight task that depends on `vehicle` staying put (edge and
/// cloud tasks it owns, coalition tasks it belongs to) and releases their
/// reservations. Local tasks keep running. Returns the failed records.
std::vector<InFlight> on_relocation(VehicleId vehicle, World& world);

}  // namespace vcoop

#endif  // VCOOP_STRATEGY_HPP
