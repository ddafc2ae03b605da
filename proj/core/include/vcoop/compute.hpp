#ifndef VCOOP_COMPUTE_HPP
#define VCOOP_COMPUTE_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcoop/config.hpp"
#include "vcoop/game.hpp"
#include "vcoop/types.hpp"

namespace vcoop {

using ReservationId = std::uint64_t;

struct VehicleState {
  VehicleId vehicle_id = 0;
  double base_capacity_gips = 0.0;
  double busy_gips = 0.0;      ///< sum of live reservations hosted here
  double acquired_gips = 0.0;  ///< borrowed capacity, non-zero only mid-bargain
  game::Willingness beta;
  game::ActionRewards last_reward;
  LocationId location_id = 0;
};

/// Real-time spare capacity: base + acquired - busy, floored at zero.
double spare(const VehicleState& v);

struct EdgeServerState {
  std::uint32_t es_id = 0;
  LocationId location_id = 0;
  double capacity_gips = 0.0;
  double utilization_pct = 0.0;
  std::set<TaskId> running;
};

enum class HostKind : std::uint8_t { kVehicle, kEdge, kCloud };

/// Capacity held for one task. `amount` is GIPS on vehicles and the cloud,
/// VM utilization percent on edge servers.
struct Reservation {
  ReservationId id = 0;
  HostKind host = HostKind::kVehicle;
  std::uint32_t host_id = 0;
  double amount = 0.0;
  TaskId task_id = 0;
  double created_at_s = 0.0;
  double release_at_s = 0.0;
};

class InsufficientCapacity : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Owns every vehicle's CPU bookkeeping, the edge servers (one per location)
/// and the cloud. All capacity changes go through reserve/release so that
/// busy_gips and utilization_pct always equal the sum of live reservations.
class ComputeState {
 public:
  ComputeState(const ScenarioConfig& config, std::size_t n_locations,
               const std::vector<LocationId>& vehicle_locations);

  std::vector<VehicleState>& vehicles() { return vehicles_; }
  const std::vector<VehicleState>& vehicles() const { return vehicles_; }
  VehicleState& vehicle(VehicleId id) { return vehicles_.at(id); }
  const VehicleState& vehicle(VehicleId id) const { return vehicles_.at(id); }

  const std::vector<EdgeServerState>& edges() const { return edges_; }
  const EdgeServerState& edge(std::uint32_t es_id) const { return edges_.at(es_id); }

  /// Throws InsufficientCapacity if a vehicle would exceed its spare or an
  /// edge server would exceed 100 % utilization; callers check first.
  ReservationId reserve(HostKind host, std::uint32_t host_id, double amount, TaskId task,
                        double now_s, double until_s);

  /// Admits iff utilization + vm_utilization_pct < threshold and, if so,
  /// reserves that utilization until `until_s`.
  std::optional<ReservationId> edge_admit(std::uint32_t es_id, double vm_utilization_pct,
                                          TaskId task, double now_s, double until_s);

  bool would_admit(std::uint32_t es_id, double vm_utilization_pct) const;

  /// Returns false if the reservation was already released.
  bool release(ReservationId id);

  const Reservation* find(ReservationId id) const;
  std::size_t live_reservations() const { return reservations_.size(); }

  /// Accounting violations at time `now_s`; empty when consistent.
  std::vector<std::string> audit(double now_s) const;

 private:
  double threshold_pct_;
  double cloud_gips_;
  std::vector<VehicleState> vehicles_;
  std::vector<EdgeServerState> edges_;
  std::vector<std::uint32_t> vehicle_live_;
  std::vector<std::uint32_t> edge_live_;
  std::unordered_map<ReservationId, Reservation> reservations_;
  ReservationId next_id_ = 1;
};

}  // namespace vcoop

#endif  // VCOOP_COMPUTE_HPP
