#include "vcoop/compute.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vcoop {
namespace {

constexpr double kGipsEpsilon = 1e-9;
constexpr double kPctEpsilon = 1e-9;

}  // namespace

double spare(const VehicleState& v) {
  return std::max(0.0, v.base_capacity_gips + v.acquired_gips - v.busy_gips);
}

ComputeState::ComputeState(const ScenarioConfig& config, std::size_t n_locations,
                           const std::vector<LocationId>& vehicle_locations)
    : threshold_pct_(config.compute.edge_utilization_threshold_pct),
      cloud_gips_(config.compute.cloud_gips) {
  const double give = config.game.initial_beta_give;
  vehicles_.reserve(vehicle_locations.size());
  for (std::size_t i = 0; i < vehicle_locations.size(); ++i) {
    VehicleState v;
    v.vehicle_id = static_cast<VehicleId>(i);
    v.base_capacity_gips = config.compute.vehicle_gips;
    v.beta = game::Willingness{give, 1.0 - give};
    v.location_id = vehicle_locations[i];
    vehicles_.push_back(v);
  }
  for (std::size_t l = 0; l < n_locations; ++l) {
    EdgeServerState es;
    es.es_id = static_cast<std::uint32_t>(l);
    es.location_id = static_cast<LocationId>(l);
    es.capacity_gips = config.compute.edge_gips;
    edges_.push_back(std::move(es));
  }
  vehicle_live_.assign(vehicles_.size(), 0);
  edge_live_.assign(edges_.size(), 0);
}

ReservationId ComputeState::reserve(HostKind host, std::uint32_t host_id, double amount,
                                    TaskId task, double now_s, double until_s) {
  if (!(amount > 0.0)) throw InsufficientCapacity("reservation amount must be positive");
  if (!(until_s > now_s)) throw InsufficientCapacity("reservation must end after it starts");
  switch (host) {
    case HostKind::kVehicle: {
      VehicleState& v = vehicles_.at(host_id);
      if (amount > spare(v) + kGipsEpsilon) {
        std::ostringstream msg;
        msg << "vehicle " << host_id << " asked for " << amount << " GIPS with spare "
            << spare(v);
        throw InsufficientCapacity(msg.str());
      }
      v.busy_gips += amount;
      ++vehicle_live_[host_id];
      break;
    }
    case HostKind::kEdge: {
      EdgeServerState& es = edges_.at(host_id);
      if (es.utilization_pct + amount > 100.0 + kPctEpsilon) {
        throw InsufficientCapacity("edge server utilization would exceed 100%");
      }
      es.utilization_pct += amount;
      es.running.insert(task);
      ++edge_live_[host_id];
      break;
    }
    case HostKind::kCloud:
      break;
  }
  const ReservationId id = next_id_++;
  reservations_.emplace(id, Reservation{id, host, host_id, amount, task, now_s, until_s});
  return id;
}

bool ComputeState::would_admit(std::uint32_t es_id, double vm_utilization_pct) const {
  return edges_.at(es_id).utilization_pct + vm_utilization_pct < threshold_pct_;
}

std::optional<ReservationId> ComputeState::edge_admit(std::uint32_t es_id,
                                                      double vm_utilization_pct, TaskId task,
                                                      double now_s, double until_s) {
  if (!would_admit(es_id, vm_utilization_pct)) return std::nullopt;
  return reserve(HostKind::kEdge, es_id, vm_utilization_pct, task, now_s, until_s);
}

bool ComputeState::release(ReservationId id) {
  auto it = reservations_.find(id);
  if (it == reservations_.end()) return false;
  const Reservation& r = it->second;
  switch (r.host) {
    case HostKind::kVehicle: {
      VehicleState& v = vehicles_[r.host_id];
      // Snap to zero once idle so floating residue never accumulates.
      if (--vehicle_live_[r.host_id] == 0) {
        v.busy_gips = 0.0;
      } else {
        v.busy_gips = std::max(0.0, v.busy_gips - r.amount);
      }
      break;
    }
    case HostKind::kEdge: {
      EdgeServerState& es = edges_[r.host_id];
      es.running.erase(r.task_id);
      if (--edge_live_[r.host_id] == 0) {
        es.utilization_pct = 0.0;
      } else {
        es.utilization_pct = std::max(0.0, es.utilization_pct - r.amount);
      }
      break;
    }
    case HostKind::kCloud:
      break;
  }
  reservations_.erase(it);
  return true;
}

const Reservation* ComputeState::find(ReservationId id) const {
  auto it = reservations_.find(id);
  return it == reservations_.end() ? nullptr : &it->second;
}

std::vector<std::string> ComputeState::audit(double now_s) const {
  std::vector<std::string> issues;
  std::vector<double> vehicle_sum(vehicles_.size(), 0.0);
  std::vector<double> edge_sum(edges_.size(), 0.0);
  for (const auto& [id, r] : reservations_) {
    if (r.release_at_s + kGipsEpsilon < now_s) {
      std::ostringstream msg;
      msg << "reservation " << id << " outlived its release time " << r.release_at_s
          << " (now " << now_s << ")";
      issues.push_back(msg.str());
    }
    if (r.host == HostKind::kVehicle) vehicle_sum[r.host_id] += r.amount;
    if (r.host == HostKind::kEdge) edge_sum[r.host_id] += r.amount;
  }
  for (const VehicleState& v : vehicles_) {
    const double tol = kGipsEpsilon * std::max(1.0, v.base_capacity_gips);
    if (std::abs(vehicle_sum[v.vehicle_id] - v.busy_gips) > tol) {
      std::ostringstream msg;
      msg << "vehicle " << v.vehicle_id << " busy " << v.busy_gips << " != reserved "
          << vehicle_sum[v.vehicle_id];
      issues.push_back(msg.str());
    }
    if (v.busy_gips < -tol || v.busy_gips > v.base_capacity_gips + v.acquired_gips + tol) {
      std::ostringstream msg;
      msg << "vehicle " << v.vehicle_id << " busy " << v.busy_gips << " outside [0, "
          << v.base_capacity_gips + v.acquired_gips << "]";
      issues.push_back(msg.str());
    }
    if (v.acquired_gips != 0.0) {
      issues.push_back("vehicle " + std::to_string(v.vehicle_id) +
                       " holds acquired capacity outside a bargain");
    }
    const double beta_sum = v.beta.give + v.beta.get;
    if (std::abs(beta_sum - 1.0) > 1e-9 || v.beta.give < 0.0 || v.beta.get < 0.0) {
      issues.push_back("vehicle " + std::to_string(v.vehicle_id) + " willingness off simplex");
    }
  }
  for (const EdgeServerState& es : edges_) {
    if (std::abs(edge_sum[es.es_id] - es.utilization_pct) > kPctEpsilon * 100.0) {
      std::ostringstream msg;
      msg << "edge " << es.es_id << " utilization " << es.utilization_pct << " != reserved "
          << edge_sum[es.es_id];
      issues.push_back(msg.str());
    }
    if (edge_live_[es.es_id] == 0 && es.utilization_pct != 0.0) {
      issues.push_back("edge " + std::to_string(es.es_id) + " idle with non-zero utilization");
    }
  }
  return issues;
}

}  // namespace vcoop
