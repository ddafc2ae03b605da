#include "vcoop/simulation.hpp"

#include "vcoop/mobility.hpp"
#include "vcoop/random.hpp"
#include "vcoop/workload.hpp"

namespace vcoop {
namespace {

constexpr std::size_t kMaxViolationSamples = 16;

class Simulation {
 public:
  Simulation(const RunHandle& handle, const RunOptions& options)
      : handle_(handle),
        options_(options),
        cfg_(handle.scenario),
        map_(cfg_.mobility),
        placement_rng_(stream(stream_purpose::kPlacement)),
        workload_rng_(stream(stream_purpose::kWorkload)),
        mobility_rng_(stream(stream_purpose::kMobility)),
        stays_(initial_placement(cfg_.n_vehicles, map_, placement_rng_)),
        bindings_(assign_apps(cfg_.n_vehicles, cfg_.apps, workload_rng_)),
        world_(cfg_, map_, locations_of(stays_)),
        recorder_(result_.report, cfg_.warmup_s) {
    MetricsReport& r = result_.report;
    r.strategy = handle.strategy;
    r.n_vehicles = cfg_.n_vehicles;
    r.rep = handle.rep_index;
    r.seed = handle.master_seed;
  }

  RunResult run() {
    queue_.schedule(cfg_.sim_duration_s, EventKind::kSimEnd);
    for (const Stay& s : stays_) queue_.schedule(s.dwell_until_s, EventKind::kRelocate, s.vehicle_id);
    for (const AppBinding& b : bindings_) schedule_next(b.vehicle_id, 0.0);

    double last_time = 0.0;
    while (!queue_.empty()) {
      const Event e = queue_.pop();
      if (options_.record_trace) result_.trace.push_back(TraceEntry{e.kind, e.time_s});
      if (e.kind == EventKind::kSimEnd) break;
      if (options_.check_invariants && e.time_s < last_time) {
        violation("clock moved backwards");
      }
      last_time = e.time_s;
      dispatch(e);
      if (options_.check_invariants) {
        for (std::string& issue : world_.compute().audit(e.time_s)) violation(std::move(issue));
      }
    }
    queue_.drain();
    result_.events_scheduled = queue_.scheduled();
    result_.events_dispatched = queue_.dispatched();
    result_.events_drained = queue_.drained();
    return std::move(result_);
  }

 private:
  RandomStream stream(std::string_view purpose) const {
    const std::optional<Strategy> tag =
        options_.per_strategy_streams ? std::optional(handle_.strategy) : std::nullopt;
    return derive_stream(handle_.master_seed, tag, handle_.scenario.n_vehicles,
                         handle_.rep_index, purpose);
  }

  static std::vector<LocationId> locations_of(const std::vector<Stay>& stays) {
    std::vector<LocationId> out;
    out.reserve(stays.size());
    for (const Stay& s : stays) out.push_back(s.location_id);
    return out;
  }

  void violation(std::string message) {
    ++result_.invariant_violations;
    if (result_.violation_samples.size() < kMaxViolationSamples) {
      result_.violation_samples.push_back(std::move(message));
    }
  }

  void schedule_next(VehicleId v, double now) {
    const NextEvent next = next_arrival(bindings_[v], now, workload_rng_);
    queue_.schedule(next.time_s,
                    next.kind == NextEvent::Kind::kArrival ? EventKind::kTaskArrival
                                                           : EventKind::kPhaseToggle,
                    v);
  }

  void dispatch(const Event& e) {
    switch (e.kind) {
      case EventKind::kTaskArrival:
        on_arrival(e.vehicle, e.time_s);
        break;
      case EventKind::kPhaseToggle:
        toggle_phase(bindings_[e.vehicle]);
        schedule_next(e.vehicle, e.time_s);
        break;
      case EventKind::kRelocate:
        on_relocate(e.vehicle, e.time_s);
        break;
      case EventKind::kReservationRelease:
        world_.compute().release(e.ref);
        break;
      case EventKind::kTaskComplete:
        on_complete(e.ref, e.time_s);
        break;
      case EventKind::kSimEnd:
        break;
    }
  }

  void on_arrival(VehicleId v, double now) {
    const TaskSpec task = materialize_task(bindings_[v], next_task_id_++, now, workload_rng_);
    const Placement p = decide(task, world_, handle_.strategy, now);
    if (options_.record_placements) {
      result_.placements.push_back(PlacementLog{
          task.task_id, v, p.tier, p.attempted,
          p.coalition ? p.coalition->members.size() : 0, p.estimate.total_s(), task.d_limit_s});
    }
    if (p.tier == Tier::kFailed) {
      recorder_.record_outcome(task, p.attempted, Outcome::kFailed, now);
    } else {
      for (ReservationId r : p.reservations) {
        queue_.schedule(world_.compute().find(r)->release_at_s, EventKind::kReservationRelease,
                        v, r);
      }
      queue_.schedule(now + p.estimate.total_s(), EventKind::kTaskComplete, v, task.task_id);
    }
    schedule_next(v, now);
  }

  void on_relocate(VehicleId v, double now) {
    for (const InFlight& lost : on_relocation(v, world_)) {
      recorder_.record_outcome(lost.task, lost.tier, Outcome::kFailed, now);
    }
    Stay& stay = stays_[v];
    stay = relocate(stay, map_, mobility_rng_, now);
    world_.move_vehicle(v, stay.location_id);
    queue_.schedule(stay.dwell_until_s, EventKind::kRelocate, v);
  }

  void on_complete(TaskId id, double now) {
    auto& inflight = world_.inflight();
    auto it = inflight.find(id);
    if (it == inflight.end()) return;  // already failed by a relocation
    // Local tasks release at completion; make sure nothing lingers if the
    // release event is ordered after this one.
    for (ReservationId r : it->second.reservations) world_.compute().release(r);
    recorder_.record_outcome(it->second.task, it->second.tier, Outcome::kSuccess, now);
    inflight.erase(it);
  }

  const RunHandle& handle_;
  const RunOptions& options_;
  const ScenarioConfig& cfg_;
  LocationMap map_;
  RandomStream placement_rng_;
  RandomStream workload_rng_;
  RandomStream mobility_rng_;
  std::vector<Stay> stays_;
  std::vector<AppBinding> bindings_;
  World world_;
  RunResult result_;
  MetricsRecorder recorder_;
  EventQueue queue_;
  TaskId next_task_id_ = 0;
};

}  // namespace

RunResult run_detailed(const RunHandle& handle, const RunOptions& options) {
  std::vector<std::string> violations = validate(handle.scenario);
  if (!violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const std::string& v : violations) msg += "\n  - " + v;
    throw ConfigError(ConfigError::Kind::kValidation, msg, std::move(violations));
  }
  return Simulation(handle, options).run();
}

}  // namespace vcoop
