#ifndef VCOOP_SIMULATION_HPP
#define VCOOP_SIMULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcoop/config.hpp"
#include "vcoop/event_queue.hpp"
#include "vcoop/metrics.hpp"
#include "vcoop/strategy.hpp"
#include "vcoop/types.hpp"

namespace vcoop {

/// Identifies one replayable run.
struct RunHandle {
  ScenarioConfig scenario;
  Strategy strategy = Strategy::kPirs;
  std::uint64_t master_seed = 0;
  int rep_index = 0;
};

struct RunOptions {
  /// Audit reservation accounting after every event.
  bool check_invariants = false;
  bool record_trace = false;
  bool record_placements = false;
  /// By default every strategy of a (vehicle count, rep) cell sees the same
  /// placement, workload and mobility draws. Set to fold the strategy into
  /// those streams as well.
  bool per_strategy_streams = false;
};

struct TraceEntry {
  EventKind kind;
  double time_s;

  bool operator==(const TraceEntry&) const = default;
};

struct PlacementLog {
  TaskId task_id = 0;
  VehicleId owner = 0;
  Tier tier = Tier::kFailed;
  Tier attempted = Tier::kFailed;
  std::size_t coalition_helpers = 0;
  double estimate_s = 0.0;
  double d_limit_s = 0.0;
};

struct RunResult {
  MetricsReport report;
  std::uint64_t events_scheduled = 0;
  std::uint64_t events_dispatched = 0;
  std::uint64_t events_drained = 0;
  std::uint64_t invariant_violations = 0;
  std::vector<std::string> violation_samples;  ///< first few messages
  std::vector<TraceEntry> trace;
  std::vector<PlacementLog> placements;
};

/// Runs one simulation to SimEnd. Throws ConfigError for an invalid scenario;
/// the simulation itself never fails. Identical handles give identical results.
RunResult run_detailed(const RunHandle& handle, const RunOptions& options = {});

inline MetricsReport run(const RunHandle& handle) { return run_detailed(handle).report; }

}  // namespace vcoop

#endif  // VCOOP_SIMULATION_HPP
