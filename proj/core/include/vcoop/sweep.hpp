#ifndef VCOOP_SWEEP_HPP
#define VCOOP_SWEEP_HPP

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "vcoop/config.hpp"
#include "vcoop/metrics.hpp"
#include "vcoop/types.hpp"

namespace vcoop {

struct SweepPlan {
  std::vector<int> vehicle_counts{20, 40, 60, 80, 100};
  std::vector<Strategy> strategies{Strategy::kNcs, Strategy::kAirs, Strategy::kPirs};
  int reps = 10;
  std::uint64_t master_seed = 1;
};

/// Called after each run finishes, from the worker thread that ran it.
using RunCallback = std::function<void(const MetricsReport&)>;

/// Runs every (strategy, vehicle count, rep) cell, `parallel` at a time.
/// Results come back in plan order regardless of the degree of parallelism.
std::vector<MetricsReport> run_sweep(const ScenarioConfig& base, const SweepPlan& plan,
                                     int parallel = 1, const RunCallback& on_done = {});

/// Parses "LO:HI:STEP" or a comma-separated list such as "20,40,60".
/// Throws std::invalid_argument on malformed input or counts below 1.
std::vector<int> parse_vehicle_counts(std::string_view text);

/// Parses a comma-separated strategy list such as "ncs,airs,pirs".
std::vector<Strategy> parse_strategies(std::string_view text);

}  // namespace vcoop

#endif  // VCOOP_SWEEP_HPP
