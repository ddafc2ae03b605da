#ifndef VCOOP_METRICS_HPP
#define VCOOP_METRICS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "vcoop/strategy.hpp"
#include "vcoop/types.hpp"
#include "vcoop/workload.hpp"

namespace vcoop {

/// Counters for one simulation run.
struct MetricsReport {
  Strategy strategy = Strategy::kNcs;
  int n_vehicles = 0;
  int rep = 0;
  std::uint64_t seed = 0;

  std::uint64_t total_tasks = 0;
  std::uint64_t failed_tasks = 0;
  double failed_length_gi = 0.0;
  std::uint64_t executed_local = 0;
  std::uint64_t executed_v2v = 0;
  std::uint64_t executed_edge = 0;
  std::uint64_t executed_cloud = 0;
  /// Tasks sent to an edge server or the cloud, whether or not they finished.
  std::uint64_t offloaded_to_mec_tasks = 0;
  double offloaded_length_gi = 0.0;
  double succeeded_length_gi = 0.0;

  double failed_pct() const;
  double offload_pct() const;
  double total_length_gi() const { return failed_length_gi + succeeded_length_gi; }
};

enum class Outcome { kSuccess, kFailed };

/// Accumulates terminal task outcomes into a report, once per task id.
class MetricsRecorder {
 public:
  explicit MetricsRecorder(MetricsReport& report, double warmup_s = 0.0)
      : report_(&report), warmup_s_(warmup_s) {}

  /// `attempted` is the tier the task was sent to; for successes it is the
  /// tier that executed it. Tasks ending before the warm-up are ignored.
  /// Throws std::logic_error when the same task is recorded twice.
  void record_outcome(const TaskSpec& task, Tier attempted, Outcome outcome, double now_s);

 private:
  MetricsReport* report_;
  double warmup_s_;
  std::unordered_set<TaskId> seen_;
};

struct AggregateRow {
  Strategy strategy = Strategy::kNcs;
  int n_vehicles = 0;
  std::string metric;
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation, 0 for a single rep
  int n_reps = 0;
};

/// Names of the per-run quantities aggregated by finalize(), in output order.
std::span<const std::string_view> aggregate_metric_names();

/// Value of an aggregated metric for a single report.
double metric_value(const MetricsReport& report, std::string_view metric);

/// Groups reports by (strategy, n_vehicles) and emits mean and sample std of
/// every metric. Rows are sorted by strategy name, vehicle count, metric name.
std::vector<AggregateRow> finalize(std::span<const MetricsReport> reports);

inline constexpr std::string_view kRunsCsvHeader =
    "strategy,n_vehicles,rep,seed,total_tasks,failed_tasks,failed_pct,failed_length_gi,"
    "executed_local,executed_v2v,executed_edge,executed_cloud,offload_pct,"
    "offloaded_length_gi,succeeded_length_gi";
inline constexpr std::string_view kAggregateCsvHeader =
    "strategy,n_vehicles,metric,mean,std,n_reps";

/// Six significant digits, as used in every CSV cell.
std::string format_number(double value);

std::string runs_csv(std::span<const MetricsReport> reports);
std::string aggregate_csv(std::span<const AggregateRow> rows);

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes `runs.csv` and `aggregate.csv` under `out_dir` (created if needed).
void write_csv(std::span<const MetricsReport> reports, const std::filesystem::path& out_dir);

}  // namespace vcoop

#endif  // VCOOP_METRICS_HPP
