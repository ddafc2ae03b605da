#include "vcoop/metrics.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <tuple>

namespace vcoop {
namespace {

// Sorted by name: aggregate rows come out in this order within a cell.
constexpr std::array<std::string_view, 12> kMetricNames = {
    "executed_cloud",      "executed_edge",         "executed_local",  "executed_v2v",
    "failed_length_frac",  "failed_length_gi",      "failed_pct",      "offload_pct",
    "offloaded_length_frac", "offloaded_length_gi", "succeeded_length_gi", "total_tasks",
};

double fraction(double part, double whole) { return whole > 0.0 ? part / whole : 0.0; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw OutputError("cannot open '" + path.string() + "' for writing: " +
                      std::strerror(errno));
  }
  out << content;
  out.flush();
  if (!out) throw OutputError("write to '" + path.string() + "' failed");
}

}  // namespace

double MetricsReport::failed_pct() const {
  return fraction(static_cast<double>(failed_tasks), static_cast<double>(total_tasks));
}

double MetricsReport::offload_pct() const {
  return fraction(static_cast<double>(offloaded_to_mec_tasks), static_cast<double>(total_tasks));
}

void MetricsRecorder::record_outcome(const TaskSpec& task, Tier attempted, Outcome outcome,
                                     double now_s) {
  if (now_s < warmup_s_) return;
  if (!seen_.insert(task.task_id).second) {
    throw std::logic_error("task " + std::to_string(task.task_id) + " recorded twice");
  }
  MetricsReport& r = *report_;
  ++r.total_tasks;
  if (attempted == Tier::kEdge || attempted == Tier::kCloud) {
    ++r.offloaded_to_mec_tasks;
    r.offloaded_length_gi += task.length_gi;
  }
  if (outcome == Outcome::kFailed) {
    ++r.failed_tasks;
    r.failed_length_gi += task.length_gi;
    return;
  }
  r.succeeded_length_gi += task.length_gi;
  switch (attempted) {
    case Tier::kLocal:
      ++r.executed_local;
      break;
    case Tier::kV2v:
      ++r.executed_v2v;
      break;
    case Tier::kEdge:
      ++r.executed_edge;
      break;
    case Tier::kCloud:
      ++r.executed_cloud;
      break;
    case Tier::kFailed:
      throw std::logic_error("a successful task needs an executing tier");
  }
}

std::span<const std::string_view> aggregate_metric_names() { return kMetricNames; }

double metric_value(const MetricsReport& r, std::string_view metric) {
  if (metric == "failed_pct") return r.failed_pct();
  if (metric == "offload_pct") return r.offload_pct();
  if (metric == "failed_length_gi") return r.failed_length_gi;
  if (metric == "offloaded_length_gi") return r.offloaded_length_gi;
  if (metric == "succeeded_length_gi") return r.succeeded_length_gi;
  if (metric == "failed_length_frac") return fraction(r.failed_length_gi, r.total_length_gi());
  if (metric == "offloaded_length_frac") {
    return fraction(r.offloaded_length_gi, r.total_length_gi());
  }
  if (metric == "total_tasks") return static_cast<double>(r.total_tasks);
  if (metric == "executed_local") return static_cast<double>(r.executed_local);
  if (metric == "executed_v2v") return static_cast<double>(r.executed_v2v);
  if (metric == "executed_edge") return static_cast<double>(r.executed_edge);
  if (metric == "executed_cloud") return static_cast<double>(r.executed_cloud);
  throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
}

std::vector<AggregateRow> finalize(std::span<const MetricsReport> reports) {
  std::map<std::pair<std::string_view, int>, std::vector<const MetricsReport*>> cells;
  for (const MetricsReport& r : reports) {
    cells[{to_string(r.strategy), r.n_vehicles}].push_back(&r);
  }
  std::vector<AggregateRow> rows;
  for (const auto& [key, members] : cells) {
    const auto n = static_cast<double>(members.size());
    for (std::string_view metric : kMetricNames) {
      double sum = 0.0;
      for (const MetricsReport* r : members) sum += metric_value(*r, metric);
      const double mean = sum / n;
      double sq = 0.0;
      for (const MetricsReport* r : members) {
        const double d = metric_value(*r, metric) - mean;
        sq += d * d;
      }
      const double sd = members.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
      rows.push_back(AggregateRow{members.front()->strategy, key.second, std::string(metric),
                                  mean, sd, static_cast<int>(members.size())});
    }
  }
  return rows;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0 as well
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string runs_csv(std::span<const MetricsReport> reports) {
  std::vector<const MetricsReport*> sorted;
  for (const MetricsReport& r : reports) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return std::make_tuple(to_string(a->strategy), a->n_vehicles, a->rep) <
           std::make_tuple(to_string(b->strategy), b->n_vehicles, b->rep);
  });
  std::string out(kRunsCsvHeader);
  out += '\n';
  for (const MetricsReport* r : sorted) {
    out += std::string(to_string(r->strategy)) + ',' + std::to_string(r->n_vehicles) + ',' +
           std::to_string(r->rep) + ',' + std::to_string(r->seed) + ',' +
           std::to_string(r->total_tasks) + ',' + std::to_string(r->failed_tasks) + ',' +
           format_number(r->failed_pct()) + ',' + format_number(r->failed_length_gi) + ',' +
           std::to_string(r->executed_local) + ',' + std::to_string(r->executed_v2v) + ',' +
           std::to_string(r->executed_edge) + ',' + std::to_string(r->executed_cloud) + ',' +
           format_number(r->offload_pct()) + ',' + format_number(r->offloaded_length_gi) +
           ',' + format_number(r->succeeded_length_gi) + '\n';
  }
  return out;
}

std::string aggregate_csv(std::span<const AggregateRow> rows) {
  std::vector<const AggregateRow*> sorted;
  for (const AggregateRow& r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return std::make_tuple(to_string(a->strategy), a->n_vehicles, std::string_view(a->metric)) <
           std::make_tuple(to_string(b->strategy), b->n_vehicles, std::string_view(b->metric));
  });
  std::string out(kAggregateCsvHeader);
  out += '\n';
  for (const AggregateRow* r : sorted) {
    out += std::string(to_string(r->strategy)) + ',' + std::to_string(r->n_vehicles) + ',' +
           r->metric + ',' + format_number(r->mean) + ',' + format_number(r->std) + ',' +
           std::to_string(r->n_reps) + '\n';
  }
  return out;
}

void write_csv(std::span<const MetricsReport> reports, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw OutputError("cannot create output directory '" + out_dir.string() +
                      "': " + ec.message());
  }
  const std::vector<AggregateRow> rows = finalize(reports);
  write_file(out_dir / "runs.csv", runs_csv(reports));
  write_file(out_dir / "aggregate.csv", aggregate_csv(rows));
}

}  // namespace vcoop
