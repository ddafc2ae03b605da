#include "vcoop/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "vcoop/simulation.hpp"

namespace vcoop {
namespace {

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<MetricsReport> run_sweep(const ScenarioConfig& base, const SweepPlan& plan,
                                     int parallel, const RunCallback& on_done) {
  struct Cell {
    Strategy strategy;
    int n_vehicles;
    int rep;
  };
  std::vector<Cell> cells;
  for (Strategy s : plan.strategies) {
    for (int n : plan.vehicle_counts) {
      for (int rep = 0; rep < plan.reps; ++rep) cells.push_back(Cell{s, n, rep});
    }
  }
  std::vector<ScenarioConfig> scenarios;
  for (int n : plan.vehicle_counts) {
    scenarios.push_back(base);
    scenarios.back().n_vehicles = n;
    const std::vector<std::string> violations = validate(scenarios.back());
    if (!violations.empty()) {
      throw ConfigError(ConfigError::Kind::kValidation, "invalid sweep scenario: " + violations[0],
                        violations);
    }
  }
  const auto scenario_for = [&](int n) -> const ScenarioConfig& {
    const auto it = std::find(plan.vehicle_counts.begin(), plan.vehicle_counts.end(), n);
    return scenarios[static_cast<std::size_t>(it - plan.vehicle_counts.begin())];
  };

  std::vector<MetricsReport> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const Cell& c = cells[i];
        results[i] = run(RunHandle{scenario_for(c.n_vehicles), c.strategy, plan.master_seed, c.rep});
        if (on_done) {
          std::lock_guard lock(callback_mutex);
          on_done(results[i]);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cells.size());
      }
    }
  };

  const int threads = std::clamp(parallel, 1, static_cast<int>(std::max<std::size_t>(cells.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<int> parse_vehicle_counts(std::string_view text) {
  std::vector<int> counts;
  if (text.find(':') != std::string_view::npos) {
    const std::vector<std::string_view> parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("expected LO:HI:STEP");
    const int lo = parse_int(parts[0]);
    const int hi = parse_int(parts[1]);
    const int step = parse_int(parts[2]);
    if (step < 1 || hi < lo) throw std::invalid_argument("expected LO <= HI and STEP >= 1");
    for (int n = lo; n <= hi; n += step) counts.push_back(n);
  } else {
    for (std::string_view part : split(text, ',')) counts.push_back(parse_int(part));
  }
  if (counts.empty()) throw std::invalid_argument("no vehicle counts given");
  for (int n : counts) {
    if (n < 1) throw std::invalid_argument("vehicle counts must be >= 1");
  }
  return counts;
}

std::vector<Strategy> parse_strategies(std::string_view text) {
  std::vector<Strategy> out;
  for (std::string_view part : split(text, ',')) {
    const std::optional<Strategy> s = parse_strategy(part);
    if (!s) throw std::invalid_argument("unknown strategy '" + std::string(part) + "'");
    out.push_back(*s);
  }
  return out;
}

}  // namespace vcoop
