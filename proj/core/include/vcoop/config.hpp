#ifndef VCOOP_CONFIG_HPP
#define VCOOP_CONFIG_HPP

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vcoop {

/// Row-major 2x2 payoff matrix. Rows index the own action (give, get).
using Matrix2 = std::array<std::array<double, 2>, 2>;

/// One application class. Lengths are giga-instructions, sizes kilobytes.
struct AppProfile {
  std::string name;
  double usage_pct = 0.0;  ///< share of vehicles running the app, in (0, 1]
  double interarrival_mean_s = 0.0;
  double delay_tolerance_s = 0.0;
  double active_period_s = 0.0;
  double idle_period_s = 0.0;
  double upload_kb = 0.0;
  double download_kb = 0.0;
  double task_length_mean_gi = 0.0;
  double vm_utilization_pct = 0.0;  ///< edge VM load while a task runs, in (0, 100]

  bool operator==(const AppProfile&) const = default;
};

struct NetworkConfig {
  double v2v_rate_mbps = 10.0;
  double v2i_rate_mbps = 250.0;
  double wan_rate_mbps = 1000.0;

  bool operator==(const NetworkConfig&) const = default;
};

struct ComputeConfig {
  double vehicle_gips = 2.0;
  double edge_gips = 160.0;
  double cloud_gips = 1600.0;
  double edge_utilization_threshold_pct = 80.0;
  int max_v2v_connections = 6;

  bool operator==(const ComputeConfig&) const = default;
};

struct GameConfig {
  Matrix2 ma{{{0.25, 1.0}, {1.0, 0.0}}};
  Matrix2 mtheta{{{0.1, 1.0}, {1.0, 0.5}}};
  double alpha = 0.1;
  double initial_beta_give = 0.5;
  double candidate_utility_min = 0.0;

  bool operator==(const GameConfig&) const = default;
};

/// Which relocations break a running coalition task. Edge and cloud tasks
/// always fail when their owner leaves the access point's coverage.
enum class CoalitionFailure {
  kNone,       ///< coalition tasks are not tied to an access point
  kOwner,      ///< the owner leaving fails the task
  kAnyMember,  ///< the owner or any helper leaving fails the task
};

std::string_view to_string(CoalitionFailure mode);

/// Location types are numbered 1..N in the order of the vectors.
struct MobilityConfig {
  std::vector<int> location_counts{1, 1, 2};
  std::vector<double> dwell_mean_s{30.0, 20.0, 10.0};
  CoalitionFailure coalition_failure = CoalitionFailure::kNone;

  bool operator==(const MobilityConfig&) const = default;
};

struct ScenarioConfig {
  double sim_duration_s = 1800.0;
  int n_vehicles = 40;
  double warmup_s = 0.0;
  std::vector<AppProfile> apps;
  NetworkConfig net;
  ComputeConfig compute;
  GameConfig game;
  MobilityConfig mobility;

  /// Returns nullptr when no profile carries `name`.
  const AppProfile* find_app(std::string_view name) const;

  bool operator==(const ScenarioConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { kNotFound, kParse, kValidation };

  ConfigError(Kind kind, std::string message,
              std::vector<std::string> violations = {});

  Kind kind() const { return kind_; }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  Kind kind_;
  std::vector<std::string> violations_;
};

/// The four-application, four-location reference scenario.
ScenarioConfig default_scenario();

/// Every violated invariant, one human-readable line each. Empty means valid.
std::vector<std::string> validate(const ScenarioConfig& config);

/// Reads a TOML file and merges it over default_scenario(). Throws ConfigError.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Same as load_scenario but from in-memory text; `source` labels errors.
ScenarioConfig parse_scenario(std::string_view toml_text,
                              std::string_view source = "<string>");

/// Serializes every field; parse_scenario(to_toml(c)) == c.
std::string to_toml(const ScenarioConfig& config);

}  // namespace vcoop

#endif  // VCOOP_CONFIG_HPP
