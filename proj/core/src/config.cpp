#include "vcoop/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

namespace vcoop {
namespace {

constexpr double kUsageSumTolerance = 1e-9;

std::string describe(const toml::source_region& where) {
  std::ostringstream out;
  out << where.begin;
  return out.str();
}

[[noreturn]] void parse_fail(std::string_view source, const std::string& what) {
  throw ConfigError(ConfigError::Kind::kParse,
                    std::string(source) + ": " + what);
}

// Rejects keys the schema does not know about so typos fail loudly.
void check_keys(const toml::table& table, std::initializer_list<std::string_view> allowed,
                std::string_view section, std::string_view source) {
  const std::set<std::string_view> known(allowed);
  for (const auto& [key, node] : table) {
    if (!known.contains(key.str())) {
      parse_fail(source, "unknown key '" + std::string(key.str()) + "' in [" +
                             std::string(section) + "] at " +
                             describe(node.source()));
    }
  }
}

void read_number(const toml::table& table, std::string_view key, double& out,
                 std::string_view source) {
  const toml::node* node = table.get(key);
  if (node == nullptr) return;
  if (auto v = node->value_exact<double>()) {
    out = *v;
  } else if (auto i = node->value_exact<int64_t>()) {
    out = static_cast<double>(*i);
  } else {
    parse_fail(source, "'" + std::string(key) + "' must be a number at " +
                           describe(node->source()));
  }
}

void read_int(const toml::table& table, std::string_view key, int& out,
              std::string_view source) {
  const toml::node* node = table.get(key);
  if (node == nullptr) return;
  auto i = node->value_exact<int64_t>();
  if (!i) {
    parse_fail(source, "'" + std::string(key) + "' must be an integer at " +
                           describe(node->source()));
  }
  out = static_cast<int>(*i);
}

const toml::table* sub_table(const toml::table& root, std::string_view key,
                             std::string_view source) {
  const toml::node* node = root.get(key);
  if (node == nullptr) return nullptr;
  if (!node->is_table()) parse_fail(source, "'" + std::string(key) + "' must be a table");
  return node->as_table();
}

Matrix2 read_matrix(const toml::node& node, std::string_view key, std::string_view source) {
  const auto fail = [&] {
    parse_fail(source, "'" + std::string(key) + "' must be a 2x2 array of numbers at " +
                           describe(node.source()));
  };
  const toml::array* rows = node.as_array();
  if (rows == nullptr || rows->size() != 2) fail();
  Matrix2 m{};
  for (std::size_t r = 0; r < 2; ++r) {
    const toml::array* row = (*rows)[r].as_array();
    if (row == nullptr || row->size() != 2) fail();
    for (std::size_t c = 0; c < 2; ++c) {
      const toml::node& cell = (*row)[c];
      if (auto v = cell.value_exact<double>()) {
        m[r][c] = *v;
      } else if (auto i = cell.value_exact<int64_t>()) {
        m[r][c] = static_cast<double>(*i);
      } else {
        fail();
      }
    }
  }
  return m;
}

template <typename T>
std::vector<T> read_list(const toml::node& node, std::string_view key, std::string_view source) {
  const toml::array* arr = node.as_array();
  if (arr == nullptr) parse_fail(source, "'" + std::string(key) + "' must be an array");
  std::vector<T> out;
  for (const toml::node& item : *arr) {
    if constexpr (std::is_same_v<T, int>) {
      auto i = item.value_exact<int64_t>();
      if (!i) parse_fail(source, "'" + std::string(key) + "' entries must be integers");
      out.push_back(static_cast<int>(*i));
    } else {
      if (auto v = item.value_exact<double>()) {
        out.push_back(*v);
      } else if (auto i = item.value_exact<int64_t>()) {
        out.push_back(static_cast<double>(*i));
      } else {
        parse_fail(source, "'" + std::string(key) + "' entries must be numbers");
      }
    }
  }
  return out;
}

AppProfile read_app(const toml::table& t, const ScenarioConfig& defaults,
                    std::string_view source) {
  check_keys(t,
             {"name", "usage_pct", "interarrival_mean_s", "delay_tolerance_s",
              "active_period_s", "idle_period_s", "upload_kb", "download_kb",
              "task_length_mean_gi", "vm_utilization_pct"},
             "apps", source);
  auto name = t["name"].value<std::string>();
  if (!name) parse_fail(source, "every [[apps]] entry needs a string 'name'");

  // Entries naming a default application inherit its fields; new applications
  // must spell out every field.
  AppProfile app;
  const AppProfile* base = defaults.find_app(*name);
  if (base != nullptr) {
    app = *base;
  } else {
    for (std::string_view field :
         {"usage_pct", "interarrival_mean_s", "delay_tolerance_s", "active_period_s",
          "idle_period_s", "upload_kb", "download_kb", "task_length_mean_gi",
          "vm_utilization_pct"}) {
      if (!t.contains(field)) {
        parse_fail(source, "application '" + *name + "' is missing '" +
                               std::string(field) + "'");
      }
    }
  }
  app.name = *name;
  read_number(t, "usage_pct", app.usage_pct, source);
  read_number(t, "interarrival_mean_s", app.interarrival_mean_s, source);
  read_number(t, "delay_tolerance_s", app.delay_tolerance_s, source);
  read_number(t, "active_period_s", app.active_period_s, source);
  read_number(t, "idle_period_s", app.idle_period_s, source);
  read_number(t, "upload_kb", app.upload_kb, source);
  read_number(t, "download_kb", app.download_kb, source);
  read_number(t, "task_length_mean_gi", app.task_length_mean_gi, source);
  read_number(t, "vm_utilization_pct", app.vm_utilization_pct, source);
  return app;
}

ScenarioConfig merge(const toml::table& root, std::string_view source) {
  ScenarioConfig c = default_scenario();
  check_keys(root,
             {"sim_duration_s", "n_vehicles", "warmup_s", "network", "compute", "game",
              "mobility", "apps"},
             "root", source);
  read_number(root, "sim_duration_s", c.sim_duration_s, source);
  read_int(root, "n_vehicles", c.n_vehicles, source);
  read_number(root, "warmup_s", c.warmup_s, source);

  if (const toml::table* t = sub_table(root, "network", source)) {
    check_keys(*t, {"v2v_rate_mbps", "v2i_rate_mbps", "wan_rate_mbps"}, "network", source);
    read_number(*t, "v2v_rate_mbps", c.net.v2v_rate_mbps, source);
    read_number(*t, "v2i_rate_mbps", c.net.v2i_rate_mbps, source);
    read_number(*t, "wan_rate_mbps", c.net.wan_rate_mbps, source);
  }
  if (const toml::table* t = sub_table(root, "compute", source)) {
    check_keys(*t,
               {"vehicle_gips", "edge_gips", "cloud_gips", "edge_utilization_threshold_pct",
                "max_v2v_connections"},
               "compute", source);
    read_number(*t, "vehicle_gips", c.compute.vehicle_gips, source);
    read_number(*t, "edge_gips", c.compute.edge_gips, source);
    read_number(*t, "cloud_gips", c.compute.cloud_gips, source);
    read_number(*t, "edge_utilization_threshold_pct",
                c.compute.edge_utilization_threshold_pct, source);
    read_int(*t, "max_v2v_connections", c.compute.max_v2v_connections, source);
  }
  if (const toml::table* t = sub_table(root, "game", source)) {
    check_keys(*t, {"ma", "mtheta", "alpha", "initial_beta_give", "candidate_utility_min"},
               "game", source);
    if (const toml::node* n = t->get("ma")) c.game.ma = read_matrix(*n, "ma", source);
    if (const toml::node* n = t->get("mtheta")) {
      c.game.mtheta = read_matrix(*n, "mtheta", source);
    }
    read_number(*t, "alpha", c.game.alpha, source);
    read_number(*t, "initial_beta_give", c.game.initial_beta_give, source);
    read_number(*t, "candidate_utility_min", c.game.candidate_utility_min, source);
  }
  if (const toml::table* t = sub_table(root, "mobility", source)) {
    check_keys(*t, {"location_counts", "dwell_mean_s", "coalition_failure"}, "mobility",
               source);
    if (const toml::node* n = t->get("coalition_failure")) {
      const auto mode = n->value<std::string>();
      if (mode == "none") {
        c.mobility.coalition_failure = CoalitionFailure::kNone;
      } else if (mode == "owner") {
        c.mobility.coalition_failure = CoalitionFailure::kOwner;
      } else if (mode == "any_member") {
        c.mobility.coalition_failure = CoalitionFailure::kAnyMember;
      } else {
        parse_fail(source, "'coalition_failure' must be \"none\", \"owner\" or \"any_member\"");
      }
    }
    if (const toml::node* n = t->get("location_counts")) {
      c.mobility.location_counts = read_list<int>(*n, "location_counts", source);
    }
    if (const toml::node* n = t->get("dwell_mean_s")) {
      c.mobility.dwell_mean_s = read_list<double>(*n, "dwell_mean_s", source);
    }
  }
  if (const toml::node* n = root.get("apps")) {
    const toml::array* arr = n->as_array();
    if (arr == nullptr) parse_fail(source, "'apps' must be an array of tables");
    const ScenarioConfig defaults = default_scenario();
    c.apps.clear();
    for (const toml::node& item : *arr) {
      if (!item.is_table()) parse_fail(source, "'apps' must be an array of tables");
      c.apps.push_back(read_app(*item.as_table(), defaults, source));
    }
  }
  return c;
}

toml::array matrix_to_toml(const Matrix2& m) {
  toml::array rows;
  for (const auto& row : m) rows.push_back(toml::array{row[0], row[1]});
  return rows;
}

}  // namespace

ConfigError::ConfigError(Kind kind, std::string message, std::vector<std::string> violations)
    : std::runtime_error(std::move(message)), kind_(kind), violations_(std::move(violations)) {}

std::string_view to_string(CoalitionFailure mode) {
  switch (mode) {
    case CoalitionFailure::kNone:
      return "none";
    case CoalitionFailure::kOwner:
      return "owner";
    case CoalitionFailure::kAnyMember:
      return "any_member";
  }
  return "unknown";
}

const AppProfile* ScenarioConfig::find_app(std::string_view name) const {
  for (const AppProfile& app : apps) {
    if (app.name == name) return &app;
  }
  return nullptr;
}

ScenarioConfig default_scenario() {
  ScenarioConfig c;
  c.sim_duration_s = 1800.0;
  c.n_vehicles = 40;
  c.warmup_s = 0.0;
  //            name                  usage  arrival  d_limit  active  idle    up      down   GI    VM%
  c.apps = {
      {"Augmented Reality", 0.30, 1.0, 5.0, 40.0, 5.0, 1500.0, 25.0, 9.0, 6.0},
      {"Health App", 0.20, 1.0, 8.0, 45.0, 90.0, 1250.0, 20.0, 3.0, 2.0},
      {"Compute Intensive", 0.20, 10.0, 8.0, 60.0, 120.0, 2500.0, 200.0, 45.0, 30.0},
      {"Infotainment App", 0.30, 5.0, 1.0, 30.0, 45.0, 2500.0, 200.0, 45.0, 30.0},
  };
  c.net = NetworkConfig{};
  c.compute = ComputeConfig{};
  c.game = GameConfig{};
  c.mobility = MobilityConfig{};
  return c;
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> v;
  const auto positive = [&](double x, const std::string& what) {
    if (!(x > 0.0) || !std::isfinite(x)) v.push_back(what + " must be > 0");
  };

  if (!std::isfinite(c.sim_duration_s) || !(c.warmup_s >= 0.0) ||
      !(c.warmup_s <= c.sim_duration_s)) {
    v.push_back("sim_duration_s must be finite and warmup_s must lie in [0, sim_duration_s]");
  }
  if (c.n_vehicles < 1) v.push_back("n_vehicles must be >= 1");

  if (c.apps.empty()) v.push_back("apps must contain at least one profile");
  double usage_sum = 0.0;
  std::set<std::string> names;
  for (const AppProfile& a : c.apps) {
    const std::string p = "apps['" + a.name + "'].";
    if (a.name.empty()) v.push_back("apps entries need a non-empty name");
    if (!names.insert(a.name).second) v.push_back("duplicate application name '" + a.name + "'");
    if (!(a.usage_pct > 0.0 && a.usage_pct <= 1.0)) {
      v.push_back(p + "usage_pct must be in (0,1]");
    }
    positive(a.interarrival_mean_s, p + "interarrival_mean_s");
    positive(a.delay_tolerance_s, p + "delay_tolerance_s");
    positive(a.active_period_s, p + "active_period_s");
    positive(a.idle_period_s, p + "idle_period_s");
    positive(a.upload_kb, p + "upload_kb");
    positive(a.download_kb, p + "download_kb");
    positive(a.task_length_mean_gi, p + "task_length_mean_gi");
    if (!(a.vm_utilization_pct > 0.0 && a.vm_utilization_pct <= 100.0)) {
      v.push_back(p + "vm_utilization_pct must be in (0,100]");
    }
    usage_sum += a.usage_pct;
  }
  if (!c.apps.empty() && std::abs(usage_sum - 1.0) > kUsageSumTolerance) {
    std::ostringstream msg;
    msg << "usage_pct sum must be 1 (got " << usage_sum << ")";
    v.push_back(msg.str());
  }

  positive(c.net.v2v_rate_mbps, "network.v2v_rate_mbps");
  positive(c.net.v2i_rate_mbps, "network.v2i_rate_mbps");
  positive(c.net.wan_rate_mbps, "network.wan_rate_mbps");

  positive(c.compute.vehicle_gips, "compute.vehicle_gips");
  positive(c.compute.edge_gips, "compute.edge_gips");
  positive(c.compute.cloud_gips, "compute.cloud_gips");
  if (!(c.compute.edge_utilization_threshold_pct > 0.0 &&
        c.compute.edge_utilization_threshold_pct <= 100.0)) {
    v.push_back("compute.edge_utilization_threshold_pct must be in (0,100]");
  }
  if (c.compute.max_v2v_connections < 1) v.push_back("compute.max_v2v_connections must be > 0");

  if (!(c.game.alpha > 0.0 && c.game.alpha < 1.0)) {
    v.push_back("alpha must be in open interval (0,1)");
  }
  if (!(c.game.initial_beta_give >= 0.0 && c.game.initial_beta_give <= 1.0)) {
    v.push_back("initial_beta_give must be in [0,1]");
  }
  if (!std::isfinite(c.game.candidate_utility_min)) {
    v.push_back("candidate_utility_min must be finite");
  }
  const auto finite_matrix = [](const Matrix2& m) {
    for (const auto& row : m) {
      if (!std::isfinite(row[0]) || !std::isfinite(row[1])) return false;
    }
    return true;
  };
  if (!finite_matrix(c.game.ma)) v.push_back("ma entries must be finite");
  if (!finite_matrix(c.game.mtheta)) v.push_back("mtheta entries must be finite");

  const MobilityConfig& mob = c.mobility;
  if (mob.location_counts.size() != mob.dwell_mean_s.size()) {
    v.push_back("mobility.location_counts and mobility.dwell_mean_s must have equal length");
  }
  int total_locations = 0;
  for (int n : mob.location_counts) {
    if (n < 0) v.push_back("mobility.location_counts entries must be >= 0");
    total_locations += n;
  }
  if (total_locations < 2) v.push_back("mobility needs at least 2 locations in total");
  for (double d : mob.dwell_mean_s) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      v.push_back("mobility.dwell_mean_s entries must be > 0");
      break;
    }
  }
  return v;
}

ScenarioConfig parse_scenario(std::string_view toml_text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ": " << e.description() << " at " << e.source().begin;
    throw ConfigError(ConfigError::Kind::kParse, msg.str());
  }
  ScenarioConfig c = merge(root, source);
  std::vector<std::string> violations = validate(c);
  if (!violations.empty()) {
    std::string msg = std::string(source) + ": invalid scenario:";
    for (const std::string& s : violations) msg += "\n  - " + s;
    throw ConfigError(ConfigError::Kind::kValidation, msg, std::move(violations));
  }
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(ConfigError::Kind::kNotFound,
                      "cannot open scenario file '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.string());
}

std::string to_toml(const ScenarioConfig& c) {
  toml::table root;
  root.insert("sim_duration_s", c.sim_duration_s);
  root.insert("n_vehicles", c.n_vehicles);
  root.insert("warmup_s", c.warmup_s);
  root.insert("network", toml::table{{"v2v_rate_mbps", c.net.v2v_rate_mbps},
                                     {"v2i_rate_mbps", c.net.v2i_rate_mbps},
                                     {"wan_rate_mbps", c.net.wan_rate_mbps}});
  root.insert("compute",
              toml::table{{"vehicle_gips", c.compute.vehicle_gips},
                          {"edge_gips", c.compute.edge_gips},
                          {"cloud_gips", c.compute.cloud_gips},
                          {"edge_utilization_threshold_pct",
                           c.compute.edge_utilization_threshold_pct},
                          {"max_v2v_connections", c.compute.max_v2v_connections}});
  root.insert("game", toml::table{{"ma", matrix_to_toml(c.game.ma)},
                                  {"mtheta", matrix_to_toml(c.game.mtheta)},
                                  {"alpha", c.game.alpha},
                                  {"initial_beta_give", c.game.initial_beta_give},
                                  {"candidate_utility_min", c.game.candidate_utility_min}});
  toml::array counts;
  for (int n : c.mobility.location_counts) counts.push_back(n);
  toml::array dwell;
  for (double d : c.mobility.dwell_mean_s) dwell.push_back(d);
  root.insert("mobility",
              toml::table{{"location_counts", counts},
                          {"dwell_mean_s", dwell},
                          {"coalition_failure", std::string(to_string(c.mobility.coalition_failure))}});

  toml::array apps;
  for (const AppProfile& a : c.apps) {
    apps.push_back(toml::table{{"name", a.name},
                               {"usage_pct", a.usage_pct},
                               {"interarrival_mean_s", a.interarrival_mean_s},
                               {"delay_tolerance_s", a.delay_tolerance_s},
                               {"active_period_s", a.active_period_s},
                               {"idle_period_s", a.idle_period_s},
                               {"upload_kb", a.upload_kb},
                               {"download_kb", a.download_kb},
                               {"task_length_mean_gi", a.task_length_mean_gi},
                               {"vm_utilization_pct", a.vm_utilization_pct}});
  }
  root.insert("apps", apps);

  std::ostringstream out;
  out << root << '\n';
  return out.str();
}

}  // namespace vcoop
