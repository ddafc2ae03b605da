#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "vcoop/config.hpp"
#include "vcoop/metrics.hpp"
#include "vcoop/simulation.hpp"
#include "vcoop/sweep.hpp"

namespace vcoop::cli {
namespace {

std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env != nullptr && *env != '\0' ? env : "out";
}

ScenarioConfig scenario_from(const std::string& config_path) {
  return config_path.empty() ? default_scenario() : load_scenario(config_path);
}

std::string summary_line(const MetricsReport& r) {
  std::ostringstream line;
  line << std::fixed << std::setprecision(4) << to_string(r.strategy)
       << " vehicles=" << r.n_vehicles << " rep=" << r.rep << " tasks=" << r.total_tasks
       << " failed=" << r.failed_pct() << " offload=" << r.offload_pct()
       << " local=" << r.executed_local << " v2v=" << r.executed_v2v
       << " edge=" << r.executed_edge << " cloud=" << r.executed_cloud;
  return line.str();
}

void print_table(const std::vector<MetricsReport>& reports, std::ostream& out) {
  const std::vector<AggregateRow> rows = finalize(reports);
  std::map<std::pair<std::string, int>, std::map<std::string, const AggregateRow*>> cells;
  for (const AggregateRow& row : rows) {
    cells[{std::string(to_string(row.strategy)), row.n_vehicles}][row.metric] = &row;
  }
  out << std::left << std::setw(9) << "strategy" << std::setw(10) << "vehicles"
      << std::setw(24) << "failed_pct" << std::setw(24) << "offload_pct"
      << "offloaded_length_gi\n";
  for (const auto& [key, metrics] : cells) {
    const auto cell = [&](const char* name) {
      const AggregateRow* r = metrics.at(name);
      std::ostringstream s;
      s << std::setprecision(4) << r->mean << " +/- " << std::setprecision(2) << r->std;
      return s.str();
    };
    out << std::left << std::setw(9) << key.first << std::setw(10) << key.second
        << std::setw(24) << cell("failed_pct") << std::setw(24) << cell("offload_pct")
        << cell("offloaded_length_gi") << '\n';
  }
}

CLI::Validator strategy_validator() {
  return CLI::Validator(
      [](std::string& value) -> std::string {
        return parse_strategy(value) ? std::string() : "unknown strategy '" + value + "'";
      },
      "{ncs,airs,pirs}", "strategy");
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four-tier vehicular task-offloading simulator (NCS / AIRS / PIRS)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = default_out_dir();
  std::uint64_t seed = 1;
  int reps = 10;

  CLI::App* run_cmd = app.add_subcommand("run", "Run one strategy at one vehicle count");
  std::string strategy_name = "pirs";
  std::optional<int> vehicles;
  run_cmd->add_option("--config", config_path, "Scenario TOML file (defaults if omitted)");
  run_cmd->add_option("--strategy", strategy_name, "ncs, airs or pirs")
      ->check(strategy_validator());
  run_cmd->add_option("--vehicles", vehicles, "Number of vehicles")->check(CLI::PositiveNumber);
  run_cmd->add_option("--reps", reps, "Repetitions")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", seed, "Master seed");
  run_cmd->add_option("--out", out_dir, "Output directory")->envname(kOutDirEnv);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep vehicle counts across strategies");
  std::string vehicles_spec = "20:100:20";
  std::string strategies_spec = "ncs,airs,pirs";
  int parallel = 1;
  sweep_cmd->add_option("--config", config_path, "Scenario TOML file (defaults if omitted)");
  sweep_cmd->add_option("--vehicles", vehicles_spec, "LO:HI:STEP or comma list");
  sweep_cmd->add_option("--strategies", strategies_spec, "Comma-separated strategies");
  sweep_cmd->add_option("--reps", reps, "Repetitions per cell")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", seed, "Master seed");
  sweep_cmd->add_option("--out", out_dir, "Output directory")->envname(kOutDirEnv);
  sweep_cmd->add_option("--parallel", parallel, "Concurrent runs")->check(CLI::PositiveNumber);

  CLI::App* config_cmd = app.add_subcommand("config", "Print the default scenario as TOML");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (config_cmd->parsed()) {
      out << to_toml(default_scenario());
      return 0;
    }

    const ScenarioConfig base = scenario_from(config_path);
    SweepPlan plan;
    plan.reps = reps;
    plan.master_seed = seed;
    if (run_cmd->parsed()) {
      plan.strategies = {*parse_strategy(strategy_name)};
      plan.vehicle_counts = {vehicles.value_or(base.n_vehicles)};
    } else {
      plan.strategies = parse_strategies(strategies_spec);
      plan.vehicle_counts = parse_vehicle_counts(vehicles_spec);
    }

    const auto started = std::chrono::steady_clock::now();
    const std::vector<MetricsReport> reports =
        run_sweep(base, plan, run_cmd->parsed() ? 1 : parallel, [&](const MetricsReport& r) {
          if (run_cmd->parsed()) out << summary_line(r) << '\n';
        });
    write_csv(reports, out_dir);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (sweep_cmd->parsed()) print_table(reports, out);
    out << "wrote " << reports.size() << " runs to " << out_dir << " in " << std::fixed
        << std::setprecision(1) << seconds << " s\n";
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n' << app.help();
  }
  return 1;
}

}  // namespace vcoop::cli
