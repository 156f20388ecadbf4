#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netlock/io.hpp"
#include "netlock/scenario.hpp"

namespace {

struct GlobalArgs {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<double> dt;
  std::optional<double> horizon;
};

netlock::ScenarioConfig load(const GlobalArgs& args) {
  netlock::ScenarioConfig config = netlock::load_scenario(args.config_path);
  netlock::ScenarioOverrides overrides;
  overrides.out_dir = args.out_dir;
  overrides.seed = args.seed;
  overrides.workers = args.workers;
  overrides.dt = args.dt;
  overrides.horizon = args.horizon;
  netlock::apply_overrides(config, overrides);
  return config;
}

void add_global_flags(CLI::App* cmd, GlobalArgs& args) {
  cmd->add_option("--config", args.config_path, "Scenario config file (JSON)")->required();
  cmd->add_option("--out", args.out_dir, "Output directory (overrides config)");
  cmd->add_option("--seed", args.seed, "Seed override for network and initial state");
  cmd->add_option("--workers", args.workers, "Worker threads for sweeps and calibration");
  cmd->add_option("--dt", args.dt, "Integration step override (days)");
  cmd->add_option("--horizon", args.horizon, "Horizon override (days)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Networked SIRD lockdown planning toolkit"};
  app.require_subcommand(1);

  GlobalArgs args;
  std::string solution_dir;

  CLI::App* generate = app.add_subcommand("generate-network", "Write an edge list plus stats");
  add_global_flags(generate, args);
  CLI::App* simulate = app.add_subcommand("simulate", "Integrate the epidemic under a fixed policy");
  add_global_flags(simulate, args);
  CLI::App* optimize = app.add_subcommand("optimize", "Solve the planner's problem for one lambda");
  add_global_flags(optimize, args);
  CLI::App* sweep = app.add_subcommand("sweep", "Solve a list of scenarios and merge the curves");
  add_global_flags(sweep, args);
  CLI::App* report = app.add_subcommand("report-centrality",
                                        "Correlate centrality measures with a solved policy");
  add_global_flags(report, args);
  report->add_option("--solution", solution_dir, "Directory containing policy.csv")->required();
  CLI::App* calibrate = app.add_subcommand("calibrate", "Estimate lambda from a death series");
  add_global_flags(calibrate, args);

  CLI11_PARSE(app, argc, argv);

  try {
    const netlock::ScenarioConfig config = load(args);
    if (generate->parsed()) return netlock::run_generate_network(config);
    if (simulate->parsed()) return netlock::run_simulate(config);
    if (optimize->parsed()) return netlock::run_optimize(config);
    if (sweep->parsed()) return netlock::run_sweep(config);
    if (report->parsed()) return netlock::run_report_centrality(config, solution_dir);
    if (calibrate->parsed()) return netlock::run_calibrate(config);
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const netlock::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const netlock::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
