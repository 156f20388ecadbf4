#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netlock/calibrate.hpp"
#include "netlock/centrality.hpp"
#include "netlock/generators.hpp"

namespace netlock {

/// Network source of a scenario: one generator (with its parameters) or an
/// edge-list file, never both.
struct NetworkConfig {
  std::string generator;  // "lattice", "small-world", "random", "scale-free", "file"
  Index n = 300;
  int mean_degree = 4;
  double rewire_prob = 0.1;
  std::int64_t edge_count = -1;  // defaults to n * mean_degree / 2
  int attach_count = 1;
  RngSeed seed{1};
  std::string path;  // for generator == "file"

  Network build() const;
};

struct InitialConfig {
  std::string mode = "uniform";  // or "seeded"
  double x0 = 0.01;
  Index count = 1;     // seeded agents
  double x_seed = 0.5; // their infection probability
  RngSeed seed{0};

  HealthState build(Index n) const;
};

struct SweepConfig {
  std::string mode;  // "lambda", "density", "topology"
  std::vector<double> lambdas;
  std::vector<int> k_values;
  std::vector<std::string> topologies;
};

struct CalibrationConfig {
  std::string target_csv;
  double population_scale = 1.0;
  double death_fraction = 0.8;  // pre-processing multiplier on the target
  bool target_cumulative = true;
  Index days = 77;
  SearchOptions search;
};

struct PolicyConfig {
  double constant = 0.0;
  std::string csv;  // optional policy file "t,agent,l"
};

/// Whole scenario, parsed from the JSON config file.
struct ScenarioConfig {
  int schema_version = 1;
  NetworkConfig network;
  EpidemicParams epidemic{0.2, 0.8 / 18.0, 0.2 / 18.0};
  AgentEconomy economy;
  std::string economy_csv;  // optional per-agent overrides
  DiscountRate discount;
  InitialConfig initial;
  double lambda = 0.1;
  double horizon = 150.0;
  double dt = 0.25;
  SolverConfig solver;
  std::optional<SweepConfig> sweep;
  std::optional<CalibrationConfig> calibration;
  PolicyConfig policy;
  std::string out_dir = "out";
  int workers = 0;
};

ScenarioConfig load_scenario(const std::string& path);

/// Command-line overrides applied after parsing.
struct ScenarioOverrides {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<double> dt;
  std::optional<double> horizon;
};

void apply_overrides(ScenarioConfig& config, const ScenarioOverrides& overrides);

/// Assembles the planner problem of a scenario (network generation included).
PlannerProblem make_problem(const ScenarioConfig& config);
PlannerProblem make_problem(const ScenarioConfig& config, Network net);

/// Subcommand backends. Each writes its artifacts under config.out_dir and
/// returns the process exit code (0 success, 1 config error, 2 numerical
/// failure); exceptions escaping them are mapped by the CLI the same way.
int run_generate_network(const ScenarioConfig& config);
int run_simulate(const ScenarioConfig& config);
int run_optimize(const ScenarioConfig& config);
int run_sweep(const ScenarioConfig& config);
int run_report_centrality(const ScenarioConfig& config, const std::string& solution_dir);
int run_calibrate(const ScenarioConfig& config);

/// Time-averaged lockdown per agent from a policy CSV ("t,agent,l").
Vector load_policy_average(const std::string& path, Index n);

}  // namespace netlock
