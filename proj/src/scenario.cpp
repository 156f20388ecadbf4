#include "netlock/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "netlock/detail/dynamics.hpp"
#include "netlock/io.hpp"
#include "netlock/numerics.hpp"
#include "netlock/stats.hpp"

namespace netlock {

using nlohmann::json;

namespace {

const json* find(const json& node, const char* key) {
  const auto it = node.find(key);
  return it == node.end() ? nullptr : &*it;
}

template <typename T>
void read_into(const json& node, const char* key, T& target) {
  if (const json* v = find(node, key)) {
    try {
      target = v->get<T>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("config: bad value for field '") + key + "'");
    }
  }
}

void parse_network(const json& node, NetworkConfig& net) {
  read_into(node, "generator", net.generator);
  read_into(node, "n", net.n);
  read_into(node, "mean_degree", net.mean_degree);
  read_into(node, "rewire_prob", net.rewire_prob);
  read_into(node, "edge_count", net.edge_count);
  read_into(node, "attach_count", net.attach_count);
  read_into(node, "seed", net.seed.value);
  read_into(node, "path", net.path);
  if (find(node, "path") && !find(node, "generator")) net.generator = "file";
  if (net.generator.empty())
    throw ConfigError("config: network.generator is required");
  if (net.generator == "file" && net.path.empty())
    throw ConfigError("config: network.path is required for the file source");
  if (net.generator != "file" && !net.path.empty())
    throw ConfigError("config: network must have exactly one source (generator or path)");
}

void parse_solver(const json& node, SolverConfig& s) {
  read_into(node, "tol_obj", s.tol_obj);
  read_into(node, "tol_violation", s.tol_violation);
  read_into(node, "tol_kkt", s.tol_kkt);
  read_into(node, "max_outer", s.max_outer);
  read_into(node, "max_inner", s.max_inner);
  read_into(node, "rho0", s.rho0);
  read_into(node, "rho_growth", s.rho_growth);
  read_into(node, "rho_max", s.rho_max);
  read_into(node, "damping", s.damping);
  read_into(node, "starts", s.starts);
  read_into(node, "step0", s.step0);
}

std::string scenario_label(const SweepConfig& sweep, std::size_t index) {
  if (sweep.mode == "lambda") return "lambda=" + format_double(sweep.lambdas[index]);
  if (sweep.mode == "density") return "k=" + std::to_string(sweep.k_values[index]);
  return "topology=" + sweep.topologies[index];
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory: " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

json summary_json(const Solution& sol) {
  json j;
  j["objective"] = sol.objective;
  j["loss_pct"] = sol.loss_pct;
  j["max_violation"] = sol.max_violation;
  j["kkt"] = {{"stationarity", sol.kkt.stationarity},
              {"complementary_slackness", sol.kkt.complementary_slackness},
              {"feasibility", sol.kkt.feasibility}};
  j["iterations"] = sol.iterations;
  j["converged"] = sol.converged;
  j["mean_lockdown"] = sol.policy.values.mean();
  j["final_mean_deaths"] = sol.trajectory.states.back().d.mean();
  return j;
}

std::string policy_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,agent,l\n";
  for (Index m = 0; m < traj.grid_points(); ++m)
    for (Index i = 0; i < traj.n(); ++i)
      out << format_double(traj.times(m)) << ',' << i << ','
          << format_double(traj.policy(m, i)) << '\n';
  return out.str();
}

}  // namespace

Network NetworkConfig::build() const {
  if (generator == "lattice") return generate_ring_lattice(n, mean_degree);
  if (generator == "small-world") return generate_small_world(n, mean_degree, rewire_prob, seed);
  if (generator == "random") {
    const std::int64_t m = edge_count >= 0 ? edge_count
                                           : static_cast<std::int64_t>(n) * mean_degree / 2;
    return generate_random(n, m, seed);
  }
  if (generator == "scale-free") return generate_scale_free(n, attach_count, seed);
  if (generator == "file") return load_edge_list(path, n > 0 ? n : -1);
  throw ConfigError("config: unknown network.generator '" + generator + "'");
}

HealthState InitialConfig::build(Index n) const {
  if (mode == "uniform") return uniform_initial_state(n, x0);
  if (mode != "seeded") throw ConfigError("config: unknown initial.mode '" + mode + "'");
  if (count < 0 || count > n)
    throw ConfigError("config: initial.count must lie in [0, n]");
  if (!(x_seed >= 0.0 && x_seed <= 1.0))
    throw ConfigError("config: initial.x must lie in [0, 1]");
  HealthState h = uniform_initial_state(n, 0.0);
  Rng rng(seed);
  std::set<Index> chosen;
  while (static_cast<Index>(chosen.size()) < count)
    chosen.insert(static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n))));
  for (Index i : chosen) {
    h.x(i) = x_seed;
    h.s(i) = 1.0 - x_seed;
  }
  return h;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }

  ScenarioConfig c;
  read_into(root, "schema_version", c.schema_version);
  if (c.schema_version != 1)
    throw ConfigError("config: unsupported schema_version " + std::to_string(c.schema_version));

  if (const json* net = find(root, "network")) parse_network(*net, c.network);
  else throw ConfigError("config: missing network section");

  if (const json* epi = find(root, "epidemic")) {
    if (const json* st = find(*epi, "state_inputs")) {
      StateInputs inputs{3.6, 0.2, 1.2, 0.4, 1.0 / 3.0, 1.0};
      read_into(*st, "r0", inputs.r0_estimate);
      read_into(*st, "death_per_case", inputs.death_per_case);
      read_into(*st, "price", inputs.price);
      read_into(*st, "wage", inputs.wage);
      read_into(*st, "alpha", inputs.alpha);
      read_into(*st, "beds", inputs.beds);
      const auto [epi_params, econ] = params_from_state_inputs(inputs);
      c.epidemic = epi_params;
      c.economy = econ;
    } else {
      read_into(*epi, "beta", c.epidemic.beta);
      read_into(*epi, "gamma", c.epidemic.gamma);
      read_into(*epi, "kappa", c.epidemic.kappa);
    }
  }

  if (const json* econ = find(root, "economy")) {
    read_into(*econ, "p", c.economy.p);
    read_into(*econ, "w", c.economy.w);
    read_into(*econ, "k", c.economy.k);
    read_into(*econ, "alpha", c.economy.alpha);
    read_into(*econ, "phi", c.economy.phi);
    read_into(*econ, "psi", c.economy.psi);
    read_into(*econ, "per_agent_csv", c.economy_csv);
  }

  if (const json* disc = find(root, "discount")) read_into(*disc, "delta", c.discount.delta);

  if (const json* init = find(root, "initial")) {
    read_into(*init, "mode", c.initial.mode);
    read_into(*init, "x0", c.initial.x0);
    read_into(*init, "count", c.initial.count);
    read_into(*init, "x", c.initial.x_seed);
    read_into(*init, "seed", c.initial.seed.value);
  }

  if (const json* planner = find(root, "planner")) {
    read_into(*planner, "lambda", c.lambda);
    read_into(*planner, "horizon", c.horizon);
    read_into(*planner, "dt", c.dt);
  }

  if (const json* solver = find(root, "solver")) parse_solver(*solver, c.solver);

  if (const json* sweep = find(root, "sweep")) {
    SweepConfig s;
    read_into(*sweep, "mode", s.mode);
    read_into(*sweep, "values", s.lambdas);
    read_into(*sweep, "k_values", s.k_values);
    read_into(*sweep, "topologies", s.topologies);
    if (s.mode.empty()) throw ConfigError("config: sweep.mode is required");
    c.sweep = std::move(s);
  }

  if (const json* cal = find(root, "calibration")) {
    CalibrationConfig k;
    read_into(*cal, "target_csv", k.target_csv);
    read_into(*cal, "population_scale", k.population_scale);
    read_into(*cal, "death_fraction", k.death_fraction);
    read_into(*cal, "target_cumulative", k.target_cumulative);
    read_into(*cal, "days", k.days);
    read_into(*cal, "lambda_min", k.search.lambda_min);
    read_into(*cal, "lambda_max", k.search.lambda_max);
    read_into(*cal, "grid_points", k.search.grid_points);
    read_into(*cal, "golden_tol", k.search.golden_tol);
    read_into(*cal, "incident", k.search.incident);
    c.calibration = std::move(k);
  }

  if (const json* pol = find(root, "policy")) {
    read_into(*pol, "constant", c.policy.constant);
    read_into(*pol, "csv", c.policy.csv);
  }

  if (const json* out = find(root, "outputs")) read_into(*out, "dir", c.out_dir);
  read_into(root, "workers", c.workers);
  return c;
}

void apply_overrides(ScenarioConfig& config, const ScenarioOverrides& overrides) {
  if (overrides.out_dir) config.out_dir = *overrides.out_dir;
  if (overrides.seed) {
    config.network.seed.value = *overrides.seed;
    config.initial.seed.value = *overrides.seed;
  }
  if (overrides.workers) config.workers = *overrides.workers;
  if (overrides.dt) config.dt = *overrides.dt;
  if (overrides.horizon) config.horizon = *overrides.horizon;
}

namespace {

Economy build_economy(const ScenarioConfig& config, Index n) {
  Economy econ = Economy::homogeneous(n, config.economy);
  if (!config.economy_csv.empty()) {
    const auto rows = read_csv(config.economy_csv, 7);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == 0 && rows[r][0] == "agent") continue;  // optional header
      const int line = static_cast<int>(r + 1);
      const Index agent =
          static_cast<Index>(parse_double(rows[r][0], config.economy_csv, line));
      if (agent < 0 || agent >= n)
        throw ConfigError(config.economy_csv + ":" + std::to_string(line) +
                          ": agent index out of range");
      econ.p(agent) = parse_double(rows[r][1], config.economy_csv, line);
      econ.w(agent) = parse_double(rows[r][2], config.economy_csv, line);
      econ.k(agent) = parse_double(rows[r][3], config.economy_csv, line);
      econ.alpha(agent) = parse_double(rows[r][4], config.economy_csv, line);
      econ.phi(agent) = parse_double(rows[r][5], config.economy_csv, line);
      econ.psi(agent) = parse_double(rows[r][6], config.economy_csv, line);
    }
  }
  econ.validate();
  return econ;
}

}  // namespace

PlannerProblem make_problem(const ScenarioConfig& config, Network net) {
  const Index n = net.n();
  PlannerProblem problem{std::move(net),
                         config.epidemic,
                         build_economy(config, n),
                         config.discount,
                         config.lambda,
                         config.initial.build(n),
                         config.horizon,
                         config.dt};
  problem.validate();
  return problem;
}

PlannerProblem make_problem(const ScenarioConfig& config) {
  return make_problem(config, config.network.build());
}

int run_generate_network(const ScenarioConfig& config) {
  const Network net = config.network.build();
  ensure_dir(config.out_dir);
  save_edge_list(net, join(config.out_dir, "network.edges"));

  const Vector degrees = degree_centrality(net).values;
  json stats;
  stats["n"] = net.n();
  stats["edge_count"] = net.edge_count();
  stats["density"] = density(net);
  stats["degree_min"] = degrees.minCoeff();
  stats["degree_mean"] = degrees.mean();
  stats["degree_max"] = degrees.maxCoeff();
  write_text_file(join(config.out_dir, "network_stats.json"), stats.dump(2) + "\n");
  return 0;
}

int run_simulate(const ScenarioConfig& config) {
  const Network net = config.network.build();
  const Index grid = detail::step_count(config.horizon, config.dt) + 1;
  Matrix policy;
  if (!config.policy.csv.empty()) {
    const auto rows = read_csv(config.policy.csv, 3);
    policy = Matrix::Zero(grid, net.n());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == 0 && rows[r][0] == "t") continue;
      const int line = static_cast<int>(r + 1);
      const double t = parse_double(rows[r][0], config.policy.csv, line);
      const Index agent =
          static_cast<Index>(parse_double(rows[r][1], config.policy.csv, line));
      const Index m = static_cast<Index>(std::llround(t / config.dt));
      if (m < 0 || m >= grid || agent < 0 || agent >= net.n())
        throw ConfigError(config.policy.csv + ":" + std::to_string(line) +
                          ": entry off the scenario grid");
      policy(m, agent) = parse_double(rows[r][2], config.policy.csv, line);
    }
  } else {
    policy = Matrix::Constant(grid, net.n(), config.policy.constant);
  }

  const HealthState initial = config.initial.build(net.n());
  const Trajectory traj =
      integrate(net, config.epidemic, policy, initial, config.horizon, config.dt);
  ensure_dir(config.out_dir);
  write_text_file(join(config.out_dir, "trajectory.csv"), trajectory_csv(traj));
  write_text_file(join(config.out_dir, "aggregate.csv"), aggregate_csv(traj));
  return 0;
}

int run_optimize(const ScenarioConfig& config) {
  PlannerProblem problem = make_problem(config);
  SolverConfig solver = config.solver;
  const Solution sol = solve_optimal_lockdown(problem, solver);

  ensure_dir(config.out_dir);
  write_text_file(join(config.out_dir, "policy.csv"), policy_csv(sol.trajectory));
  write_text_file(join(config.out_dir, "trajectory.csv"), trajectory_csv(sol.trajectory));
  write_text_file(join(config.out_dir, "aggregate.csv"), aggregate_csv(sol.trajectory));
  write_text_file(join(config.out_dir, "summary.json"), summary_json(sol).dump(2) + "\n");
  return sol.converged ? 0 : 2;
}

int run_sweep(const ScenarioConfig& config) {
  if (!config.sweep) throw ConfigError("sweep: config has no sweep section");
  const SweepConfig& sweep = *config.sweep;

  std::size_t count = 0;
  if (sweep.mode == "lambda") count = sweep.lambdas.size();
  else if (sweep.mode == "density") count = sweep.k_values.size();
  else if (sweep.mode == "topology") count = sweep.topologies.size();
  else throw ConfigError("sweep: unknown mode '" + sweep.mode + "'");
  if (count < 2) throw ConfigError("sweep: needs at least 2 scenarios, got " +
                                   std::to_string(count));

  struct Row {
    std::string label;
    Solution sol;
  };
  std::vector<Row> rows(count);

  parallel_for(static_cast<Index>(count), {config.workers}, [&](Index idx) {
    const std::size_t i = static_cast<std::size_t>(idx);
    ScenarioConfig local = config;
    if (sweep.mode == "lambda") {
      local.lambda = sweep.lambdas[i];
    } else if (sweep.mode == "density") {
      local.network.mean_degree = sweep.k_values[i];
      local.network.edge_count = static_cast<std::int64_t>(local.network.n) * sweep.k_values[i] / 2;
    } else {
      local.network.generator = sweep.topologies[i];
    }
    PlannerProblem problem = make_problem(local);
    rows[i] = {scenario_label(sweep, i), solve_optimal_lockdown(problem, local.solver)};
  });

  std::ostringstream out;
  out << "scenario,t,mean_x,mean_l,mean_d,loss_pct\n";
  for (const Row& row : rows) {
    const Trajectory& traj = row.sol.trajectory;
    for (Index m = 0; m < traj.grid_points(); ++m) {
      const HealthState& h = traj.states[static_cast<std::size_t>(m)];
      out << row.label << ',' << format_double(traj.times(m)) << ','
          << format_double(h.x.mean()) << ',' << format_double(traj.policy.row(m).mean()) << ','
          << format_double(h.d.mean()) << ',' << format_double(row.sol.loss_pct) << '\n';
    }
  }
  ensure_dir(config.out_dir);
  write_text_file(join(config.out_dir, "sweep.csv"), out.str());

  bool all_ok = true;
  for (const Row& row : rows) all_ok = all_ok && row.sol.max_violation <= config.solver.tol_violation;
  return all_ok ? 0 : 2;
}

Vector load_policy_average(const std::string& path, Index n) {
  const auto rows = read_csv(path, 3);
  Vector sum = Vector::Zero(n);
  Vector count = Vector::Zero(n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r == 0 && rows[r][0] == "t") continue;
    const int line = static_cast<int>(r + 1);
    const Index agent = static_cast<Index>(parse_double(rows[r][1], path, line));
    if (agent < 0 || agent >= n)
      throw ConfigError(path + ":" + std::to_string(line) + ": agent index out of range");
    sum(agent) += parse_double(rows[r][2], path, line);
    count(agent) += 1.0;
  }
  for (Index i = 0; i < n; ++i) {
    if (count(i) == 0.0)
      throw ConfigError(path + ": no policy rows for agent " + std::to_string(i));
    sum(i) /= count(i);
  }
  return sum;
}

int run_report_centrality(const ScenarioConfig& config, const std::string& solution_dir) {
  const Network net = config.network.build();
  const Vector avg = load_policy_average(join(solution_dir, "policy.csv"), net.n());

  std::ostringstream out;
  out << "metric,pearson_r,p_value,note\n";
  bool degenerate = false;
  for (CentralityKind kind : {CentralityKind::degree, CentralityKind::eigenvector,
                              CentralityKind::betweenness, CentralityKind::closeness}) {
    const CentralityVector c = compute_centrality(net, kind);
    try {
      const Correlation corr = pearson_correlation(avg, c.values);
      out << to_string(kind) << ',' << format_double(corr.r) << ','
          << format_double(corr.p_value) << ",\n";
    } catch (const NumericalError&) {
      degenerate = true;
      out << to_string(kind) << ",nan,nan,zero-variance\n";
    }
  }
  ensure_dir(config.out_dir);
  write_text_file(join(config.out_dir, "centrality_report.csv"), out.str());
  return degenerate ? 2 : 0;
}

int run_calibrate(const ScenarioConfig& config) {
  if (!config.calibration) throw ConfigError("calibrate: config has no calibration section");
  const CalibrationConfig& cal = *config.calibration;
  if (cal.target_csv.empty()) throw ConfigError("calibrate: target_csv is required");

  const auto rows = read_csv(cal.target_csv, 2);
  std::vector<double> series;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r == 0 && rows[r][0] == "day") continue;
    series.push_back(parse_double(rows[r][1], cal.target_csv, static_cast<int>(r + 1)));
  }
  if (series.empty()) throw ConfigError(cal.target_csv + ": no data rows");
  Vector observed(static_cast<Index>(series.size()));
  for (std::size_t i = 0; i < series.size(); ++i)
    observed(static_cast<Index>(i)) = series[i] * cal.death_fraction;

  const CalibrationTarget target =
      make_target(observed, cal.target_cumulative, cal.population_scale);

  ScenarioConfig local = config;
  local.horizon = std::max(config.horizon, static_cast<double>(target.days()));
  PlannerProblem problem = make_problem(local);

  SearchOptions search = cal.search;
  search.workers = config.workers;
  const CalibrationResult result =
      estimate_lambda(target, problem, search, config.solver);

  json j;
  j["lambda_hat"] = result.lambda_hat;
  j["objective"] = result.objective;
  j["identified"] = result.identified;
  json trace = json::array();
  for (const auto& [lambda, dist] : result.trace)
    trace.push_back({{"lambda", lambda}, {"distance", dist}});
  j["trace"] = std::move(trace);
  ensure_dir(config.out_dir);
  write_text_file(join(config.out_dir, "calibration.json"), j.dump(2) + "\n");
  return result.identified ? 0 : 2;
}

}  // namespace netlock
