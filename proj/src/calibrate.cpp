#include "netlock/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netlock/io.hpp"
#include "netlock/numerics.hpp"

namespace netlock {

void CalibrationTarget::validate() const {
  if (days() < 2) throw ConfigError("calibration target: needs at least 2 days");
  if (!(population_scale > 0.0))
    throw ConfigError("calibration target: population scale must be positive");
  for (Index t = 0; t < days(); ++t) {
    if (!(daily_deaths(t) >= 0.0))
      throw ConfigError("calibration target: negative deaths at day " + std::to_string(t + 1));
    if (t > 0 && daily_deaths(t) < daily_deaths(t - 1) - 1e-12)
      throw ConfigError("calibration target: cumulative series decreases at day " +
                        std::to_string(t + 1));
  }
}

CalibrationTarget make_target(const Vector& series, bool cumulative, double population_scale) {
  CalibrationTarget target;
  target.population_scale = population_scale;
  if (cumulative) {
    target.daily_deaths = series;
  } else {
    target.daily_deaths.resize(series.size());
    double total = 0.0;
    for (Index t = 0; t < series.size(); ++t) {
      total += series(t);
      target.daily_deaths(t) = total;
    }
  }
  target.validate();
  return target;
}

Vector death_series_from_trajectory(const Trajectory& traj, Index m, double scale) {
  if (m < 1) throw ConfigError("death series: needs at least one day");
  const double dt = traj.dt();
  if (!(dt > 0.0)) throw ConfigError("death series: trajectory has no time step");
  Vector out(m);
  for (Index day = 1; day <= m; ++day) {
    const double position = static_cast<double>(day) / dt;
    const Index idx = static_cast<Index>(std::llround(position));
    if (std::abs(position - static_cast<double>(idx)) > 1e-9 || idx >= traj.grid_points())
      throw ConfigError("death series: day " + std::to_string(day) +
                        " is not on the trajectory grid");
    out(day - 1) = scale * traj.states[static_cast<std::size_t>(idx)].d.mean();
  }
  return out;
}

Vector simulate_death_series(const PlannerProblem& problem, Index m, double scale,
                             const SolverConfig& config) {
  if (static_cast<double>(m) > problem.horizon + 1e-9)
    throw ConfigError("death series: m days exceed the problem horizon");
  const Solution sol = solve_optimal_lockdown(problem, config);
  return death_series_from_trajectory(sol.trajectory, m, scale);
}

double distance(const Vector& model, const Vector& target) {
  if (model.size() != target.size())
    throw ConfigError("distance: series lengths differ (" + std::to_string(model.size()) +
                      " vs " + std::to_string(target.size()) + ")");
  return (model - target).squaredNorm();
}

void SearchOptions::validate() const {
  if (!(lambda_min >= 0.0) || !(lambda_max > lambda_min))
    throw ConfigError("lambda search: need 0 <= lambda_min < lambda_max");
  if (grid_points < 5) throw ConfigError("lambda search: needs at least 5 grid points");
  if (!(golden_tol > 0.0) || max_golden < 0)
    throw ConfigError("lambda search: invalid refinement settings");
}

namespace {

Vector model_series(const PlannerProblem& base, double lambda, const CalibrationTarget& target,
                    const SearchOptions& search, const SolverConfig& config) {
  PlannerProblem problem = base;
  problem.lambda = lambda;
  Vector series =
      simulate_death_series(problem, target.days(), target.population_scale, config);
  if (search.incident) {
    for (Index t = series.size() - 1; t > 0; --t) series(t) -= series(t - 1);
  }
  return series;
}

}  // namespace

CalibrationResult estimate_lambda(const CalibrationTarget& target,
                                  const PlannerProblem& base_problem, const SearchOptions& search,
                                  const SolverConfig& config) {
  target.validate();
  search.validate();
  base_problem.validate();

  Vector observed = target.daily_deaths;
  if (search.incident)
    for (Index t = observed.size() - 1; t > 0; --t) observed(t) -= observed(t - 1);

  auto objective = [&](double lambda) {
    return distance(model_series(base_problem, lambda, target, search, config), observed);
  };

  // Coarse pass: log-spaced grid (shifted when lambda_min = 0 to keep the
  // spacing defined), evaluated in parallel.
  const int points = search.grid_points;
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double lo = std::log(std::max(search.lambda_min, 1e-12));
  const double hi = std::log(search.lambda_max);
  for (int k = 0; k < points; ++k)
    grid[static_cast<std::size_t>(k)] =
        std::exp(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1));
  grid.front() = search.lambda_min;
  grid.back() = search.lambda_max;

  std::vector<double> values(grid.size());
  std::vector<std::string> failures(grid.size());
  parallel_for(static_cast<Index>(grid.size()), {search.workers}, [&](Index k) {
    try {
      values[static_cast<std::size_t>(k)] = objective(grid[static_cast<std::size_t>(k)]);
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(k)] = e.what();
      values[static_cast<std::size_t>(k)] = std::numeric_limits<double>::quiet_NaN();
    }
  });

  CalibrationResult result;
  std::size_t best = values.size();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (std::isnan(values[k])) {
      log_line(1, "calibration: lambda " + format_double(grid[k]) + " failed: " + failures[k]);
      continue;
    }
    result.trace.emplace_back(grid[k], values[k]);
    if (best == values.size() || values[k] < values[best]) best = k;
  }
  if (best == values.size())
    throw NumericalError("calibration: every grid evaluation failed (first error: " +
                         failures.front() + ")");

  double best_lambda = grid[best];
  double best_value = values[best];

  // Golden-section refinement on the bracketing triple around the grid
  // minimum; assumes local unimodality there, which the exported trace makes
  // inspectable.
  double a = best > 0 ? grid[best - 1] : grid[best];
  double b = best + 1 < grid.size() ? grid[best + 1] : grid[best];
  if (b > a) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    result.trace.emplace_back(x1, f1);
    result.trace.emplace_back(x2, f2);
    for (int it = 0; it < search.max_golden && (b - a) > search.golden_tol; ++it) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = objective(x1);
        result.trace.emplace_back(x1, f1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = objective(x2);
        result.trace.emplace_back(x2, f2);
      }
    }
    for (const auto& [lambda, value] : result.trace) {
      if (value < best_value) {
        best_value = value;
        best_lambda = lambda;
      }
    }
  }

  result.lambda_hat = best_lambda;
  result.objective = best_value;

  // Identification: the estimate must beat the interval endpoints by a clear
  // margin, otherwise the objective is flat and the estimator returns noise.
  const double end_low = values.front();
  const double end_high = values.back();
  const double end_best = std::isnan(end_low)    ? end_high
                          : std::isnan(end_high) ? end_low
                                                 : std::min(end_low, end_high);
  result.identified =
      !std::isnan(end_best) && (end_best - best_value) > 0.01 * std::max(end_best, 1e-300);
  return result;
}

std::pair<EpidemicParams, AgentEconomy> params_from_state_inputs(const StateInputs& in) {
  if (!(in.r0_estimate > 0.0)) throw ConfigError("state inputs: r0 must be positive");
  if (!(in.death_per_case > 0.0 && in.death_per_case < 1.0))
    throw ConfigError("state inputs: death per case must lie in (0, 1)");
  if (!(in.price > 0.0) || !(in.wage > 0.0))
    throw ConfigError("state inputs: price and wage must be positive");
  if (!(in.alpha > 0.0 && in.alpha < 1.0))
    throw ConfigError("state inputs: alpha must lie in (0, 1)");
  if (!(in.beds > 0.0)) throw ConfigError("state inputs: beds must be positive");

  EpidemicParams epi;
  epi.beta = in.r0_estimate / 18.0;
  epi.gamma = (1.0 - in.death_per_case) / 18.0;
  epi.kappa = in.death_per_case / 18.0;

  AgentEconomy econ;
  econ.p = in.price;
  econ.w = in.wage;
  econ.k = in.beds;
  econ.alpha = in.alpha;
  econ.phi = 0.0;
  econ.psi = 1.0;
  return {epi, econ};
}

}  // namespace netlock
