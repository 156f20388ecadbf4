#pragma once

#include <utility>
#include <vector>

#include "netlock/control.hpp"

namespace netlock {

/// Observed death series the estimator targets. The series is stored in
/// cumulative form; incident input is accumulated on construction.
struct CalibrationTarget {
  Vector daily_deaths;          // cumulative, days 1..m
  double population_scale = 1.0;

  Index days() const { return daily_deaths.size(); }
  void validate() const;
};

CalibrationTarget make_target(const Vector& series, bool cumulative, double population_scale);

struct CalibrationResult {
  double lambda_hat = 0.0;
  double objective = 0.0;
  std::vector<std::pair<double, double>> trace;  // (lambda, distance) in evaluation order
  bool identified = false;
};

struct SearchOptions {
  double lambda_min = 1e-4;
  double lambda_max = 1.0;
  int grid_points = 25;       // log-spaced coarse grid
  double golden_tol = 1e-4;   // interval width stop
  int max_golden = 40;
  bool incident = false;      // compare day-over-day increments instead of levels
  int workers = 0;            // parallel coarse-grid evaluations

  void validate() const;
};

/// Solves the planner's problem at the problem's lambda and samples
/// scale * mean_i d_i at whole days 1..m of the solved trajectory.
Vector simulate_death_series(const PlannerProblem& problem, Index m, double scale,
                             const SolverConfig& config = {});

/// Death series of a fixed (not optimized) policy trajectory.
Vector death_series_from_trajectory(const Trajectory& traj, Index m, double scale);

/// Sum of squared differences between two equal-length series.
double distance(const Vector& model, const Vector& target);

/// Simulated minimum distance: coarse log-spaced grid on [lambda_min,
/// lambda_max], then golden-section refinement around the bracketing triple.
/// `identified` is false when the best objective improves on the interval
/// endpoints by less than 1% relative.
CalibrationResult estimate_lambda(const CalibrationTarget& target,
                                  const PlannerProblem& base_problem, const SearchOptions& search,
                                  const SolverConfig& config = {});

/// Parameter mapping for state-level inputs: beta = r0/18,
/// gamma = (1 - death_per_case)/18, kappa = death_per_case/18, capital = beds,
/// delta = 0.05/365.
struct StateInputs {
  double r0_estimate;
  double death_per_case;
  double price;
  double wage;
  double alpha;
  double beds;
};

std::pair<EpidemicParams, AgentEconomy> params_from_state_inputs(const StateInputs& in);

}  // namespace netlock
