#pragma once

#include <functional>
#include <vector>

#include "netlock/economy.hpp"
#include "netlock/epidemic.hpp"

namespace netlock {

/// One instance of the planner's problem: maximize discounted aggregate
/// surplus subject to the epidemic dynamics, the per-agent incidence cap
/// dx_i/dt <= lambda, and box constraints l in [0, 1].
struct PlannerProblem {
  Network net;
  EpidemicParams epi;
  Economy econ;
  DiscountRate rate;
  double lambda = 0.1;
  HealthState initial;
  double horizon = 150.0;
  double dt = 0.25;

  Index grid_points() const;
  void validate() const;
};

struct LockdownPolicy {
  Matrix values;  // grid points x agents, entries in [0, 1]

  static LockdownPolicy constant(Index grid, Index n, double value);
  Vector time_average() const;  // per-agent mean over the grid
};

/// Incidence-cap multipliers theta^1 >= 0 on the grid plus the quadratic
/// penalty weight of the augmented Lagrangian.
struct ConstraintMultipliers {
  Matrix theta1;
  double rho = 0.0;

  static ConstraintMultipliers zero(Index grid, Index n);
};

/// Current-value costates of the four compartments on the grid, mu(T) = 0.
/// The pv_* members hold the present-value discrete adjoint of the RK4 +
/// trapezoid discretization; control_gradient assembles the exact gradient of
/// the discretized augmented objective from them.
struct AdjointState {
  Matrix mu1, mu2, mu3, mu4;          // costates of x, r, d, s
  Matrix pv_x, pv_s, pv_r, pv_d;      // discrete adjoint, present value
};

struct KktReport {
  double stationarity;
  double complementary_slackness;
  double feasibility;

  bool within(double tol) const {
    return stationarity <= tol && complementary_slackness <= tol && feasibility <= tol;
  }
};

struct SolverConfig {
  double tol_obj = 1e-6;        // relative objective stall
  double tol_violation = 1e-4;  // max (dx/dt - lambda)_+
  double tol_kkt = 1e-3;
  int max_outer = 500;
  int max_inner = 8;
  double rho0 = 10.0;
  double rho_growth = 2.0;
  double rho_max = 1e6;
  double damping = 0.5;  // accepted update is damping * trial + (1 - damping) * current
  std::vector<double> starts = {0.0, 0.5, 1.0};
  double step0 = 1.0;
  int max_backtracks = 40;
  double kkt_boundary_eps = 1e-6;
  int stall_rounds = 10;
  std::function<void(int, double)> accept_callback;  // (outer round, augmented objective)

  void validate() const;
};

struct Solution {
  LockdownPolicy policy;
  Trajectory trajectory;
  Matrix theta1;  // final incidence multipliers, for KKT verification
  double objective = 0.0;
  double loss_pct = 0.0;
  double max_violation = 0.0;
  KktReport kkt{0.0, 0.0, 0.0};
  int iterations = 0;
  bool converged = false;
};

/// dx/dt evaluated from the dynamics formula at every grid point with the
/// applied control (not finite differences of x).
Matrix incidence(const Trajectory& traj, const Network& net, const EpidemicParams& epi);

/// Penalized objective: discounted surplus plus the multiplier and quadratic
/// penalty terms for the incidence cap, on the trajectory's quadrature grid.
double augmented_objective(const Trajectory& traj, const Matrix& xdot,
                           const ConstraintMultipliers& mult, const PlannerProblem& problem);

/// Backward sweep over the trajectory: discrete adjoint of the forward RK4 +
/// trapezoid discretization. `gradient` is the exact derivative of the
/// augmented objective with respect to each policy entry; `gradient_density`
/// divides out the quadrature weights (the per-day Lagrangian scale used for
/// KKT residuals).
struct BackwardSweep {
  AdjointState adjoint;
  Matrix gradient;
  Matrix gradient_density;
};

BackwardSweep backward_sweep(const Trajectory& traj, const ConstraintMultipliers& mult,
                             const PlannerProblem& problem);

/// Costate trajectories for a given forward trajectory and multipliers.
AdjointState adjoint_integrate(const Trajectory& traj, const ConstraintMultipliers& mult,
                               const PlannerProblem& problem);

/// Gradient of the discounted augmented Lagrangian with respect to l, per unit
/// quadrature weight, assembled from the discrete adjoint in `adjoint`.
/// Multiplying row m by the trapezoid weight of grid point m gives the exact
/// derivative of the discretized objective.
Matrix control_gradient(const Trajectory& traj, const AdjointState& adjoint,
                        const ConstraintMultipliers& mult, const PlannerProblem& problem);

/// Forward-backward sweep with augmented-Lagrangian handling of the incidence
/// cap and projected-gradient control updates. Returns the best feasible
/// iterate; `converged` additionally requires the KKT residuals of the
/// returned iterate to sit below tol_kkt.
Solution solve_optimal_lockdown(const PlannerProblem& problem, const SolverConfig& config = {});

/// Stationarity, complementary slackness, and primal feasibility residuals of
/// a solution. Stationarity uses the boundary rules: interior entries need
/// |gradient| small, entries at 0 need gradient <= tol, entries at 1 need
/// gradient >= -tol.
KktReport verify_kkt(const Solution& sol, const PlannerProblem& problem,
                     double boundary_eps = 1e-6);

struct CorrelationReport {
  double pearson_r;
  double p_value;
};

/// Pearson correlation between time-averaged lockdown and a centrality vector,
/// with the two-sided t-test p-value for H0: rho = 0.
CorrelationReport lockdown_centrality_correlation(const Solution& sol, const Vector& centrality);

}  // namespace netlock
