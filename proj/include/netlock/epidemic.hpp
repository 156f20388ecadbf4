#pragma once

#include <string>
#include <vector>

#include "netlock/network.hpp"

namespace netlock {

/// Transmission, recovery, and death rates per day. All must be positive and
/// finite.
struct EpidemicParams {
  double beta;
  double gamma;
  double kappa;

  void validate() const;
  double removal_rate() const { return gamma + kappa; }
};

/// Per-agent compartment probabilities at an instant. Entries stay in [0, 1]
/// and s + x + r + d = 1 per agent, both within 1e-9.
struct HealthState {
  Vector s;
  Vector x;
  Vector r;
  Vector d;

  Index n() const { return s.size(); }
  void validate(double tol = 1e-9) const;
};

/// Uniform initial condition: every agent at infection probability x0,
/// susceptible 1 - x0, nothing recovered or dead.
HealthState uniform_initial_state(Index n, double x0);

/// State on a fixed time grid together with the lockdown applied on it.
/// `policy` has one row per grid point; row m drives the step [t_m, t_{m+1}).
struct Trajectory {
  Vector times;
  std::vector<HealthState> states;
  Matrix policy;

  Index grid_points() const { return times.size(); }
  Index n() const { return policy.cols(); }
  double dt() const { return times.size() > 1 ? times(1) - times(0) : 0.0; }
};

/// Time derivative of the compartment probabilities under control l:
///   dx_i = beta s_i (1-l_i) sum_j A_ij (1-l_j) x_j - (gamma+kappa) x_i
///   ds_i = -beta s_i (1-l_i) sum_j A_ij (1-l_j) x_j
///   dr_i = gamma x_i,  dd_i = kappa x_i
/// The four components cancel to zero per agent up to roundoff.
HealthState derivative(const HealthState& state, const Vector& l, const Network& net,
                       const EpidemicParams& params);

/// Classical fixed-step RK4 under a piecewise-constant policy. `policy` needs
/// horizon/dt + 1 rows. Entries within 1e-9 of [0, 1] are clamped onto the
/// boundary; anything further out aborts with a NumericalError advising a
/// smaller step.
Trajectory integrate(const Network& net, const EpidemicParams& params, const Matrix& policy,
                     const HealthState& initial, double horizon, double dt);

/// Next-generation matrix M_ij = (beta/(gamma+kappa)) A_ij (1-l_i)(1-l_j) and
/// its spectral radius.
struct NextGenMatrix {
  Matrix m;
  double r0;
};

NextGenMatrix next_generation_matrix(const Network& net, const EpidemicParams& params,
                                     const Vector& l);

enum class DfeStability { stable, unstable, critical };

/// Local stability of the disease-free equilibrium: stable iff r0 < 1 - 1e-9,
/// unstable iff r0 > 1 + 1e-9, critical in between.
DfeStability classify_dfe_stability(double r0);

std::string to_string(DfeStability s);

/// Attack-rate vector solving z = 1 - exp(-M z) coordinate-wise, iterated from
/// z = (1 - 1e-6) * ones. When the spectral radius is below one the iteration
/// collapses to zero; that is reported through `zero_solution`, not an error.
struct FinalSize {
  Vector z;
  double residual;
  bool zero_solution;
  int iterations;
};

FinalSize final_size(const Matrix& m);
FinalSize final_size(const NextGenMatrix& m);

/// Terminal attack rates from a trajectory: r + d at the horizon and the
/// susceptible depletion 1 - s(T)/s(0) (zero where s(0) = 0). Requires the
/// epidemic to be extinguished, max_i x_i(T) < 1e-4. The two vectors agree up
/// to the residual infection mass when s(0) is close to one.
struct AttackRates {
  Vector terminal_rd;
  Vector susceptible_depletion;
  double max_discrepancy;
};

AttackRates attack_rate_check(const Trajectory& traj);

/// CSV export. Per-agent rows "t,agent,s,x,r,d,l"; aggregate rows
/// "t,mean_s,mean_x,mean_r,mean_d,mean_l".
std::string trajectory_csv(const Trajectory& traj);
std::string aggregate_csv(const Trajectory& traj);

}  // namespace netlock
