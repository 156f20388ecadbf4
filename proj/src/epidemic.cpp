#include "netlock/epidemic.hpp"

#include <cmath>
#include <sstream>

#include "netlock/detail/dynamics.hpp"
#include "netlock/io.hpp"
#include "netlock/numerics.hpp"

namespace netlock {

void EpidemicParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ConfigError("epidemic params: beta must be positive and finite");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ConfigError("epidemic params: gamma must be positive and finite");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ConfigError("epidemic params: kappa must be positive and finite");
}

void HealthState::validate(double tol) const {
  const Index size = s.size();
  if (x.size() != size || r.size() != size || d.size() != size)
    throw ConfigError("health state: compartment vectors disagree in length");
  for (Index i = 0; i < size; ++i) {
    for (double v : {s(i), x(i), r(i), d(i)}) {
      if (!std::isfinite(v) || v < -tol || v > 1.0 + tol)
        throw ConfigError("health state: entry outside [0, 1] at agent " + std::to_string(i));
    }
    const double total = s(i) + x(i) + r(i) + d(i);
    if (std::abs(total - 1.0) > tol)
      throw ConfigError("health state: compartments of agent " + std::to_string(i) +
                        " sum to " + std::to_string(total));
  }
}

HealthState uniform_initial_state(Index n, double x0) {
  if (x0 < 0.0 || x0 > 1.0) throw ConfigError("initial state: x0 must lie in [0, 1]");
  HealthState h;
  h.x = Vector::Constant(n, x0);
  h.s = Vector::Constant(n, 1.0 - x0);
  h.r = Vector::Zero(n);
  h.d = Vector::Zero(n);
  return h;
}

namespace {

void check_control(const Vector& l, Index n) {
  if (l.size() != n) throw ConfigError("control vector length does not match agent count");
  for (Index i = 0; i < n; ++i)
    if (!(l(i) >= 0.0 && l(i) <= 1.0))
      throw ConfigError("control outside [0, 1] at agent " + std::to_string(i));
}

}  // namespace

HealthState derivative(const HealthState& state, const Vector& l, const Network& net,
                       const EpidemicParams& params) {
  params.validate();
  state.validate();
  if (state.n() != net.n()) throw ConfigError("derivative: state/network size mismatch");
  check_control(l, net.n());

  Vector pressure(net.n());
  const Vector one_minus_l = Vector::Ones(net.n()) - l;
  const detail::StateVec dy =
      detail::rhs(net.sparse(), params, detail::from_health_state(state), one_minus_l, pressure);
  return detail::to_health_state(dy);
}

Trajectory integrate(const Network& net, const EpidemicParams& params, const Matrix& policy,
                     const HealthState& initial, double horizon, double dt) {
  params.validate();
  initial.validate();
  const Index n = net.n();
  if (initial.n() != n) throw ConfigError("integrate: initial state/network size mismatch");
  const Index steps = detail::step_count(horizon, dt);
  if (policy.rows() != steps + 1 || policy.cols() != n)
    throw ConfigError("integrate: policy must have horizon/dt + 1 rows and n columns");
  if (policy.size() > 0 && (policy.minCoeff() < 0.0 || policy.maxCoeff() > 1.0))
    throw ConfigError("integrate: policy entries must lie in [0, 1]");

  Trajectory traj;
  traj.times = dt * Vector::LinSpaced(steps + 1, 0.0, static_cast<double>(steps));
  traj.policy = policy;
  traj.states.reserve(static_cast<std::size_t>(steps + 1));
  traj.states.push_back(initial);

  detail::StateVec y = detail::from_health_state(initial);
  detail::Rk4Stages stages;
  Vector pressure(n);
  constexpr double kBoundaryTol = 1e-9;
  for (Index m = 0; m < steps; ++m) {
    const Vector one_minus_l = Vector::Ones(n) - policy.row(m).transpose();
    y = detail::rk4_step(net.sparse(), params, y, one_minus_l, dt, stages, pressure);
    for (Vector* comp : {&y.x, &y.s, &y.r, &y.d}) {
      for (Index i = 0; i < n; ++i) {
        double& v = (*comp)(i);
        if (v < -kBoundaryTol || v > 1.0 + kBoundaryTol || !std::isfinite(v))
          throw NumericalError(
              "integrate: state left [0, 1] at t = " + std::to_string(traj.times(m) + dt) +
              ", agent " + std::to_string(i) + "; reduce dt");
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
      }
    }
    traj.states.push_back(detail::to_health_state(y));
  }
  return traj;
}

NextGenMatrix next_generation_matrix(const Network& net, const EpidemicParams& params,
                                     const Vector& l) {
  params.validate();
  check_control(l, net.n());
  const Vector open = Vector::Ones(net.n()) - l;
  Matrix m = (params.beta / params.removal_rate()) *
             net.weights().cwiseProduct(open * open.transpose());
  const double r0 = m.cwiseAbs().maxCoeff() == 0.0
                        ? 0.0
                        : power_iteration_symmetric(m, 1e-10, 10000).eigenvalue;
  return {std::move(m), r0};
}

DfeStability classify_dfe_stability(double r0) {
  if (r0 < 0.0) throw ConfigError("dfe stability: r0 must be non-negative");
  constexpr double eps = 1e-9;
  if (r0 < 1.0 - eps) return DfeStability::stable;
  if (r0 > 1.0 + eps) return DfeStability::unstable;
  return DfeStability::critical;
}

std::string to_string(DfeStability s) {
  switch (s) {
    case DfeStability::stable: return "stable";
    case DfeStability::unstable: return "unstable";
    case DfeStability::critical: return "critical";
  }
  throw ConfigError("unknown stability class");
}

FinalSize final_size(const Matrix& m) {
  if (m.rows() != m.cols()) throw ConfigError("final size: matrix not square");
  const Index n = m.rows();
  constexpr double kTol = 1e-12;
  constexpr int kMaxIters = 1000000;

  Vector z = Vector::Constant(n, 1.0 - 1e-6);
  double change = 0.0;
  int it = 0;
  for (; it < kMaxIters; ++it) {
    const Vector next = Vector::Ones(n) - (-(m * z)).array().exp().matrix();
    change = (next - z).cwiseAbs().maxCoeff();
    z = next;
    if (change < kTol) break;
  }
  if (change >= kTol) throw NumericalError("final size: fixed point did not converge");

  const double residual = (z - (Vector::Ones(n) - (-(m * z)).array().exp().matrix()))
                              .cwiseAbs()
                              .maxCoeff();
  const bool zero_solution = z.cwiseAbs().maxCoeff() < 1e-8;
  return {std::move(z), residual, zero_solution, it + 1};
}

FinalSize final_size(const NextGenMatrix& m) { return final_size(m.m); }

AttackRates attack_rate_check(const Trajectory& traj) {
  if (traj.states.empty()) throw ConfigError("attack rate: empty trajectory");
  const HealthState& first = traj.states.front();
  const HealthState& last = traj.states.back();
  const double residual_infection = last.x.cwiseAbs().maxCoeff();
  if (residual_infection >= 1e-4)
    throw NumericalError("attack rate: epidemic not yet extinguished at horizon (max x = " +
                         std::to_string(residual_infection) + ")");

  AttackRates out;
  out.terminal_rd = last.r + last.d;
  out.susceptible_depletion = Vector::Zero(last.n());
  for (Index i = 0; i < last.n(); ++i)
    if (first.s(i) > 0.0) out.susceptible_depletion(i) = 1.0 - last.s(i) / first.s(i);
  out.max_discrepancy = (out.terminal_rd - out.susceptible_depletion).cwiseAbs().maxCoeff();
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,agent,s,x,r,d,l\n";
  for (Index m = 0; m < traj.grid_points(); ++m) {
    const HealthState& h = traj.states[static_cast<std::size_t>(m)];
    for (Index i = 0; i < h.n(); ++i) {
      out << format_double(traj.times(m)) << ',' << i << ',' << format_double(h.s(i)) << ','
          << format_double(h.x(i)) << ',' << format_double(h.r(i)) << ','
          << format_double(h.d(i)) << ',' << format_double(traj.policy(m, i)) << '\n';
    }
  }
  return out.str();
}

std::string aggregate_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,mean_s,mean_x,mean_r,mean_d,mean_l\n";
  for (Index m = 0; m < traj.grid_points(); ++m) {
    const HealthState& h = traj.states[static_cast<std::size_t>(m)];
    out << format_double(traj.times(m)) << ',' << format_double(h.s.mean()) << ','
        << format_double(h.x.mean()) << ',' << format_double(h.r.mean()) << ','
        << format_double(h.d.mean()) << ',' << format_double(traj.policy.row(m).mean()) << '\n';
  }
  return out.str();
}

}  // namespace netlock
