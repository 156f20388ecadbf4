#pragma once

// RK4 stage machinery shared by the forward integrator and the backward
// (adjoint) sweep. Both sides must evaluate bit-identical stage states, so the
// step logic lives here and nowhere else.

#include "netlock/epidemic.hpp"

namespace netlock::detail {

struct StateVec {
  Vector x, s, r, d;

  static StateVec zero(Index n) {
    return {Vector::Zero(n), Vector::Zero(n), Vector::Zero(n), Vector::Zero(n)};
  }
};

inline StateVec from_health_state(const HealthState& h) { return {h.x, h.s, h.r, h.d}; }

inline HealthState to_health_state(const StateVec& y) { return {y.s, y.x, y.r, y.d}; }

/// ODE right-hand side. Writes the infection pressure S = A ((1-l) .* x) into
/// `pressure` for reuse by callers.
inline StateVec rhs(const SparseMatrix& a, const EpidemicParams& p, const StateVec& y,
                    const Vector& one_minus_l, Vector& pressure) {
  pressure.noalias() = a * (one_minus_l.cwiseProduct(y.x));
  const Vector transmission =
      p.beta * y.s.cwiseProduct(one_minus_l).cwiseProduct(pressure);
  StateVec out;
  out.r = p.gamma * y.x;
  out.d = p.kappa * y.x;
  out.x = transmission - out.r - out.d;
  out.s = -transmission;
  return out;
}

inline StateVec axpy(const StateVec& y, double h, const StateVec& k) {
  return {y.x + h * k.x, y.s + h * k.s, y.r + h * k.r, y.d + h * k.d};
}

struct Rk4Stages {
  StateVec k1, k2, k3, k4;  // stage derivatives
  StateVec z2, z3, z4;      // stage states (z1 is the step's start state)
};

/// One classical RK4 step of size dt; all stages use the same control row.
inline StateVec rk4_step(const SparseMatrix& a, const EpidemicParams& p, const StateVec& y,
                         const Vector& one_minus_l, double dt, Rk4Stages& stages,
                         Vector& pressure) {
  stages.k1 = rhs(a, p, y, one_minus_l, pressure);
  stages.z2 = axpy(y, 0.5 * dt, stages.k1);
  stages.k2 = rhs(a, p, stages.z2, one_minus_l, pressure);
  stages.z3 = axpy(y, 0.5 * dt, stages.k2);
  stages.k3 = rhs(a, p, stages.z3, one_minus_l, pressure);
  stages.z4 = axpy(y, dt, stages.k3);
  stages.k4 = rhs(a, p, stages.z4, one_minus_l, pressure);
  StateVec next;
  const double w = dt / 6.0;
  next.x = y.x + w * (stages.k1.x + 2.0 * stages.k2.x + 2.0 * stages.k3.x + stages.k4.x);
  next.s = y.s + w * (stages.k1.s + 2.0 * stages.k2.s + 2.0 * stages.k3.s + stages.k4.s);
  next.r = y.r + w * (stages.k1.r + 2.0 * stages.k2.r + 2.0 * stages.k3.r + stages.k4.r);
  next.d = y.d + w * (stages.k1.d + 2.0 * stages.k2.d + 2.0 * stages.k3.d + stages.k4.d);
  return next;
}

/// Number of RK4 steps for a horizon that must be a whole multiple of dt.
inline Index step_count(double horizon, double dt) {
  if (!(dt > 0.0)) throw ConfigError("integrate: dt must be positive");
  if (!(horizon >= 0.0)) throw ConfigError("integrate: horizon must be non-negative");
  const double ratio = horizon / dt;
  const Index steps = static_cast<Index>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError("integrate: horizon must be a whole multiple of dt");
  return steps;
}

}  // namespace netlock::detail
