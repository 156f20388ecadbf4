#include "netlock/economy.hpp"

#include <cmath>

namespace netlock {

void AgentEconomy::validate() const {
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("economy: price must be positive");
  if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("economy: wage must be non-negative");
  if (!(k >= 0.0) || !std::isfinite(k)) throw ConfigError("economy: capital must be non-negative");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("economy: alpha must lie in [0, 1]");
  if (!(phi >= 0.0 && phi <= 1.0)) throw ConfigError("economy: phi must lie in [0, 1]");
  if (!(psi >= 0.0 && psi <= 1.0)) throw ConfigError("economy: psi must lie in [0, 1]");
}

void DiscountRate::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw ConfigError("discount rate: delta must be positive");
}

Economy Economy::homogeneous(Index n, const AgentEconomy& a) {
  a.validate();
  Economy e;
  e.p = Vector::Constant(n, a.p);
  e.w = Vector::Constant(n, a.w);
  e.k = Vector::Constant(n, a.k);
  e.alpha = Vector::Constant(n, a.alpha);
  e.phi = Vector::Constant(n, a.phi);
  e.psi = Vector::Constant(n, a.psi);
  return e;
}

AgentEconomy Economy::agent(Index i) const {
  return {p(i), w(i), k(i), alpha(i), phi(i), psi(i)};
}

void Economy::validate() const {
  const Index size = n();
  if (w.size() != size || k.size() != size || alpha.size() != size || phi.size() != size ||
      psi.size() != size)
    throw ConfigError("economy: per-agent vectors disagree in length");
  for (Index i = 0; i < size; ++i) agent(i).validate();
}

double labor_supply(double s, double x, double r, double d, double l, const AgentEconomy& econ) {
  if (!(l >= 0.0 && l <= 1.0)) throw ConfigError("labor supply: l must lie in [0, 1]");
  return (1.0 + econ.phi * s * r * (1.0 - x) * (1.0 - d)) * (1.0 - econ.psi * l);
}

double output(const AgentEconomy& econ, double h) {
  if (!(h >= 0.0)) throw ConfigError("output: labor must be non-negative");
  if (econ.alpha == 1.0) return econ.k;
  if (econ.alpha == 0.0) return h;
  return std::pow(econ.k, econ.alpha) * std::pow(h, 1.0 - econ.alpha);
}

double surplus(const AgentEconomy& econ, double s, double x, double r, double d, double l) {
  const double h = labor_supply(s, x, r, d, l, econ);
  return econ.p * output(econ, h) - econ.w * h;
}

double aggregate_surplus(const HealthState& state, const Vector& l, const Economy& econ) {
  double total = 0.0;
  for (Index i = 0; i < econ.n(); ++i)
    total += surplus(econ.agent(i), state.s(i), state.x(i), state.r(i), state.d(i), l(i));
  return total;
}

namespace {

double discounted_quadrature(const Trajectory& traj, const Economy& econ, const DiscountRate& rate,
                             bool baseline) {
  rate.validate();
  econ.validate();
  const Index points = traj.grid_points();
  if (points == 0) return 0.0;
  if (econ.n() != traj.n())
    throw ConfigError("discounted surplus: economy/trajectory size mismatch");

  const HealthState healthy = uniform_initial_state(traj.n(), 0.0);
  const Vector no_lockdown = Vector::Zero(traj.n());

  double total = 0.0;
  const double dt = traj.dt();
  for (Index m = 0; m < points; ++m) {
    const double weight = (m == 0 || m == points - 1) ? 0.5 * dt : dt;
    const HealthState& h = baseline ? healthy : traj.states[static_cast<std::size_t>(m)];
    const Vector& l = no_lockdown;
    const double flow = baseline
                            ? aggregate_surplus(h, l, econ)
                            : aggregate_surplus(h, traj.policy.row(m).transpose(), econ);
    total += weight * std::exp(-rate.delta * traj.times(m)) * flow;
  }
  return total;
}

}  // namespace

double discounted_aggregate_surplus(const Trajectory& traj, const Economy& econ,
                                    const DiscountRate& rate) {
  return discounted_quadrature(traj, econ, rate, false);
}

double surplus_loss_pct(const Trajectory& traj, const Economy& econ, const DiscountRate& rate) {
  const double baseline = discounted_quadrature(traj, econ, rate, true);
  if (baseline == 0.0) throw NumericalError("surplus loss: baseline value is zero");
  const double value = discounted_quadrature(traj, econ, rate, false);
  return 100.0 * (1.0 - value / baseline);
}

}  // namespace netlock
