#pragma once

#include "netlock/epidemic.hpp"

namespace netlock {

/// Economic primitives of one agent: output price p, labor cost w, capital k,
/// capital elasticity alpha, health-composition labor effect phi, and lockdown
/// labor effect psi.
struct AgentEconomy {
  double p = 1.2;
  double w = 0.4;
  double k = 1.0;
  double alpha = 1.0 / 3.0;
  double phi = 0.0;
  double psi = 1.0;

  void validate() const;
};

/// Per-day discount rate; the default is a 5% annual rate.
struct DiscountRate {
  double delta = 0.05 / 365.0;

  void validate() const;
};

/// Per-agent economy in structure-of-arrays form for vectorized evaluation.
struct Economy {
  Vector p, w, k, alpha, phi, psi;

  Index n() const { return p.size(); }
  static Economy homogeneous(Index n, const AgentEconomy& a);
  AgentEconomy agent(Index i) const;
  void validate() const;
};

/// Labor supply h = (1 + phi s r (1-x)(1-d)) (1 - psi l). With phi = 0 and
/// psi = 1 this collapses to 1 - l.
double labor_supply(double s, double x, double r, double d, double l, const AgentEconomy& econ);

/// Cobb-Douglas output y = k^alpha h^(1-alpha); for alpha = 1 output is k
/// regardless of h.
double output(const AgentEconomy& econ, double h);

/// Instantaneous surplus W = p y - w h.
double surplus(const AgentEconomy& econ, double s, double x, double r, double d, double l);

/// Aggregate surplus of one grid state, sum_i W_i.
double aggregate_surplus(const HealthState& state, const Vector& l, const Economy& econ);

/// Trapezoidal quadrature of e^(-delta t) sum_i W_i(t) over the trajectory
/// grid.
double discounted_aggregate_surplus(const Trajectory& traj, const Economy& econ,
                                    const DiscountRate& rate);

/// 100 (1 - V_pandemic / V_baseline) where the baseline holds s = 1 and l = 0
/// on the same grid.
double surplus_loss_pct(const Trajectory& traj, const Economy& econ, const DiscountRate& rate);

}  // namespace netlock
