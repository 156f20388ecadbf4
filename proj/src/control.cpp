#include "netlock/control.hpp"

#include <cmath>

#include "netlock/detail/dynamics.hpp"
#include "netlock/io.hpp"
#include "netlock/stats.hpp"

namespace netlock {

Index PlannerProblem::grid_points() const { return detail::step_count(horizon, dt) + 1; }

void PlannerProblem::validate() const {
  epi.validate();
  econ.validate();
  rate.validate();
  initial.validate();
  if (!(lambda >= 0.0)) throw ConfigError("planner: lambda must be non-negative");
  if (initial.n() != net.n() || econ.n() != net.n())
    throw ConfigError("planner: network, economy, and initial state sizes disagree");
  detail::step_count(horizon, dt);  // validates dt/horizon compatibility
}

LockdownPolicy LockdownPolicy::constant(Index grid, Index n, double value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ConfigError("policy: constant value must lie in [0, 1]");
  return {Matrix::Constant(grid, n, value)};
}

Vector LockdownPolicy::time_average() const {
  return values.colwise().mean().transpose();
}

ConstraintMultipliers ConstraintMultipliers::zero(Index grid, Index n) {
  return {Matrix::Zero(grid, n), 0.0};
}

void SolverConfig::validate() const {
  if (!(tol_obj > 0.0) || !(tol_violation > 0.0) || !(tol_kkt > 0.0))
    throw ConfigError("solver config: tolerances must be positive");
  if (max_outer < 1 || max_inner < 1) throw ConfigError("solver config: iteration caps must be >= 1");
  if (!(rho0 > 0.0) || !(rho_growth >= 1.0) || !(rho_max >= rho0))
    throw ConfigError("solver config: invalid penalty schedule");
  if (!(damping > 0.0 && damping <= 1.0))
    throw ConfigError("solver config: damping must lie in (0, 1]");
  if (starts.empty()) throw ConfigError("solver config: needs at least one start");
  for (double s : starts)
    if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("solver config: starts must lie in [0, 1]");
}

namespace {

// Trapezoid weight of grid point m on a grid with `points` nodes.
double quad_weight(Index m, Index points, double dt) {
  if (points == 1) return 0.0;
  return (m == 0 || m == points - 1) ? 0.5 * dt : dt;
}

struct NodeEconomics {
  double total_surplus;
  Vector dW_dl;
  Vector dW_dx, dW_ds, dW_dr, dW_dd;
};

// Surplus and its partials at one grid node, vectorized over agents. The
// marginal-product factor uses a floored labor supply so boundary policies
// (h = 0) produce a finite, steeply negative gradient instead of an inf.
NodeEconomics node_economics(const HealthState& h, const Vector& l, const Economy& econ) {
  const Index n = econ.n();
  constexpr double kLaborFloor = 1e-12;

  NodeEconomics out;
  out.dW_dl.resize(n);
  out.dW_dx.resize(n);
  out.dW_ds.resize(n);
  out.dW_dr.resize(n);
  out.dW_dd.resize(n);
  out.total_surplus = 0.0;

  for (Index i = 0; i < n; ++i) {
    const double s = h.s(i), x = h.x(i), r = h.r(i), d = h.d(i);
    const double phi = econ.phi(i), psi = econ.psi(i), alpha = econ.alpha(i);
    const double p = econ.p(i), w = econ.w(i), k = econ.k(i);

    const double base = 1.0 + phi * s * r * (1.0 - x) * (1.0 - d);
    const double lock = 1.0 - psi * l(i);
    const double labor = base * lock;

    double y;
    if (alpha == 1.0) y = k;
    else if (alpha == 0.0) y = labor;
    else y = std::pow(k, alpha) * std::pow(labor, 1.0 - alpha);
    out.total_surplus += p * y - w * labor;

    double dy_dh;
    if (alpha == 1.0) dy_dh = 0.0;
    else if (alpha == 0.0) dy_dh = 1.0;
    else dy_dh = (1.0 - alpha) * std::pow(k, alpha) * std::pow(std::max(labor, kLaborFloor), -alpha);
    const double dW_dh = p * dy_dh - w;

    out.dW_dl(i) = dW_dh * (-psi * base);
    out.dW_ds(i) = dW_dh * (phi * r * (1.0 - x) * (1.0 - d) * lock);
    out.dW_dr(i) = dW_dh * (phi * s * (1.0 - x) * (1.0 - d) * lock);
    out.dW_dx(i) = dW_dh * (-phi * s * r * (1.0 - d) * lock);
    out.dW_dd(i) = dW_dh * (-phi * s * r * (1.0 - x) * lock);
  }
  return out;
}

// Cotangent pull-back of the ODE right-hand side at one (stage) state.
// Incoming cotangents (ax, as, ar, ad) on the outputs; returns cotangents on
// the state and accumulates the control cotangent into `gl`.
void rhs_vjp(const SparseMatrix& a, const EpidemicParams& p, const detail::StateVec& z,
             const Vector& one_minus_l, const detail::StateVec& in, detail::StateVec& out,
             Vector& gl) {
  const Vector pressure = a * one_minus_l.cwiseProduct(z.x);
  const Vector q = in.x - in.s;
  const Vector qc = q.cwiseProduct(p.beta * z.s.cwiseProduct(one_minus_l));
  const Vector w_vec = a * qc;
  const Vector pressure_q = p.beta * one_minus_l.cwiseProduct(pressure).cwiseProduct(q);

  out.x = one_minus_l.cwiseProduct(w_vec) - p.removal_rate() * in.x + p.gamma * in.r +
          p.kappa * in.d;
  out.s = pressure_q;
  out.r = Vector::Zero(z.x.size());
  out.d = Vector::Zero(z.x.size());
  gl += -p.beta * z.s.cwiseProduct(pressure).cwiseProduct(q) - z.x.cwiseProduct(w_vec);
}

// Reverse pass through one RK4 step: given the node state and the incoming
// adjoint at the step's end, returns the adjoint at the step's start and adds
// the step's control cotangent into `gl`. Stage states are re-derived with the
// same code path as the forward integrator.
detail::StateVec step_vjp(const SparseMatrix& a, const EpidemicParams& p,
                          const detail::StateVec& y, const Vector& one_minus_l, double dt,
                          const detail::StateVec& incoming, Vector& gl) {
  detail::Rk4Stages stages;
  Vector scratch(y.x.size());
  (void)detail::rk4_step(a, p, y, one_minus_l, dt, stages, scratch);

  auto scaled = [](const detail::StateVec& v, double c) {
    return detail::StateVec{c * v.x, c * v.s, c * v.r, c * v.d};
  };
  auto add = [](detail::StateVec& target, const detail::StateVec& v, double c) {
    target.x += c * v.x;
    target.s += c * v.s;
    target.r += c * v.r;
    target.d += c * v.d;
  };

  detail::StateVec b4 = detail::StateVec::zero(y.x.size());
  detail::StateVec b3 = b4, b2 = b4, b1 = b4;

  rhs_vjp(a, p, stages.z4, one_minus_l, scaled(incoming, dt / 6.0), b4, gl);

  detail::StateVec k3bar = scaled(incoming, dt / 3.0);
  add(k3bar, b4, dt);
  rhs_vjp(a, p, stages.z3, one_minus_l, k3bar, b3, gl);

  detail::StateVec k2bar = scaled(incoming, dt / 3.0);
  add(k2bar, b3, 0.5 * dt);
  rhs_vjp(a, p, stages.z2, one_minus_l, k2bar, b2, gl);

  detail::StateVec k1bar = scaled(incoming, dt / 6.0);
  add(k1bar, b2, 0.5 * dt);
  rhs_vjp(a, p, y, one_minus_l, k1bar, b1, gl);

  detail::StateVec out = incoming;
  add(out, b1, 1.0);
  add(out, b2, 1.0);
  add(out, b3, 1.0);
  add(out, b4, 1.0);
  return out;
}

struct NodeCost {
  double value;
  detail::StateVec dy;  // partials w.r.t. (x, s, r, d), discount and weight included
  Vector dl;
  Vector f;  // incidence dx/dt at the node
};

NodeCost node_cost(const Trajectory& traj, Index m, const ConstraintMultipliers& mult,
                   const PlannerProblem& problem) {
  const Index n = problem.net.n();
  const HealthState& h = traj.states[static_cast<std::size_t>(m)];
  const Vector l = traj.policy.row(m).transpose();
  const Vector one_minus_l = Vector::Ones(n) - l;
  const EpidemicParams& p = problem.epi;

  const Vector pressure = problem.net.sparse() * one_minus_l.cwiseProduct(h.x);
  const Vector transmission = p.beta * h.s.cwiseProduct(one_minus_l).cwiseProduct(pressure);
  NodeCost out;
  out.f = transmission - p.gamma * h.x - p.kappa * h.x;

  const NodeEconomics econ = node_economics(h, l, problem.econ);
  const Vector slack = out.f.array() - problem.lambda;
  const Vector active = slack.cwiseMax(0.0);
  const Vector e = (-mult.theta1.row(m).transpose() - mult.rho * active).eval();

  const double disc = quad_weight(m, traj.grid_points(), traj.dt()) *
                      std::exp(-problem.rate.delta * traj.times(m));

  out.value = disc * (econ.total_surplus - mult.theta1.row(m).dot(slack) -
                      0.5 * mult.rho * active.squaredNorm());

  const Vector ec = e.cwiseProduct(p.beta * h.s.cwiseProduct(one_minus_l));
  const Vector w_vec = problem.net.sparse() * ec;
  const Vector pressure_e = p.beta * one_minus_l.cwiseProduct(pressure).cwiseProduct(e);

  out.dy.x = disc * (econ.dW_dx + one_minus_l.cwiseProduct(w_vec) - p.removal_rate() * e);
  out.dy.s = disc * (econ.dW_ds + pressure_e);
  out.dy.r = disc * econ.dW_dr;
  out.dy.d = disc * econ.dW_dd;
  out.dl = disc * (econ.dW_dl - p.beta * h.s.cwiseProduct(pressure).cwiseProduct(e) -
                   h.x.cwiseProduct(w_vec));
  return out;
}

void check_sweep_inputs(const Trajectory& traj, const ConstraintMultipliers& mult,
                        const PlannerProblem& problem) {
  problem.validate();
  const Index grid = traj.grid_points();
  const Index n = problem.net.n();
  if (traj.policy.rows() != grid || traj.policy.cols() != n)
    throw ConfigError("sweep: trajectory policy shape mismatch");
  if (mult.theta1.rows() != grid || mult.theta1.cols() != n)
    throw ConfigError("sweep: multiplier shape mismatch");
  if (mult.theta1.size() > 0 && mult.theta1.minCoeff() < 0.0)
    throw ConfigError("sweep: theta1 must be non-negative");
  if (mult.rho < 0.0) throw ConfigError("sweep: rho must be non-negative");
}

}  // namespace

Matrix incidence(const Trajectory& traj, const Network& net, const EpidemicParams& epi) {
  epi.validate();
  const Index grid = traj.grid_points();
  const Index n = net.n();
  if (traj.policy.cols() != n) throw ConfigError("incidence: trajectory/network size mismatch");
  Matrix xdot(grid, n);
  Vector pressure(n);
  for (Index m = 0; m < grid; ++m) {
    const Vector one_minus_l = Vector::Ones(n) - traj.policy.row(m).transpose();
    const detail::StateVec dy =
        detail::rhs(net.sparse(), epi,
                    detail::from_health_state(traj.states[static_cast<std::size_t>(m)]),
                    one_minus_l, pressure);
    xdot.row(m) = dy.x.transpose();
  }
  return xdot;
}

double augmented_objective(const Trajectory& traj, const Matrix& xdot,
                           const ConstraintMultipliers& mult, const PlannerProblem& problem) {
  double value = discounted_aggregate_surplus(traj, problem.econ, problem.rate);
  const Index grid = traj.grid_points();
  for (Index m = 0; m < grid; ++m) {
    const Vector slack = xdot.row(m).transpose().array() - problem.lambda;
    const Vector active = slack.cwiseMax(0.0);
    const double disc =
        quad_weight(m, grid, traj.dt()) * std::exp(-problem.rate.delta * traj.times(m));
    value += disc * (-mult.theta1.row(m).dot(slack) - 0.5 * mult.rho * active.squaredNorm());
  }
  return value;
}

BackwardSweep backward_sweep(const Trajectory& traj, const ConstraintMultipliers& mult,
                             const PlannerProblem& problem) {
  check_sweep_inputs(traj, mult, problem);
  const Index grid = traj.grid_points();
  const Index n = problem.net.n();
  const double dt = traj.dt();
  const SparseMatrix& a = problem.net.sparse();

  BackwardSweep out;
  for (Matrix* m : {&out.adjoint.mu1, &out.adjoint.mu2, &out.adjoint.mu3, &out.adjoint.mu4,
                    &out.adjoint.pv_x, &out.adjoint.pv_s, &out.adjoint.pv_r, &out.adjoint.pv_d})
    m->setZero(grid, n);
  out.gradient.setZero(grid, n);
  out.gradient_density.setZero(grid, n);

  // mu4 solves its own scalar costate equation, a backward quadrature of the
  // discounted surplus sensitivity to s.
  Vector pv4 = Vector::Zero(n);

  NodeCost node = node_cost(traj, grid - 1, mult, problem);
  detail::StateVec p = node.dy;  // terminal node source
  out.gradient.row(grid - 1) = node.dl.transpose();

  auto expose = [&](Index m, const detail::StateVec& pv, const NodeCost& src) {
    // The transported sum weights node m with its full trapezoid weight; the
    // costate of the tail integral over [t_m, T] carries half of it, so the
    // surplus half-weight is removed (zero at the terminal node by
    // construction). Interior weights are dt, the boundary dt/2.
    const double w = quad_weight(m, grid, dt);
    const double restricted = (m == grid - 1) ? 0.0 : 0.5 * dt;
    const double trim = (w - restricted) / std::max(w, 1e-300);
    const double scale = std::exp(problem.rate.delta * traj.times(m));
    out.adjoint.pv_x.row(m) = pv.x.transpose();
    out.adjoint.pv_s.row(m) = pv.s.transpose();
    out.adjoint.pv_r.row(m) = pv.r.transpose();
    out.adjoint.pv_d.row(m) = pv.d.transpose();
    const Vector mx = pv.x - trim * src.dy.x;
    const Vector ms = pv.s - trim * src.dy.s;
    const Vector mr = pv.r - trim * src.dy.r;
    const Vector md = pv.d - trim * src.dy.d;
    out.adjoint.mu1.row(m) = scale * (mx - ms).transpose();
    out.adjoint.mu2.row(m) = scale * (mr - ms).transpose();
    out.adjoint.mu3.row(m) = scale * (md - ms).transpose();
    out.adjoint.mu4.row(m) = scale * pv4.transpose();
  };

  auto w_src = [&](Index m) {
    const NodeEconomics e = node_economics(traj.states[static_cast<std::size_t>(m)],
                                           traj.policy.row(m).transpose(), problem.econ);
    return (std::exp(-problem.rate.delta * traj.times(m)) * e.dW_ds).eval();
  };

  Vector w_src_next = w_src(grid - 1);
  expose(grid - 1, p, node);

  for (Index m = grid - 2; m >= 0; --m) {
    const detail::StateVec y =
        detail::from_health_state(traj.states[static_cast<std::size_t>(m)]);
    const Vector one_minus_l = Vector::Ones(n) - traj.policy.row(m).transpose();

    Vector gl = Vector::Zero(n);
    p = step_vjp(a, problem.epi, y, one_minus_l, dt, p, gl);

    node = node_cost(traj, m, mult, problem);
    out.gradient.row(m) = (node.dl + gl).transpose();
    p.x += node.dy.x;
    p.s += node.dy.s;
    p.r += node.dy.r;
    p.d += node.dy.d;

    const Vector w_src_here = w_src(m);
    pv4 += 0.5 * dt * (w_src_next + w_src_here);
    w_src_next = w_src_here;

    expose(m, p, node);

    if (!p.x.allFinite() || !p.s.allFinite())
      throw NumericalError("adjoint sweep: costates blew up; reduce dt or the penalty rho");
  }

  for (Index m = 0; m < grid; ++m) {
    const double w = quad_weight(m, grid, dt);
    out.gradient_density.row(m) = out.gradient.row(m) / (w > 0.0 ? w : 1.0);
  }
  return out;
}

AdjointState adjoint_integrate(const Trajectory& traj, const ConstraintMultipliers& mult,
                               const PlannerProblem& problem) {
  return backward_sweep(traj, mult, problem).adjoint;
}

Matrix control_gradient(const Trajectory& traj, const AdjointState& adjoint,
                        const ConstraintMultipliers& mult, const PlannerProblem& problem) {
  check_sweep_inputs(traj, mult, problem);
  const Index grid = traj.grid_points();
  const Index n = problem.net.n();
  if (adjoint.pv_x.rows() != grid || adjoint.pv_x.cols() != n)
    throw ConfigError("control gradient: adjoint shape mismatch");
  const double dt = traj.dt();
  const SparseMatrix& a = problem.net.sparse();

  Matrix density(grid, n);
  for (Index m = 0; m < grid; ++m) {
    Vector gl = node_cost(traj, m, mult, problem).dl;
    if (m + 1 < grid) {
      const detail::StateVec incoming = {adjoint.pv_x.row(m + 1).transpose(),
                                         adjoint.pv_s.row(m + 1).transpose(),
                                         adjoint.pv_r.row(m + 1).transpose(),
                                         adjoint.pv_d.row(m + 1).transpose()};
      const detail::StateVec y =
          detail::from_health_state(traj.states[static_cast<std::size_t>(m)]);
      const Vector one_minus_l = Vector::Ones(n) - traj.policy.row(m).transpose();
      (void)step_vjp(a, problem.epi, y, one_minus_l, dt, incoming, gl);
    }
    const double w = quad_weight(m, grid, dt);
    density.row(m) = gl.transpose() / (w > 0.0 ? w : 1.0);
  }
  return density;
}

namespace {

struct Evaluation {
  Trajectory traj;
  Matrix xdot;
  double objective;      // discounted aggregate surplus
  double augmented;      // objective + multiplier/penalty terms
  double max_violation;  // max (xdot - lambda)_+
};

Evaluation evaluate(const Matrix& policy, const ConstraintMultipliers& mult,
                    const PlannerProblem& problem) {
  Evaluation ev;
  ev.traj = integrate(problem.net, problem.epi, policy, problem.initial, problem.horizon,
                      problem.dt);
  ev.xdot = incidence(ev.traj, problem.net, problem.epi);
  ev.objective = discounted_aggregate_surplus(ev.traj, problem.econ, problem.rate);
  ev.augmented = augmented_objective(ev.traj, ev.xdot, mult, problem);
  ev.max_violation = (ev.xdot.array() - problem.lambda).maxCoeff();
  ev.max_violation = std::max(0.0, ev.max_violation);
  return ev;
}

double stationarity_residual(const Matrix& density, const Matrix& policy, double eps) {
  double worst = 0.0;
  for (Index m = 0; m < policy.rows(); ++m)
    for (Index i = 0; i < policy.cols(); ++i) {
      const double l = policy(m, i);
      const double g = density(m, i);
      double r;
      if (l <= eps) r = std::max(g, 0.0);
      else if (l >= 1.0 - eps) r = std::max(-g, 0.0);
      else r = std::abs(g);
      worst = std::max(worst, r);
    }
  return worst;
}

struct StartResult {
  Matrix policy;
  Evaluation eval;
  Matrix theta;
  bool feasible = false;
  bool converged = false;
  int rounds = 0;
};

StartResult run_single_start(const PlannerProblem& problem, const SolverConfig& config,
                             double start_value) {
  const Index grid = problem.grid_points();
  const Index n = problem.net.n();

  Matrix policy = Matrix::Constant(grid, n, start_value);
  ConstraintMultipliers mult{Matrix::Zero(grid, n), config.rho0};
  Evaluation ev = evaluate(policy, mult, problem);

  StartResult best;
  best.policy = policy;
  best.eval = ev;
  best.theta = mult.theta1;
  best.feasible = ev.max_violation <= config.tol_violation;

  auto consider_best = [&](const Matrix& pol, const Evaluation& e, const Matrix& theta) {
    const bool feasible = e.max_violation <= config.tol_violation;
    const bool better = feasible && (!best.feasible || e.objective > best.eval.objective);
    const bool fallback = !best.feasible && !feasible && e.max_violation < best.eval.max_violation;
    if (better || fallback) {
      best.policy = pol;
      best.eval = e;
      best.theta = theta;
      best.feasible = feasible;
    }
  };
  consider_best(policy, ev, mult.theta1);

  double eta = config.step0;
  double prev_objective = ev.objective;
  int stall = 0;

  for (int round = 1; round <= config.max_outer; ++round) {
    best.rounds = round;

    // Inner ascent on the augmented objective at fixed multipliers.
    for (int inner = 0; inner < config.max_inner; ++inner) {
      const BackwardSweep sweep = backward_sweep(ev.traj, mult, problem);
      if (stationarity_residual(sweep.gradient_density, policy, config.kkt_boundary_eps) <=
          0.5 * config.tol_kkt)
        break;

      bool accepted = false;
      double step = eta;
      for (int bt = 0; bt < config.max_backtracks; ++bt) {
        Matrix trial = (policy + step * sweep.gradient_density)
                           .cwiseMax(0.0)
                           .cwiseMin(1.0);
        trial = config.damping * trial + (1.0 - config.damping) * policy;
        const double directional = (sweep.gradient.array() * (trial - policy).array()).sum();
        if (directional <= 0.0) {
          step *= 0.5;
          continue;
        }
        Evaluation trial_ev = evaluate(trial, mult, problem);
        if (trial_ev.augmented >= ev.augmented + 1e-4 * directional) {
          policy = std::move(trial);
          ev = std::move(trial_ev);
          accepted = true;
          if (bt == 0) eta = std::min(eta * 1.5, 1e3);
          else eta = step;
          if (config.accept_callback) config.accept_callback(round, ev.augmented);
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;  // stationary for the current multipliers
    }

    consider_best(policy, ev, mult.theta1);

    const bool feasible = ev.max_violation <= config.tol_violation;
    const double dj = std::abs(ev.objective - prev_objective) /
                      std::max(1.0, std::abs(ev.objective));
    prev_objective = ev.objective;

    if (feasible && dj < config.tol_obj) {
      // Candidate KKT point: check stationarity of the plain Lagrangian.
      const ConstraintMultipliers lag{mult.theta1, 0.0};
      const BackwardSweep sweep = backward_sweep(ev.traj, lag, problem);
      const double stat =
          stationarity_residual(sweep.gradient_density, policy, config.kkt_boundary_eps);
      const double comp =
          (mult.theta1.array() * (problem.lambda - ev.xdot.array())).abs().maxCoeff();
      if (stat <= config.tol_kkt && comp <= config.tol_kkt) {
        best.converged = true;
        break;
      }
    }

    if (dj < config.tol_obj) {
      if (++stall >= config.stall_rounds && feasible) break;
    } else {
      stall = 0;
    }

    // Multiplier and penalty updates.
    mult.theta1 = (mult.theta1 + mult.rho * (ev.xdot.array() - problem.lambda).matrix())
                      .cwiseMax(0.0);
    if (ev.max_violation > config.tol_violation)
      mult.rho = std::min(config.rho_max, mult.rho * config.rho_growth);
    ev.augmented = augmented_objective(ev.traj, ev.xdot, mult, problem);
  }

  consider_best(policy, ev, mult.theta1);
  return best;
}

}  // namespace

Solution solve_optimal_lockdown(const PlannerProblem& problem, const SolverConfig& config) {
  problem.validate();
  config.validate();

  StartResult winner;
  bool have_winner = false;
  int total_rounds = 0;
  for (double start : config.starts) {
    StartResult res = run_single_start(problem, config, start);
    total_rounds += res.rounds;
    log_line(1, "start l=" + format_double(start) + ": objective " +
                    format_double(res.eval.objective) + ", violation " +
                    format_double(res.eval.max_violation) +
                    (res.feasible ? " (feasible)" : " (infeasible)"));
    const bool better =
        !have_winner ||
        (res.feasible && (!winner.feasible || res.eval.objective > winner.eval.objective)) ||
        (!winner.feasible && !res.feasible &&
         res.eval.max_violation < winner.eval.max_violation);
    if (better) {
      winner = std::move(res);
      have_winner = true;
    }
  }

  Solution sol;
  sol.policy = {winner.policy};
  sol.trajectory = winner.eval.traj;
  sol.theta1 = winner.theta;
  sol.objective = winner.eval.objective;
  sol.loss_pct = surplus_loss_pct(winner.eval.traj, problem.econ, problem.rate);
  sol.max_violation = winner.eval.max_violation;
  sol.iterations = total_rounds;
  sol.kkt = verify_kkt(sol, problem, config.kkt_boundary_eps);
  sol.converged = winner.feasible && sol.kkt.within(config.tol_kkt) &&
                  sol.max_violation <= config.tol_violation;
  return sol;
}

KktReport verify_kkt(const Solution& sol, const PlannerProblem& problem, double boundary_eps) {
  const Matrix xdot = incidence(sol.trajectory, problem.net, problem.epi);
  const ConstraintMultipliers lag{sol.theta1, 0.0};
  const BackwardSweep sweep = backward_sweep(sol.trajectory, lag, problem);

  KktReport report;
  report.stationarity =
      stationarity_residual(sweep.gradient_density, sol.policy.values, boundary_eps);
  report.complementary_slackness =
      sol.theta1.size() == 0
          ? 0.0
          : (sol.theta1.array() * (problem.lambda - xdot.array())).abs().maxCoeff();
  report.feasibility = std::max(0.0, (xdot.array() - problem.lambda).maxCoeff());
  return report;
}

CorrelationReport lockdown_centrality_correlation(const Solution& sol, const Vector& centrality) {
  if (centrality.size() < 3)
    throw ConfigError("centrality correlation: needs at least 3 agents");
  const Vector avg = sol.policy.time_average();
  if (avg.size() != centrality.size())
    throw ConfigError("centrality correlation: size mismatch");
  const Correlation c = pearson_correlation(avg, centrality);
  return {c.r, c.p_value};
}

}  // namespace netlock
