#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "netlock/epidemic.hpp"
#include "netlock/generators.hpp"
#include "netlock/rng.hpp"

using namespace netlock;

namespace {

const EpidemicParams kBaseline{0.2, 0.8 / 18.0, 0.2 / 18.0};

// Oracle: root of z = 1 - exp(-m z) by bisection on [tiny, 1], independent of
// the fixed-point iteration under test.
double bisect_scalar_final_size(double m) {
  auto g = [m](double z) { return z - 1.0 + std::exp(-m * z); };
  double lo = 1e-9, hi = 1.0;
  REQUIRE(g(lo) < 0.0);
  REQUIRE(g(hi) > 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Trajectory run(const Network& net, const EpidemicParams& p, double l_const,
               const HealthState& init, double horizon, double dt) {
  const Index grid = static_cast<Index>(std::llround(horizon / dt)) + 1;
  return integrate(net, p, Matrix::Constant(grid, net.n(), l_const), init, horizon, dt);
}

double scale_beta_for_r0(const Network& net, double gamma_plus_kappa, double target_r0) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(net.weights());
  const double spectral = es.eigenvalues().cwiseAbs().maxCoeff();
  return target_r0 * gamma_plus_kappa / spectral;
}

}  // namespace

TEST_SUITE_BEGIN("epidemic");

TEST_CASE("derivative: full lockdown, disease-free point, and a hand-evaluated case") {
  const Network net = build_network(2, {{0, 1, 1.0}});

  HealthState st;
  st.s = Vector::Zero(2);
  st.x = Vector::Zero(2);
  st.r = Vector::Zero(2);
  st.d = Vector::Zero(2);
  st.s << 1.0, 0.5;
  st.x << 0.0, 0.5;

  // Complete lockdown: transmission severed, only removal remains.
  const HealthState full = derivative(st, Vector::Ones(2), net, kBaseline);
  CHECK(full.x(1) == doctest::Approx(-kBaseline.removal_rate() * 0.5));
  CHECK(full.s(0) == 0.0);
  CHECK(full.s(1) == 0.0);

  // No lockdown: dx_0 = beta * s_0 * A_01 * x_1 = 0.2 * 1 * 0.5 = 0.1.
  const HealthState open = derivative(st, Vector::Zero(2), net, kBaseline);
  CHECK(open.x(0) == doctest::Approx(0.1));
  CHECK(open.r(1) == doctest::Approx(kBaseline.gamma * 0.5));
  CHECK(open.d(1) == doctest::Approx(kBaseline.kappa * 0.5));

  // Disease-free equilibrium.
  const HealthState dfe_state = uniform_initial_state(2, 0.0);
  const HealthState dfe = derivative(dfe_state, Vector::Zero(2), net, kBaseline);
  CHECK(dfe.x.cwiseAbs().maxCoeff() == 0.0);
  CHECK(dfe.s.cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(derivative(st, Vector::Constant(2, 1.5), net, kBaseline), ConfigError);
  CHECK_THROWS_AS(derivative(st, Vector::Zero(3), net, kBaseline), ConfigError);
}

TEST_CASE("derivative components cancel per agent") {
  const Network net = generate_small_world(30, 4, 0.2, RngSeed{3});
  Rng rng(RngSeed{17});
  for (int trial = 0; trial < 20; ++trial) {
    HealthState st;
    st.x.resize(30);
    st.s.resize(30);
    st.r.resize(30);
    st.d.resize(30);
    Vector l(30);
    for (Index i = 0; i < 30; ++i) {
      double a = rng.uniform_real(), b = rng.uniform_real(), c = rng.uniform_real();
      if (a > b) std::swap(a, b);
      if (b > c) std::swap(b, c);
      if (a > b) std::swap(a, b);
      st.x(i) = a;
      st.r(i) = b - a;
      st.d(i) = c - b;
      st.s(i) = 1.0 - c;
      l(i) = rng.uniform_real();
    }
    const HealthState d = derivative(st, l, net, kBaseline);
    const Vector sum = d.x + d.s + d.r + d.d;
    CHECK(sum.cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("integrate reproduces the closed-form decay under full lockdown") {
  const Network net = generate_ring_lattice(10, 2);
  const HealthState init = uniform_initial_state(10, 0.1);
  const Trajectory traj = run(net, kBaseline, 1.0, init, 18.0, 0.1);
  const double expected = 0.1 * std::exp(-1.0);
  for (Index i = 0; i < 10; ++i) CHECK(std::abs(traj.states.back().x(i) - expected) < 1e-6);
  // Susceptibles untouched under full lockdown.
  CHECK(traj.states.back().s(0) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("integrate keeps a zero-infection state constant") {
  const Network net = generate_small_world(20, 4, 0.1, RngSeed{5});
  const Trajectory traj = run(net, kBaseline, 0.3, uniform_initial_state(20, 0.0), 30.0, 0.25);
  for (const HealthState& st : traj.states) {
    CHECK(st.x.cwiseAbs().maxCoeff() == 0.0);
    CHECK((st.s.array() - 1.0).abs().maxCoeff() == 0.0);
  }
}

TEST_CASE("integrate: step halving agreement on a path network") {
  const Network net = build_network(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const HealthState init = uniform_initial_state(3, 0.01);
  const Trajectory coarse = run(net, kBaseline, 0.0, init, 30.0, 0.1);
  const Trajectory fine = run(net, kBaseline, 0.0, init, 30.0, 0.05);
  const HealthState& a = coarse.states.back();
  const HealthState& b = fine.states.back();
  for (const auto& [va, vb] :
       {std::pair{&a.x, &b.x}, {&a.s, &b.s}, {&a.r, &b.r}, {&a.d, &b.d}})
    CHECK((*va - *vb).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("integrate: conservation, bounds, monotonicity, and the death/recovery ratio") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Network net = generate_random(40, 100, RngSeed{seed});
    const Trajectory traj = run(net, kBaseline, 0.2, uniform_initial_state(40, 0.02), 60.0, 0.25);
    for (const HealthState& st : traj.states) {
      const Vector total = st.s + st.x + st.r + st.d;
      CHECK((total.array() - 1.0).abs().maxCoeff() <= 1e-9);
      for (const Vector* v : {&st.s, &st.x, &st.r, &st.d}) {
        CHECK(v->minCoeff() >= -1e-9);
        CHECK(v->maxCoeff() <= 1.0 + 1e-9);
      }
    }
    for (std::size_t m = 1; m < traj.states.size(); ++m) {
      CHECK((traj.states[m].r - traj.states[m - 1].r).minCoeff() >= 0.0);
      CHECK((traj.states[m].d - traj.states[m - 1].d).minCoeff() >= 0.0);
    }
    // r(0) = d(0) = 0 makes both pure integrals of x, so d/r = kappa/gamma.
    const HealthState& last = traj.states.back();
    for (Index i = 0; i < 40; ++i)
      if (last.r(i) > 1e-12)
        CHECK(last.d(i) / last.r(i) ==
              doctest::Approx(kBaseline.kappa / kBaseline.gamma).epsilon(1e-12));
  }
}

TEST_CASE("integrate: fourth-order convergence on a smooth problem") {
  const Network net = generate_small_world(20, 4, 0.1, RngSeed{8});
  const HealthState init = uniform_initial_state(20, 0.05);
  auto terminal_x = [&](double dt) {
    return run(net, kBaseline, 0.25, init, 20.0, dt).states.back().x;
  };
  const Vector reference = terminal_x(0.025);  // dt / 8
  const double err_coarse = (terminal_x(0.2) - reference).cwiseAbs().maxCoeff();
  const double err_fine = (terminal_x(0.1) - reference).cwiseAbs().maxCoeff();
  const double ratio = err_coarse / err_fine;
  CHECK(ratio > 8.0);
  CHECK(ratio < 32.0);
}

TEST_CASE("integrate validates the grid and policy") {
  const Network net = generate_ring_lattice(4, 2);
  const HealthState init = uniform_initial_state(4, 0.1);
  CHECK_THROWS_AS(integrate(net, kBaseline, Matrix::Zero(5, 4), init, 1.3, 0.25), ConfigError);
  CHECK_THROWS_AS(integrate(net, kBaseline, Matrix::Zero(3, 4), init, 1.0, 0.25), ConfigError);
  CHECK_THROWS_AS(integrate(net, kBaseline, Matrix::Constant(5, 4, 2.0), init, 1.0, 0.25),
                  ConfigError);
}

TEST_CASE("next-generation matrix and spectral radius") {
  const Network pair = build_network(2, {{0, 1, 1.0}});

  const NextGenMatrix locked = next_generation_matrix(pair, kBaseline, Vector::Ones(2));
  CHECK(locked.m.cwiseAbs().maxCoeff() == 0.0);
  CHECK(locked.r0 == 0.0);

  // beta/(gamma+kappa) = 0.2 * 18 = 3.6 on the two-agent pair.
  const NextGenMatrix open = next_generation_matrix(pair, kBaseline, Vector::Zero(2));
  CHECK(open.m(0, 1) == doctest::Approx(3.6));
  CHECK(open.m(0, 0) == 0.0);
  CHECK(open.r0 == doctest::Approx(3.6).epsilon(1e-9));

  // Dense eigensolver oracle on assorted networks and controls.
  Rng rng(RngSeed{23});
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Network net = generate_random(30, 90, RngSeed{seed});
    Vector l(30);
    for (Index i = 0; i < 30; ++i) l(i) = rng.uniform_real();
    const NextGenMatrix ngm = next_generation_matrix(net, kBaseline, l);
    Eigen::SelfAdjointEigenSolver<Matrix> es(ngm.m);
    CHECK(std::abs(ngm.r0 - es.eigenvalues().cwiseAbs().maxCoeff()) < 1e-8);
  }
}

TEST_CASE("DFE stability classification") {
  CHECK(classify_dfe_stability(0.5) == DfeStability::stable);
  CHECK(classify_dfe_stability(3.6) == DfeStability::unstable);
  CHECK(classify_dfe_stability(1.0) == DfeStability::critical);
  CHECK_THROWS_AS(classify_dfe_stability(-0.1), ConfigError);
}

TEST_CASE("threshold behavior around r0 = 1") {
  const Network net = generate_small_world(60, 4, 0.1, RngSeed{2});
  const HealthState init = uniform_initial_state(60, 1e-4);

  EpidemicParams sub = kBaseline;
  sub.beta = scale_beta_for_r0(net, sub.removal_rate(), 0.8);
  double peak_sub = 0.0;
  for (const HealthState& st : run(net, sub, 0.0, init, 250.0, 0.25).states)
    peak_sub = std::max(peak_sub, st.x.mean());
  CHECK(peak_sub <= 2e-4);

  EpidemicParams super = kBaseline;
  super.beta = scale_beta_for_r0(net, super.removal_rate(), 2.0);
  double peak_super = 0.0;
  for (const HealthState& st : run(net, super, 0.0, init, 250.0, 0.25).states)
    peak_super = std::max(peak_super, st.x.mean());
  CHECK(peak_super >= 5e-4);
}

TEST_CASE("final size: zero matrix, scalar and two-agent oracles") {
  const FinalSize none = final_size(Matrix::Zero(3, 3));
  CHECK(none.zero_solution);
  CHECK(none.z.cwiseAbs().maxCoeff() < 1e-8);

  const Matrix scalar = Matrix::Constant(1, 1, 2.0);
  const FinalSize fs2 = final_size(scalar);
  const double oracle2 = bisect_scalar_final_size(2.0);
  CHECK(std::abs(fs2.z(0) - oracle2) < 1e-10);
  CHECK(std::abs(fs2.z(0) - 0.796812) < 1e-5);
  CHECK(fs2.residual < 1e-10);
  CHECK_FALSE(fs2.zero_solution);

  Matrix two = Matrix::Zero(2, 2);
  two(0, 1) = two(1, 0) = 3.6;
  const FinalSize fs36 = final_size(two);
  const double oracle36 = bisect_scalar_final_size(3.6);
  CHECK(std::abs(fs36.z(0) - oracle36) < 1e-10);
  CHECK(std::abs(fs36.z(1) - oracle36) < 1e-10);
  CHECK(fs36.residual < 1e-10);

  // Subcritical matrix collapses to the zero solution, flagged not thrown.
  const FinalSize sub = final_size(Matrix::Constant(1, 1, 0.5));
  CHECK(sub.zero_solution);
}

TEST_CASE("attack rates") {
  const Network net = generate_small_world(20, 4, 0.1, RngSeed{4});

  // Zero infection: both vectors identically zero.
  const Trajectory none = run(net, kBaseline, 0.0, uniform_initial_state(20, 0.0), 50.0, 0.25);
  const AttackRates ar0 = attack_rate_check(none);
  CHECK(ar0.terminal_rd.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ar0.susceptible_depletion.cwiseAbs().maxCoeff() == 0.0);

  // Full lockdown: only the initially infected mass resolves.
  const Trajectory locked = run(net, kBaseline, 1.0, uniform_initial_state(20, 0.01), 400.0, 0.25);
  const AttackRates ar1 = attack_rate_check(locked);
  CHECK(ar1.terminal_rd(0) == doctest::Approx(0.01).epsilon(1e-4));
  CHECK(ar1.susceptible_depletion(0) == doctest::Approx(0.0));

  // Not yet extinguished: precondition enforced.
  const Trajectory young = run(net, kBaseline, 0.0, uniform_initial_state(20, 0.01), 5.0, 0.25);
  CHECK_THROWS_AS(attack_rate_check(young), NumericalError);
}

TEST_CASE("trajectory csv export") {
  const Network net = build_network(2, {{0, 1, 1.0}});
  const Trajectory traj = run(net, kBaseline, 0.5, uniform_initial_state(2, 0.1), 0.5, 0.25);
  const std::string csv = trajectory_csv(traj);
  CHECK(csv.rfind("t,agent,s,x,r,d,l\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 2);
  const std::string agg = aggregate_csv(traj);
  CHECK(agg.rfind("t,mean_s,mean_x,mean_r,mean_d,mean_l\n", 0) == 0);
  CHECK(std::count(agg.begin(), agg.end(), '\n') == 1 + 3);
}

TEST_SUITE_END();
