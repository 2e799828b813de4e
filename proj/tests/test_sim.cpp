#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rmpsim/scenario.hpp"

using namespace rmpsim;

TEST_CASE("step validates dt") {
  Policy zero = [](const State& s) { return Vec(Vec::Zero(s.dim())); };
  const State s(Vec::Zero(2), Vec::Zero(2));
  CHECK_THROWS_AS(step(zero, s, 0.0, Integrator::Rk4), std::invalid_argument);
  CHECK_THROWS_AS(step(zero, s, -0.1, Integrator::SemiImplicitEuler),
                  std::invalid_argument);
}

TEST_CASE("zero policy drifts linearly") {
  Policy zero = [](const State& s) { return Vec(Vec::Zero(s.dim())); };
  State s((Vec(2) << 0.0, 1.0).finished(), (Vec(2) << 1.0, -2.0).finished());
  for (int k = 0; k < 100; ++k) s = step(zero, s, 0.01, Integrator::Rk4);
  CHECK(s.x(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.x(1) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.xdot(0) == doctest::Approx(1.0));
}

TEST_CASE("RK4 integrates the harmonic oscillator to 4th order") {
  Policy spring = [](const State& s) { return Vec(-s.x); };
  State s((Vec(1) << 1.0).finished(), (Vec(1) << 0.0).finished());
  const double dt = 0.01;
  const int n = static_cast<int>(std::round(2 * std::numbers::pi / dt));
  for (int k = 0; k < n; ++k) s = step(spring, s, dt, Integrator::Rk4);
  // One full period; position error dominated by the fractional step.
  CHECK(std::abs(s.x(0) - std::cos(n * dt)) < 1e-8);
}

TEST_CASE("semi-implicit Euler conserves oscillator energy to O(dt)") {
  Policy spring = [](const State& s) { return Vec(-s.x); };
  State s((Vec(1) << 1.0).finished(), (Vec(1) << 0.0).finished());
  const double dt = 1e-3;
  double max_drift = 0.0;
  for (int k = 0; k < 10000; ++k) {
    s = step(spring, s, dt, Integrator::SemiImplicitEuler);
    const double e = 0.5 * (s.x(0) * s.x(0) + s.xdot(0) * s.xdot(0));
    max_drift = std::max(max_drift, std::abs(e - 0.5));
  }
  CHECK(max_drift < 1e-3);  // symplectic: bounded oscillation, no growth
}

TEST_CASE("empty-subtask scenario stays static") {
  Scenario sc;
  sc.name = "static";
  sc.team = RobotTeamSpec::planar(2);
  sc.initial = State((Vec(4) << 0, 0, 1, 1).finished(), Vec::Zero(4));
  sc.sim.t_final = 1.0;
  TrajectoryLog log = run(sc, sc.sim);
  CHECK_FALSE(log.terminated_early);
  CHECK(log.steps_completed == 100);
  CHECK((log.states.back().x - sc.initial.x).cwiseAbs().maxCoeff() == 0.0);
  CHECK(log.max_lyapunov_increase <= 0.0);
}

TEST_CASE("simulation runs are deterministic") {
  ScenarioFile a = builtin_scenario("fig8-centralized");
  ScenarioFile b = builtin_scenario("fig8-centralized");
  a.scenario.sim.t_final = 1.0;
  b.scenario.sim.t_final = 1.0;
  TrajectoryLog la = run(a.scenario, a.scenario.sim);
  TrajectoryLog lb = run(b.scenario, b.scenario.sim);
  REQUIRE(la.states.size() == lb.states.size());
  for (size_t t = 0; t < la.states.size(); ++t) {
    CHECK((la.states[t].x - lb.states[t].x).cwiseAbs().maxCoeff() == 0.0);
    CHECK((la.states[t].xdot - lb.states[t].xdot).cwiseAbs().maxCoeff() ==
          0.0);
  }
  CHECK(emit_csv(a, la) == emit_csv(b, lb));
}

TEST_CASE("diagnostics report distances, edge errors, and speeds") {
  Scenario sc;
  sc.team = RobotTeamSpec::planar(2);
  sc.subtasks = {
      {"edge", {0, 1}, DistancePreservationAParams{0.5, 1.0, 1.0, 2.0}}};
  sc.formation_edges = {{0, 1}};
  sc.formation_dists = {0.5};
  const State s((Vec(4) << 0, 0, 2, 0).finished(),
                (Vec(4) << 0.3, 0.4, 0, 0).finished());
  const DiagnosticsRow row = diagnostics(sc, s);
  CHECK(row.min_distance == doctest::Approx(2.0));
  CHECK(row.max_edge_error == doctest::Approx(1.5));
  CHECK(row.max_speed == doctest::Approx(0.5));
  CHECK(row.grad_norm > 0.0);
}

TEST_CASE("cadence thins the sample grid but keeps the last row") {
  Scenario sc;
  sc.name = "static";
  sc.team = RobotTeamSpec::planar(1);
  sc.initial = State(Vec::Zero(2), Vec::Zero(2));
  sc.sim.t_final = 1.0;
  SimConfig cfg = sc.sim;
  cfg.cadence = 30;
  TrajectoryLog log = run(sc, cfg);
  // t = 0, 0.3, 0.6, 0.9, 1.0.
  CHECK(log.times.size() == 5);
  CHECK(log.times.back() == doctest::Approx(1.0));
}

TEST_CASE("orbit goals move along the circle and are frozen per step") {
  ScenarioFile file = builtin_scenario("cyclic-pursuit");
  Scenario& sc = file.scenario;
  const auto& orbit = sc.orbits.at(0);
  sc.update_goals(0.0);
  const auto* att =
      std::get_if<GoalAttractorAParams>(&sc.subtasks[orbit.subtask].params);
  REQUIRE(att != nullptr);
  const Vec g0 = *att->goal;
  CHECK((g0 - sc.initial.x.segment<2>(0)).norm() < 1e-12);  // starts on goal
  sc.update_goals(10.0);
  const Vec g1 = *att->goal;
  // Moved 0.6 rad along the unit circle.
  CHECK((g1 - orbit.center).norm() == doctest::Approx(orbit.radius));
  const double angle =
      std::atan2(g1(1) - orbit.center(1), g1(0) - orbit.center(0)) -
      std::atan2(g0(1) - orbit.center(1), g0(0) - orbit.center(0));
  CHECK(std::abs(std::remainder(angle - 0.6, 2 * std::numbers::pi)) < 1e-9);
}

TEST_CASE("starting inside the safety distance aborts with a record") {
  Scenario sc;
  sc.name = "crash";
  sc.team = RobotTeamSpec::planar(2);
  sc.subtasks = {
      {"c", {0, 1}, CollisionAvoidanceParams{0.5, 1e-5, 1e-8, 0.2}}};
  // 0.3 m apart with d_s = 0.5: the barrier coordinate is already negative.
  sc.initial = State((Vec(4) << 0, 0, 0.3, 0).finished(), Vec::Zero(4));
  sc.sim.dt = 0.01;
  sc.sim.t_final = 1.0;
  TrajectoryLog log = run(sc, sc.sim);
  CHECK(log.terminated_early);
  CHECK(log.termination_reason.find("barrier") != std::string::npos);
  CHECK(log.steps_completed < 100);
}

TEST_CASE("total potential gradient is conservative across modes") {
  ScenarioFile file = builtin_scenario("fig3a");
  const Scenario& sc = file.scenario;
  const Vec q = sc.initial.x;
  auto phi = [&](const Vec& x) {
    return (Vec(1) << total_potential(sc.team, sc.subtasks, x)).finished();
  };
  const Vec g = total_potential_grad(sc.team, sc.subtasks, q);
  const Mat gfd = fd_jacobian(phi, q);
  CHECK((g.transpose() - gfd).cwiseAbs().maxCoeff() < 1e-5);
}
