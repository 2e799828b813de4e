#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rmpsim/gds.hpp"
#include "rmpsim/policies.hpp"
#include "rmpsim/team.hpp"
#include "rmpsim/tree.hpp"

using namespace rmpsim;

namespace {

State pair_state(std::initializer_list<double> x,
                 std::initializer_list<double> xd) {
  Vec vx(4), vxd(4);
  int i = 0;
  for (double v : x) vx(i++) = v;
  i = 0;
  for (double v : xd) vxd(i++) = v;
  return State(vx, vxd);
}

/// Leaf RMP pulled to the participant space and resolved.
Vec participant_accel(const LeafPolicy& policy, const State& s) {
  const State leaf_state = pushforward(s, policy.map);
  const NaturalRmp leaf = evaluate_gds_leaf(policy.leaf, leaf_state);
  return resolve(pullback({{leaf, policy.map}}, s)).a;
}

}  // namespace

TEST_CASE("barrier weight values") {
  CHECK(collision_weight(0.5) == doctest::Approx(16.0));
  CHECK(collision_weight(1.0) == doctest::Approx(1.0));
  CHECK(collision_weight(2.0) == doctest::Approx(0.0625));
}

TEST_CASE("barrier weight grows monotonically toward the boundary") {
  double prev = collision_weight(0.1);
  for (double z : {0.01, 0.001}) {
    const double w = collision_weight(z);
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("velocity gate only engages on approach") {
  CHECK(velocity_gate(1.0, 1e-8) == doctest::Approx(1e-8));
  CHECK(velocity_gate(0.0, 1e-8) == doctest::Approx(1e-8));
  CHECK(velocity_gate(-2.0, 1e-8) == doctest::Approx(4.0 + 1e-8));
}

TEST_CASE("collision metric is anisotropic in velocity") {
  LeafPolicy cp = make_collision_avoidance({0.1, 1e-5, 1e-8, 0.2}, "0,1");
  Vec z(1);
  z << 1.0;
  const double approaching =
      cp.leaf.metric(z, (Vec(1) << -1.0).finished())(0, 0);
  const double receding = cp.leaf.metric(z, (Vec(1) << 1.0).finished())(0, 0);
  CHECK(approaching > 1e4 * receding);
}

TEST_CASE("collision leaf throws on the barrier boundary") {
  LeafPolicy cp = make_collision_avoidance({0.1, 1e-5, 1e-8, 0.2}, "0,1");
  Vec z(1), zd(1);
  z << 0.0;
  zd << 0.0;
  CHECK_THROWS_AS(cp.leaf.potential(z), BarrierDomainError);
  CHECK_THROWS_AS(cp.leaf.metric(z, zd), BarrierDomainError);
}

TEST_CASE("collision map measures scaled clearance") {
  LeafPolicy cp = make_collision_avoidance({0.5, 1e-5, 1e-8, 0.2}, "0,1");
  const State s = pair_state({0, 0, 2, 0}, {0, 0, 0, 0});
  CHECK(cp.map.value(s.x)(0) == doctest::Approx(3.0));  // 2/0.5 - 1
}

TEST_CASE("1-d distance edge pulls the pair together beyond d_ij") {
  LeafPolicy dp = make_distance_preservation_a({0.5, 1.0, 1.0, 2.0}, "0,1");
  const State s = pair_state({0, 0, 1, 0}, {0, 0, 0, 0});
  CHECK(dp.map.value(s.x)(0) == doctest::Approx(0.5));  // s - d

  const State leaf_state = pushforward(s, dp.map);
  const NaturalRmp leaf = evaluate_gds_leaf(dp.leaf, leaf_state);
  CHECK(leaf.f(0) == doctest::Approx(-0.5));  // -alpha z
  CHECK(leaf.M(0, 0) == doctest::Approx(1.0));

  const NaturalRmp root = pullback({{leaf, dp.map}}, s);
  CHECK(root.f(0) == doctest::Approx(0.5));
  CHECK(root.f(2) == doctest::Approx(-0.5));
  CHECK(root.f(1) == doctest::Approx(0.0));
}

TEST_CASE("product-space edge force at s=1, d=0.5") {
  LeafPolicy dp = make_distance_preservation_b(
      {0.5, 1.0, 2.0, PairPotential::Kind::Quadratic}, "0,1");
  const State s = pair_state({0, 0, 1, 0}, {0, 0, 0, 0});
  const NaturalRmp leaf = evaluate_gds_leaf(dp.leaf, pushforward(s, dp.map));
  // Phi = 1/2 (s-d)^2: grad_i = (s-d) (x_i-x_j)/s = (-0.5, 0).
  CHECK(leaf.f(0) == doctest::Approx(0.5));
  CHECK(leaf.f(1) == doctest::Approx(0.0));
  CHECK(leaf.f(2) == doctest::Approx(-0.5));
  CHECK(leaf.f(3) == doctest::Approx(0.0));
  CHECK((leaf.M - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pair potential values and derivatives") {
  PairPotential quad{PairPotential::Kind::Quadratic, 0.5};
  CHECK(quad.value(1.0) == doctest::Approx(0.25));
  CHECK(quad.deriv(1.0) == doctest::Approx(1.0));
  CHECK(quad.value(0.5) == doctest::Approx(0.0));

  PairPotential quart{PairPotential::Kind::Quartic, 0.5};
  CHECK(quart.value(1.0) == doctest::Approx(0.5625));  // (1 - 0.25)^2
  CHECK(quart.deriv(1.0) == doctest::Approx(3.0));     // 4 s (s^2 - d^2)
  CHECK(quart.deriv(0.0) == doctest::Approx(0.0));
}

TEST_CASE("quartic edge is defined at coincidence, quadratic is not") {
  LeafPolicy quart = make_distance_preservation_b(
      {0.5, 1.0, 2.0, PairPotential::Kind::Quartic}, "0,1");
  const Vec z = Vec::Zero(4);
  CHECK(quart.leaf.potential_grad(z).cwiseAbs().maxCoeff() == 0.0);

  LeafPolicy quad = make_distance_preservation_b(
      {0.5, 1.0, 2.0, PairPotential::Kind::Quadratic}, "0,1");
  CHECK_THROWS_AS(quad.leaf.potential_grad(z), CoincidentRobotsError);
}

TEST_CASE("the two edge variants differ under rigid pair translation") {
  // Both robots moving identically: the 1-d edge sees zero leaf velocity and
  // produces no damping, the product-space edge damps the common motion.
  const State s = pair_state({0, 0, 0.5, 0}, {1, 0, 1, 0});
  LeafPolicy a = make_distance_preservation_a({0.5, 1.0, 1.0, 2.0}, "0,1");
  LeafPolicy b = make_distance_preservation_b(
      {0.5, 1.0, 2.0, PairPotential::Kind::Quadratic}, "0,1");
  const Vec accel_a = participant_accel(a, s);
  const Vec accel_b = participant_accel(b, s);
  CHECK(accel_a.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(accel_b(0) == doctest::Approx(-2.0));  // -eta/c common damping
  CHECK(accel_b(2) == doctest::Approx(-2.0));
}

TEST_CASE("soft normalization saturates") {
  CHECK(soft_norm(0.0, 10.0) == doctest::Approx(0.0));
  CHECK(soft_norm(1.0, 10.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(soft_norm(0.05, 10.0) > 0.0);
  CHECK(soft_norm(0.05, 10.0) < 1.0);
}

TEST_CASE("attractor weight interpolates between near and far gains") {
  GoalAttractorAParams p;
  p.goal = std::make_shared<Vec>(Vec::Zero(2));
  p.w_u = 10.0;
  p.w_l = 1.0;
  p.sigma = 0.1;
  CHECK(attractor_weight(p, 0.0) == doctest::Approx(10.0));
  CHECK(attractor_weight(p, 10.0) == doctest::Approx(1.0));
  const double mid = attractor_weight(p, 0.1);
  CHECK(mid > 1.0);
  CHECK(mid < 10.0);
}

TEST_CASE("attractor potential is zero at the goal and increasing") {
  GoalAttractorAParams p;
  p.goal = std::make_shared<Vec>(Vec::Zero(2));
  CHECK(attractor_a_potential(p, 0.0) == 0.0);
  double prev = 0.0;
  for (double r : {0.05, 0.1, 0.5, 1.0, 2.0}) {
    const double phi = attractor_a_potential(p, r);
    CHECK(phi > prev);
    prev = phi;
  }
}

TEST_CASE("attractor potential quadrature matches its gradient") {
  GoalAttractorAParams p;
  p.goal = std::make_shared<Vec>(Vec::Zero(2));
  const double r = 0.73, h = 1e-5;
  const double fd = (attractor_a_potential(p, r + h) -
                     attractor_a_potential(p, r - h)) /
                    (2 * h);
  const double analytic = p.beta * attractor_weight(p, r) *
                          soft_norm(r, p.alpha);
  CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
}

TEST_CASE("attractor gradient vanishes exactly at the goal") {
  GoalAttractorAParams p;
  p.goal = std::make_shared<Vec>((Vec(2) << 1.0, 2.0).finished());
  LeafPolicy att = make_goal_attractor_a(p, 2, "r0");
  const Vec z = Vec::Zero(2);
  CHECK(att.leaf.potential_grad(z).cwiseAbs().maxCoeff() == 0.0);
  // Map measures the offset to the goal.
  CHECK(att.map.value(*p.goal).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("attractor goal is shared and re-pointable") {
  GoalAttractorAParams p;
  p.goal = std::make_shared<Vec>(Vec::Zero(2));
  LeafPolicy att = make_goal_attractor_a(p, 2, "r0");
  const Vec x = (Vec(2) << 1.0, 0.0).finished();
  CHECK(att.map.value(x)(0) == doctest::Approx(1.0));
  *p.goal = (Vec(2) << 1.0, 0.0).finished();
  CHECK(att.map.value(x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("PD attractor resolves to -kp z - kd zdot") {
  GoalAttractorBParams p;
  p.goal = std::make_shared<Vec>(Vec::Zero(2));
  p.c = 2.0;
  p.alpha = 4.0;
  p.eta = 1.0;
  LeafPolicy att = make_goal_attractor_b(p, 2, "r0");
  const State s((Vec(2) << 1.0, 0.0).finished(),
                (Vec(2) << 0.0, 3.0).finished());
  const Vec a = participant_accel(att, s);
  CHECK(a(0) == doctest::Approx(-2.0));  // -(alpha/c) z
  CHECK(a(1) == doctest::Approx(-1.5));  // -(eta/c) zdot
}

TEST_CASE("damper resolves to pure viscous deceleration") {
  LeafPolicy damper = make_damper({0.01, 1.0}, 2, "r0");
  const State s(Vec::Zero(2), (Vec(2) << 2.0, -1.0).finished());
  const Vec a = participant_accel(damper, s);
  CHECK(a(0) == doctest::Approx(-200.0));  // -(eta/c) xdot
  CHECK(a(1) == doctest::Approx(100.0));
  CHECK(damper.leaf.potential(s.x) == 0.0);
}

TEST_CASE("pairwise wrapper on the product space matches the edge leaf") {
  PairwisePotentialParams wp;
  wp.potential = {PairPotential::Kind::Quadratic, 0.5};
  wp.c = 1.0;
  wp.eta = 2.0;
  wp.space = PairSpace::Product;
  LeafPolicy generic = make_pairwise_potential(wp, "0,1");
  LeafPolicy edge = make_distance_preservation_b(
      {0.5, 1.0, 2.0, PairPotential::Kind::Quadratic}, "0,1");
  const State s = pair_state({0.1, -0.3, 0.9, 0.4}, {0.5, 0, -0.2, 0.1});
  CHECK((participant_accel(generic, s) - participant_accel(edge, s))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("pairwise wrapper on the distance space") {
  PairwisePotentialParams wp;
  wp.potential = {PairPotential::Kind::Quadratic, 0.5};
  wp.space = PairSpace::Distance;
  LeafPolicy generic = make_pairwise_potential(wp, "0,1");
  const State s = pair_state({0, 0, 1, 0}, {0, 0, 0, 0});
  CHECK(generic.map.value(s.x)(0) == doctest::Approx(1.0));
  // grad of 1/2 (s-d)^2 at s=1, d=0.5.
  CHECK(generic.leaf.potential_grad((Vec(1) << 1.0).finished())(0) ==
        doctest::Approx(0.5));
}

TEST_CASE("parameter validation rejects non-positive gains") {
  CHECK_THROWS_AS(make_collision_avoidance({0.0, 1e-5, 1e-8, 0.2}, "x"),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_distance_preservation_a({1.0, -1.0, 1.0, 2.0}, "x"),
                  std::invalid_argument);
  GoalAttractorAParams bad;
  bad.goal = std::make_shared<Vec>(Vec::Zero(2));
  bad.w_l = 5.0;
  bad.w_u = 1.0;  // violates w_l <= w_u
  CHECK_THROWS_AS(make_goal_attractor_a(bad, 2, "x"), std::invalid_argument);
  GoalAttractorAParams nogoal;
  CHECK_THROWS_AS(make_goal_attractor_a(nogoal, 2, "x"),
                  std::invalid_argument);
}

TEST_CASE("leaf metric partial fallbacks agree with provided partials") {
  GoalAttractorAParams p;
  p.goal = std::make_shared<Vec>(Vec::Zero(2));
  LeafPolicy att = make_goal_attractor_a(p, 2, "r0");
  GdsLeaf fd = att.leaf;
  fd.metric_dx = nullptr;
  fd.metric_dxdot = nullptr;
  const Vec z = (Vec(2) << 0.07, -0.04).finished();
  const Vec zd = (Vec(2) << 0.3, 0.1).finished();
  for (int j = 0; j < 2; ++j) {
    CHECK((att.leaf.metric_dx_or_fd(z, zd, j) - fd.metric_dx_or_fd(z, zd, j))
              .cwiseAbs()
              .maxCoeff() < 1e-5);
    CHECK((att.leaf.metric_dxdot_or_fd(z, zd, j) -
           fd.metric_dxdot_or_fd(z, zd, j))
              .cwiseAbs()
              .maxCoeff() < 1e-7);
  }
}
