#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "rmpsim/oracle.hpp"
#include "rmpsim/sim.hpp"

using namespace rmpsim;

namespace {

State planar_state(const std::vector<Eigen::Vector2d>& pos,
                   const std::vector<Eigen::Vector2d>& vel) {
  Vec q(2 * pos.size()), qd(2 * pos.size());
  for (size_t i = 0; i < pos.size(); ++i) {
    q.segment<2>(2 * i) = pos[i];
    qd.segment<2>(2 * i) = vel[i];
  }
  return State(q, qd);
}

std::vector<Eigen::Vector2d> pentagon(double radius) {
  std::vector<Eigen::Vector2d> pts;
  for (int k = 0; k < 5; ++k) {
    const double a = std::numbers::pi / 2 + k * 2 * std::numbers::pi / 5;
    pts.emplace_back(radius * std::cos(a), radius * std::sin(a));
  }
  return pts;
}

std::vector<SubtaskAssignment> complete_edges_b(
    const std::vector<Eigen::Vector2d>& target, double c, double eta) {
  std::vector<SubtaskAssignment> subtasks;
  for (int i = 0; i < static_cast<int>(target.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(target.size()); ++j)
      subtasks.push_back(
          {"edge", {i, j},
           DistancePreservationBParams{(target[i] - target[j]).norm(), c, eta,
                                       PairPotential::Kind::Quadratic}});
  return subtasks;
}

}  // namespace

TEST_CASE("tree structure: one group node per participant set") {
  RobotTeamSpec team = RobotTeamSpec::planar(3);
  std::vector<SubtaskAssignment> subtasks = {
      {"c01", {0, 1}, CollisionAvoidanceParams{}},
      {"d01", {0, 1}, DistancePreservationAParams{}},
      {"c12", {1, 2}, CollisionAvoidanceParams{}},
      {"damp0", {0}, DamperParams{}},
  };
  RmpTree grouped = build_rmp_tree(team, subtasks, TreeLayout::Grouped);
  // root + 3 group nodes ({0,1}, {1,2}, {0}) + 4 leaves.
  CHECK(grouped.size() == 8);
  CHECK(grouped.leaf_ids().size() == 4);

  RmpTree flat = build_rmp_tree(team, subtasks, TreeLayout::Flat);
  CHECK(flat.size() == 5);  // root + 4 leaves
}

TEST_CASE("subtask validation") {
  RobotTeamSpec team = RobotTeamSpec::planar(2);
  CHECK_THROWS_AS(
      validate_subtask(team, {"empty", {}, DamperParams{}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_subtask(team, {"pair", {0}, CollisionAvoidanceParams{}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_subtask(team, {"unary", {0, 1}, DamperParams{}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_subtask(team, {"order", {1, 0}, DistancePreservationAParams{}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_subtask(team, {"range", {0, 7}, DistancePreservationAParams{}}),
      std::invalid_argument);
}

TEST_CASE("single stretched edge pulls the pair symmetrically") {
  RobotTeamSpec team = RobotTeamSpec::planar(2);
  std::vector<SubtaskAssignment> subtasks = {
      {"edge", {0, 1}, DistancePreservationAParams{0.5, 1.0, 1.0, 2.0}}};
  RmpTree tree = build_rmp_tree(team, subtasks);
  const State s = planar_state({{0, 0}, {1, 0}}, {{0, 0}, {0, 0}});
  const auto a = compute_control(tree, team, s);
  CHECK((a[0] + a[1]).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(a[0](0) > 0.1);  // robot 0 accelerates toward robot 1
  CHECK(std::abs(a[0](1)) < 1e-12);
}

TEST_CASE("pentagon at the target distances is an equilibrium") {
  const auto target = pentagon(0.4);
  RobotTeamSpec team = RobotTeamSpec::planar(5);
  auto subtasks = complete_edges_b(target, 1.0, 2.0);
  RmpTree tree = build_rmp_tree(team, subtasks);
  const State s = planar_state(target, std::vector<Eigen::Vector2d>(
                                           5, Eigen::Vector2d::Zero()));
  const auto a = compute_control(tree, team, s);
  for (const auto& ai : a) CHECK(ai.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("product-edge tree realizes the degree-normalized dynamics") {
  const auto target = pentagon(0.4);
  RobotTeamSpec team = RobotTeamSpec::planar(5);
  const double c = 1.7, eta = 2.3;
  auto subtasks = complete_edges_b(target, c, eta);
  RmpTree tree = build_rmp_tree(team, subtasks);

  oracle::PotentialGraph graph;
  graph.robots = 5;
  graph.eta = eta;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      graph.edges.push_back({i, j,
                             {PairPotential::Kind::Quadratic,
                              (target[i] - target[j]).norm()}});

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Eigen::Vector2d> pos, vel;
    for (int i = 0; i < 5; ++i) {
      pos.emplace_back(2 * u(rng), 2 * u(rng));
      vel.emplace_back(u(rng), u(rng));
    }
    const State s = planar_state(pos, vel);
    const auto tree_a = compute_control(tree, team, s);
    // Phi = 1/2 E per edge, so the oracle's potential coefficient is 1/2.
    const auto oracle_a =
        oracle::degree_normalized_dynamics(graph, s, 0.5, c);
    for (int i = 0; i < 5; ++i)
      CHECK((tree_a[i] - oracle_a[i]).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("grouped and flat layouts agree at the root") {
  RobotTeamSpec team = RobotTeamSpec::planar(3);
  GoalAttractorAParams att;
  att.goal = std::make_shared<Vec>((Vec(2) << 1.0, -1.0).finished());
  std::vector<SubtaskAssignment> subtasks = {
      {"c01", {0, 1}, CollisionAvoidanceParams{0.1, 1e-5, 1e-8, 1.0}},
      {"d01", {0, 1}, DistancePreservationAParams{1.0, 1.0, 1.0, 2.0}},
      {"d12", {1, 2}, DistancePreservationBParams{}},
      {"goal0", {0}, att},
      {"damp2", {2}, DamperParams{}},
  };
  RmpTree grouped = build_rmp_tree(team, subtasks, TreeLayout::Grouped);
  RmpTree flat = build_rmp_tree(team, subtasks, TreeLayout::Flat);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Eigen::Vector2d> pos = {{u(rng), u(rng)},
                                        {2 + u(rng), u(rng)},
                                        {u(rng), 2 + u(rng)}};
    std::vector<Eigen::Vector2d> vel = {{u(rng), u(rng)},
                                        {u(rng), u(rng)},
                                        {u(rng), u(rng)}};
    const State s = planar_state(pos, vel);
    CHECK((grouped.policy(s).a - flat.policy(s).a).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("root metric is the pulled-back sum of leaf metrics") {
  RobotTeamSpec team = RobotTeamSpec::planar(2);
  std::vector<SubtaskAssignment> subtasks = {
      {"damp0", {0}, DamperParams{0.5, 1.0}},
      {"damp1", {1}, DamperParams{0.25, 1.0}},
  };
  RmpTree tree = build_rmp_tree(team, subtasks);
  const State s(Vec::Zero(4), Vec::Zero(4));
  const Mat G = root_metric(tree, s);
  Mat expected = Mat::Zero(4, 4);
  expected.topLeftCorner(2, 2) = 0.5 * Mat::Identity(2, 2);
  expected.bottomRightCorner(2, 2) = 0.25 * Mat::Identity(2, 2);
  CHECK((G - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("centralized Lyapunov equals the root quadratic form") {
  const auto target = pentagon(0.4);
  RobotTeamSpec team = RobotTeamSpec::planar(5);
  auto subtasks = complete_edges_b(target, 1.0, 2.0);
  RmpTree tree = build_rmp_tree(team, subtasks);
  const State s = planar_state(pentagon(1.0),
                               std::vector<Eigen::Vector2d>(
                                   5, Eigen::Vector2d(0.3, -0.1)));
  const double v = lyapunov_centralized(tree, s);
  const Mat G = root_metric(tree, s);
  double phi = 0.0;
  for (const auto& st : subtasks) {
    LeafPolicy p = instantiate_leaf(team, st);
    Vec q(4);
    q.head(2) = s.x.segment<2>(2 * st.participants[0]);
    q.tail(2) = s.x.segment<2>(2 * st.participants[1]);
    phi += p.leaf.potential(p.map.value(q));
  }
  CHECK(v == doctest::Approx(0.5 * s.xdot.dot(G * s.xdot) + phi));
}

TEST_CASE("root potential gradient matches finite differences") {
  RobotTeamSpec team = RobotTeamSpec::planar(2);
  GoalAttractorAParams att;
  att.goal = std::make_shared<Vec>((Vec(2) << 0.5, 0.5).finished());
  std::vector<SubtaskAssignment> subtasks = {
      {"edge", {0, 1}, DistancePreservationAParams{0.7, 1.0, 1.0, 2.0}},
      {"goal0", {0}, att},
  };
  RmpTree tree = build_rmp_tree(team, subtasks);
  const Vec q = (Vec(4) << 0.1, -0.2, 1.1, 0.4).finished();
  const Vec g = root_potential_grad(tree, State(q, Vec::Zero(4)));
  auto phi = [&](const Vec& x) {
    return (Vec(1) << total_potential(team, subtasks, x)).finished();
  };
  const Mat gfd = fd_jacobian(phi, q);
  CHECK((g.transpose() - gfd).cwiseAbs().maxCoeff() < 1e-6);
}

// ---------------------------------------------------------------------------
// Partial-flow forest

TEST_CASE("forest structure: one copy per participant, shared neighbors") {
  RobotTeamSpec team = RobotTeamSpec::planar(3);
  std::vector<SubtaskAssignment> subtasks = {
      {"d01", {0, 1}, DistancePreservationAParams{}},
      {"d12", {1, 2}, DistancePreservationAParams{}},
      {"damp1", {1}, DamperParams{}},
  };
  RmpForest forest(team, subtasks);
  CHECK(forest.tree_of(0).size() == 1);
  CHECK(forest.tree_of(1).size() == 3);
  CHECK(forest.tree_of(2).size() == 1);
  CHECK(forest.neighbors_of(0) == std::vector<int>{1});
  CHECK(forest.neighbors_of(1) == std::vector<int>({0, 2}));
}

TEST_CASE("partial pushforward sees only the owner's velocity") {
  RobotTeamSpec team = RobotTeamSpec::planar(2);
  std::vector<SubtaskAssignment> subtasks = {
      {"d01", {0, 1}, DistancePreservationAParams{0.5, 1.0, 1.0, 2.0}}};
  RmpForest forest(team, subtasks);
  // Both robots closing at unit rate: full zdot = -2, each partial = -1.
  const State joint = planar_state({{0, 0}, {2, 0}}, {{1, 0}, {-1, 0}});
  double partial_sum = 0.0;
  for (int robot = 0; robot < 2; ++robot) {
    const State own(joint.x.segment<2>(2 * robot),
                    joint.xdot.segment<2>(2 * robot));
    const NeighborView view = make_view(forest, robot, joint);
    const State leaf = decentralized_pushforward(
        forest, forest.tree_of(robot)[0], robot, own, view);
    CHECK(leaf.x(0) == doctest::Approx(1.5));  // s - d
    CHECK(leaf.xdot(0) == doctest::Approx(-1.0));
    partial_sum += leaf.xdot(0);
  }
  // The partial velocities decompose the true leaf velocity.
  TaskMap map = pair_distance_map(2, 1.0, 0.5, "pair");
  const State full = pushforward(joint, map);
  CHECK(partial_sum == doctest::Approx(full.xdot(0)));
}

TEST_CASE("stale neighbor views are rejected") {
  RobotTeamSpec team = RobotTeamSpec::planar(2);
  std::vector<SubtaskAssignment> subtasks = {
      {"d01", {0, 1}, DistancePreservationAParams{}}};
  RmpForest forest(team, subtasks);
  const State own((Vec(2) << 0, 0).finished(), Vec::Zero(2));
  NeighborView empty;  // robot 1 missing
  CHECK_THROWS_AS(
      compute_control_decentralized(forest, 0, own, empty), StaleViewError);
}

TEST_CASE("damper-only robot decelerates identically in both modes") {
  RobotTeamSpec team = RobotTeamSpec::planar(1);
  std::vector<SubtaskAssignment> subtasks = {
      {"damp", {0}, DamperParams{0.01, 1.0}}};
  RmpForest forest(team, subtasks);
  RmpTree tree = build_rmp_tree(team, subtasks);
  const State s(Vec::Zero(2), (Vec(2) << 1.0, -0.5).finished());
  const Vec central = compute_control(tree, team, s)[0];
  const Vec local = compute_control_decentralized_all(forest, s)[0];
  CHECK(central(0) == doctest::Approx(-100.0));
  CHECK((central - local).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("constant-metric forests reproduce the centralized control") {
  const auto target = pentagon(0.4);
  RobotTeamSpec team = RobotTeamSpec::planar(5);
  auto subtasks = complete_edges_b(target, 1.3, 2.0);
  for (int i = 0; i < 5; ++i)
    subtasks.push_back({"damp", {i}, DamperParams{0.05, 0.7}});
  RmpTree tree = build_rmp_tree(team, subtasks);
  RmpForest forest(team, subtasks);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Eigen::Vector2d> pos, vel;
    for (int i = 0; i < 5; ++i) {
      pos.emplace_back(3 * u(rng), 3 * u(rng) + i);
      vel.emplace_back(u(rng), u(rng));
    }
    const State s = planar_state(pos, vel);
    const auto central = compute_control(tree, team, s);
    const auto local = compute_control_decentralized_all(forest, s);
    for (int i = 0; i < 5; ++i)
      CHECK((central[i] - local[i]).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("mirror-symmetric configurations give mirrored controls") {
  RobotTeamSpec team = RobotTeamSpec::planar(2);
  std::vector<SubtaskAssignment> subtasks = {
      {"c", {0, 1}, CollisionAvoidanceParams{0.1, 1e-5, 1e-5, 0.2}},
      {"d", {0, 1}, DistancePreservationAParams{0.5, 1.0, 1.0, 2.0}},
  };
  RmpForest forest(team, subtasks);
  // Robots mirrored about the y-axis, velocities mirrored too.
  const State s = planar_state({{-1, 0.3}, {1, 0.3}}, {{0.4, 0.1},
                                                       {-0.4, 0.1}});
  const auto a = compute_control_decentralized_all(forest, s);
  CHECK(a[0](0) == doctest::Approx(-a[1](0)));
  CHECK(a[0](1) == doctest::Approx(a[1](1)));
}

TEST_CASE("decentralized Lyapunov counts shared potentials once") {
  RobotTeamSpec team = RobotTeamSpec::planar(2);
  std::vector<SubtaskAssignment> subtasks = {
      {"d01", {0, 1}, DistancePreservationAParams{0.5, 1.0, 1.0, 2.0}}};
  RmpForest forest(team, subtasks);
  // At rest: V is purely the single edge potential 1/2 alpha (s-d)^2.
  const State rest = planar_state({{0, 0}, {1.5, 0}}, {{0, 0}, {0, 0}});
  CHECK(lyapunov_decentralized(forest, rest) ==
        doctest::Approx(0.5 * 1.0 * 1.0));
  // With motion: kinetic adds 1/2 c (zdot^i)^2 per copy.
  const State moving = planar_state({{0, 0}, {1.5, 0}}, {{1, 0}, {0, 0}});
  CHECK(lyapunov_decentralized(forest, moving) ==
        doctest::Approx(0.5 + 0.5 * 1.0 * 1.0));  // zdot^0 = -1, zdot^1 = 0
}
