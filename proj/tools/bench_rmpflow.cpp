// Serial vs OpenMP timing of the centralized pullback and the decentralized
// per-robot sweep on an all-pairs team.
#include <chrono>
#include <cstdio>
#include <random>

#include "rmpsim/sim.hpp"

using namespace rmpsim;
using Clock = std::chrono::steady_clock;

namespace {

State random_state(std::mt19937& rng, int robots) {
  std::uniform_real_distribution<double> upos(-4.0, 4.0), uvel(-1.0, 1.0);
  Vec q(2 * robots), qd(2 * robots);
  for (int i = 0; i < 2 * robots; ++i) {
    q(i) = upos(rng);
    qd(i) = uvel(rng);
  }
  return State(std::move(q), std::move(qd));
}

double time_loop(const std::function<void()>& fn, int iters) {
  fn();  // warm up
  const auto t0 = Clock::now();
  for (int k = 0; k < iters; ++k) fn();
  return std::chrono::duration<double>(Clock::now() - t0).count() / iters;
}

}  // namespace

int main(int argc, char** argv) {
  const int robots = argc > 1 ? std::atoi(argv[1]) : 24;
  const int iters = argc > 2 ? std::atoi(argv[2]) : 50;

  RobotTeamSpec team = RobotTeamSpec::planar(robots);
  std::vector<SubtaskAssignment> subtasks;
  for (int i = 0; i < robots; ++i)
    for (int j = i + 1; j < robots; ++j) {
      subtasks.push_back({"collision", {i, j},
                          CollisionAvoidanceParams{0.1, 1e-5, 1e-8, 1.0}});
      subtasks.push_back({"edge", {i, j},
                          DistancePreservationAParams{1.0, 1.0, 1.0, 2.0}});
    }
  for (int i = 0; i < robots; ++i)
    subtasks.push_back({"damper", {i}, DamperParams{0.01, 1.0}});

  std::mt19937 rng(99);
  const State s = random_state(rng, robots);

  RmpTree tree = build_rmp_tree(team, subtasks);
  RmpForest forest(team, subtasks);

  std::printf("robots=%d leaves=%zu iters=%d\n", robots, subtasks.size(),
              iters);
  const double c_serial =
      time_loop([&] { tree.policy(s, /*parallel=*/false); }, iters);
  const double c_par =
      time_loop([&] { tree.policy(s, /*parallel=*/true); }, iters);
  std::printf("centralized    serial %8.3f ms   parallel %8.3f ms   x%.2f\n",
              1e3 * c_serial, 1e3 * c_par, c_serial / c_par);

  const double d_serial = time_loop(
      [&] { compute_control_decentralized_all(forest, s, false); }, iters);
  const double d_par = time_loop(
      [&] { compute_control_decentralized_all(forest, s, true); }, iters);
  std::printf("decentralized  serial %8.3f ms   parallel %8.3f ms   x%.2f\n",
              1e3 * d_serial, 1e3 * d_par, d_serial / d_par);

  // Sanity: parallel and serial must agree bit for bit.
  const Vec a0 = tree.policy(s, false).a;
  const Vec a1 = tree.policy(s, true).a;
  const auto v0 = compute_control_decentralized_all(forest, s, false);
  const auto v1 = compute_control_decentralized_all(forest, s, true);
  bool same = (a0 - a1).cwiseAbs().maxCoeff() == 0.0;
  for (int i = 0; i < robots; ++i)
    same = same && (v0[i] - v1[i]).cwiseAbs().maxCoeff() == 0.0;
  std::printf("serial/parallel bit-identical: %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
