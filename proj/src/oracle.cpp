#include "rmpsim/oracle.hpp"

namespace rmpsim {
namespace oracle {

namespace {

Eigen::Vector2d pos(const State& joint, int robot) {
  return joint.x.segment<2>(2 * robot);
}
Eigen::Vector2d vel(const State& joint, int robot) {
  return joint.xdot.segment<2>(2 * robot);
}

double separation(const PotentialGraph::Edge& e, const State& joint) {
  const double s = (pos(joint, e.i) - pos(joint, e.j)).norm();
  if (s == 0.0)
    throw CoincidentRobotsError(
        "edge[" + std::to_string(e.i) + "," + std::to_string(e.j) + "]",
        "coincident adjacent robots");
  return s;
}

}  // namespace

int PotentialGraph::degree(int robot) const {
  int d = 0;
  for (const auto& e : edges)
    if (e.i == robot || e.j == robot) ++d;
  return d;
}

void PotentialGraph::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("graph: eta must be > 0");
  for (const auto& e : edges)
    if (e.i < 0 || e.j < 0 || e.i >= robots || e.j >= robots || e.i == e.j)
      throw std::invalid_argument("graph: bad edge");
}

std::vector<Vec> potential_controller(const PotentialGraph& graph,
                                      const State& joint,
                                      bool degree_normalized) {
  graph.validate();
  // grad of E = 1/2 sum E_ij: each edge contributes 1/2 E' s_hat to i.
  std::vector<Eigen::Vector2d> grad(graph.robots, Eigen::Vector2d::Zero());
  for (const auto& e : graph.edges) {
    const double s = separation(e, joint);
    const Eigen::Vector2d g =
        0.5 * e.potential.deriv(s) * (pos(joint, e.i) - pos(joint, e.j)) / s;
    grad[e.i] += g;
    grad[e.j] -= g;
  }
  std::vector<Vec> u(graph.robots);
  for (int i = 0; i < graph.robots; ++i) {
    Eigen::Vector2d ui = -(grad[i] + graph.eta * vel(joint, i));
    if (degree_normalized) {
      const int d = graph.degree(i);
      if (d > 0) ui /= d;
    }
    u[i] = ui;
  }
  return u;
}

std::vector<Vec> eq9_formation_controller(const PotentialGraph& graph,
                                          const State& joint) {
  graph.validate();
  std::vector<Vec> u(graph.robots, Vec::Zero(2));
  for (int i = 0; i < graph.robots; ++i) {
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    int degree = 0;
    for (const auto& e : graph.edges) {
      if (e.i != i && e.j != i) continue;
      const int other = (e.i == i) ? e.j : e.i;
      const double s = separation(e, joint);
      // Per-edge term: gradient of 1/2 (s - d)^2 plus the damping share.
      sum += (s - e.potential.d) / s * (pos(joint, i) - pos(joint, other)) +
             graph.eta * vel(joint, i);
      ++degree;
    }
    if (degree > 0) u[i] = -sum / degree;
  }
  return u;
}

std::vector<Vec> degree_normalized_dynamics(const PotentialGraph& graph,
                                            const State& joint, double alpha,
                                            double c) {
  graph.validate();
  std::vector<Vec> u(graph.robots, Vec::Zero(2));
  for (int i = 0; i < graph.robots; ++i) {
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    for (const auto& e : graph.edges) {
      if (e.i != i && e.j != i) continue;
      const int other = (e.i == i) ? e.j : e.i;
      const double s = separation(e, joint);
      sum += e.potential.deriv(s) * (pos(joint, i) - pos(joint, other)) / s;
    }
    const int d = graph.degree(i);
    Eigen::Vector2d ui = -(graph.eta / c) * vel(joint, i);
    if (d > 0) ui -= alpha / (c * d) * sum;
    u[i] = ui;
  }
  return u;
}

double fd_check(const std::function<Vec(const Vec&)>& fn,
                const std::function<Mat(const Vec&)>& jac, const Vec& x,
                double h) {
  const Mat J = jac(x);
  const Mat Jfd = fd_jacobian(fn, x, h);
  const double scale = std::max(1.0, Jfd.cwiseAbs().maxCoeff());
  return (J - Jfd).cwiseAbs().maxCoeff() / scale;
}

double compare_trajectories(const TrajectoryLog& a, const TrajectoryLog& b,
                            const RobotTeamSpec& team) {
  if (a.times.size() != b.times.size())
    throw std::invalid_argument("compare_trajectories: grid mismatch");
  double dev = 0.0;
  for (size_t t = 0; t < a.times.size(); ++t) {
    if (a.times[t] != b.times[t])
      throw std::invalid_argument("compare_trajectories: grid mismatch");
    for (int i = 0; i < team.count(); ++i)
      dev = std::max(
          dev, (a.states[t].x.segment(team.offset(i), team.dims[i]) -
                b.states[t].x.segment(team.offset(i), team.dims[i]))
                   .norm());
  }
  return dev;
}

}  // namespace oracle
}  // namespace rmpsim
