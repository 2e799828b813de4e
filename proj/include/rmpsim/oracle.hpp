#pragma once

#include "rmpsim/policies.hpp"
#include "rmpsim/sim.hpp"

namespace rmpsim {
namespace oracle {

/// Formation interaction graph for the reference potential-field
/// controllers. Robots are planar.
struct PotentialGraph {
  struct Edge {
    int i = 0;
    int j = 0;
    PairPotential potential;
  };
  std::vector<Edge> edges;
  int robots = 0;
  double eta = 2.0;

  int degree(int robot) const;
  void validate() const;
};

/// u = -grad E - eta xdot (original) or u = -Gamma (grad E + eta xdot)
/// (degree-normalized, Gamma_ii = 1/D_i), with E = 1/2 sum E_ij(||.||).
std::vector<Vec> potential_controller(const PotentialGraph& graph,
                                      const State& joint,
                                      bool degree_normalized);

/// The degree-normalized formation controller written out per edge:
/// u_i = -(1/D_i) sum_j ((s - d_ij)/s (x_i - x_j) + eta xdot_i).
/// Quadratic pair potentials only.
std::vector<Vec> eq9_formation_controller(const PotentialGraph& graph,
                                          const State& joint);

/// Individual-level dynamics of a distance-preservation-RMPb-only tree:
/// u_i = -(alpha / (c D_i)) sum_j grad_{x_i} E_ij - (eta / c) xdot_i.
std::vector<Vec> degree_normalized_dynamics(const PotentialGraph& graph,
                                            const State& joint, double alpha,
                                            double c);

/// Max relative error between an analytic Jacobian and central finite
/// differences of fn, h = 1e-6.
double fd_check(const std::function<Vec(const Vec&)>& fn,
                const std::function<Mat(const Vec&)>& jac, const Vec& x,
                double h = 1e-6);

/// Max over time and robots of the position deviation between two logs on
/// the same sampling grid.
double compare_trajectories(const TrajectoryLog& a, const TrajectoryLog& b,
                            const RobotTeamSpec& team);

}  // namespace oracle
}  // namespace rmpsim
