#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "rmpsim/types.hpp"

namespace rmpsim {

/// Smooth map between chart coordinates, with Jacobian and Jacobian-rate
/// evaluators. Edges of the RMP-tree.
struct TaskMap {
  int dim_in = 0;
  int dim_out = 0;
  std::function<Vec(const Vec&)> value;
  std::function<Mat(const Vec&)> jacobian;
  // d/dt J along (x, xdot). Defaults to central differences of jacobian.
  std::function<Mat(const Vec&, const Vec&)> jac_rate;

  Mat jac_rate_or_fd(const Vec& x, const Vec& xdot) const;
  Vec jac_rate_times_vel(const Vec& x, const Vec& xdot) const {
    return jac_rate_or_fd(x, xdot) * xdot;
  }
};

TaskMap identity_map(int dim);

/// Constant linear map y = A x.
TaskMap linear_map(const Mat& A);

/// Picks len coordinates starting at offset out of a dim_in-vector.
TaskMap selection_map(int dim_in, int offset, int len);

/// Stacks coordinate blocks (offset, len) of the input, in order.
TaskMap block_selection_map(int dim_in,
                            const std::vector<std::pair<int, int>>& blocks);

/// outer after inner: x -> outer(inner(x)).
TaskMap compose(const TaskMap& outer, const TaskMap& inner);

/// z = ||p_i - p_j|| / scale - offset on the stacked pair space (p_i, p_j).
/// Throws CoincidentRobotsError at p_i == p_j.
TaskMap pair_distance_map(int point_dim, double scale, double offset,
                          const std::string& label);

/// z = x - g with a goal that may be re-pointed between control steps.
TaskMap goal_offset_map(std::shared_ptr<const Vec> goal);

/// Forward propagates a state through a map: (psi(x), J(x) xdot).
State pushforward(const State& parent_state, const TaskMap& map);

/// Central-difference Jacobian of fn at x.
Mat fd_jacobian(const std::function<Vec(const Vec&)>& fn, const Vec& x,
                double h = 1e-6);

}  // namespace rmpsim
