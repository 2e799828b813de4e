#include "rmpsim/task_map.hpp"

namespace rmpsim {

Mat TaskMap::jac_rate_or_fd(const Vec& x, const Vec& xdot) const {
  if (jac_rate) return jac_rate(x, xdot);
  const double h = 1e-6;
  return (jacobian(x + h * xdot) - jacobian(x - h * xdot)) / (2.0 * h);
}

TaskMap identity_map(int dim) {
  TaskMap m;
  m.dim_in = dim;
  m.dim_out = dim;
  m.value = [](const Vec& x) { return x; };
  m.jacobian = [dim](const Vec&) { return Mat::Identity(dim, dim); };
  m.jac_rate = [dim](const Vec&, const Vec&) { return Mat::Zero(dim, dim); };
  return m;
}

TaskMap linear_map(const Mat& A) {
  TaskMap m;
  m.dim_in = static_cast<int>(A.cols());
  m.dim_out = static_cast<int>(A.rows());
  m.value = [A](const Vec& x) { return Vec(A * x); };
  m.jacobian = [A](const Vec&) { return A; };
  m.jac_rate = [A](const Vec&, const Vec&) {
    return Mat::Zero(A.rows(), A.cols());
  };
  return m;
}

TaskMap selection_map(int dim_in, int offset, int len) {
  return block_selection_map(dim_in, {{offset, len}});
}

TaskMap block_selection_map(int dim_in,
                            const std::vector<std::pair<int, int>>& blocks) {
  int out = 0;
  for (const auto& [off, len] : blocks) {
    if (off < 0 || off + len > dim_in)
      throw std::invalid_argument("block_selection_map: block out of range");
    out += len;
  }
  Mat A = Mat::Zero(out, dim_in);
  int row = 0;
  for (const auto& [off, len] : blocks) {
    A.block(row, off, len, len).setIdentity();
    row += len;
  }
  return linear_map(A);
}

TaskMap compose(const TaskMap& outer, const TaskMap& inner) {
  if (outer.dim_in != inner.dim_out)
    throw std::invalid_argument("compose: dimension mismatch");
  TaskMap m;
  m.dim_in = inner.dim_in;
  m.dim_out = outer.dim_out;
  m.value = [outer, inner](const Vec& x) { return outer.value(inner.value(x)); };
  m.jacobian = [outer, inner](const Vec& x) {
    return Mat(outer.jacobian(inner.value(x)) * inner.jacobian(x));
  };
  m.jac_rate = [outer, inner](const Vec& x, const Vec& xdot) {
    const Vec y = inner.value(x);
    const Mat Ji = inner.jacobian(x);
    const Vec ydot = Ji * xdot;
    // d/dt (Jo Ji) = Jo_dot Ji + Jo Ji_dot
    return Mat(outer.jac_rate_or_fd(y, ydot) * Ji +
               outer.jacobian(y) * inner.jac_rate_or_fd(x, xdot));
  };
  return m;
}

TaskMap pair_distance_map(int point_dim, double scale, double offset,
                          const std::string& label) {
  TaskMap m;
  const int n = 2 * point_dim;
  m.dim_in = n;
  m.dim_out = 1;
  auto rel = [point_dim](const Vec& x) {
    return Vec(x.head(point_dim) - x.tail(point_dim));
  };
  auto check = [label](double s) {
    if (s <= 0.0)
      throw CoincidentRobotsError(label, "coincident robots in distance map");
  };
  m.value = [rel, scale, offset, check](const Vec& x) {
    const double s = rel(x).norm();
    check(s);
    Vec z(1);
    z(0) = s / scale - offset;
    return z;
  };
  m.jacobian = [rel, scale, point_dim, n, check](const Vec& x) {
    const Vec p = rel(x);
    const double s = p.norm();
    check(s);
    const Vec phat = p / s;
    Mat J(1, n);
    J.block(0, 0, 1, point_dim) = phat.transpose() / scale;
    J.block(0, point_dim, 1, point_dim) = -phat.transpose() / scale;
    return J;
  };
  m.jac_rate = [rel, scale, point_dim, n, check](const Vec& x, const Vec& xdot) {
    const Vec p = rel(x);
    const Vec pdot = xdot.head(point_dim) - xdot.tail(point_dim);
    const double s = p.norm();
    check(s);
    const Vec phat = p / s;
    const Vec phat_dot = (pdot - phat * phat.dot(pdot)) / s;
    Mat Jd(1, n);
    Jd.block(0, 0, 1, point_dim) = phat_dot.transpose() / scale;
    Jd.block(0, point_dim, 1, point_dim) = -phat_dot.transpose() / scale;
    return Jd;
  };
  return m;
}

TaskMap goal_offset_map(std::shared_ptr<const Vec> goal) {
  const int dim = static_cast<int>(goal->size());
  TaskMap m;
  m.dim_in = dim;
  m.dim_out = dim;
  m.value = [goal](const Vec& x) { return Vec(x - *goal); };
  m.jacobian = [dim](const Vec&) { return Mat::Identity(dim, dim); };
  m.jac_rate = [dim](const Vec&, const Vec&) { return Mat::Zero(dim, dim); };
  return m;
}

State pushforward(const State& parent_state, const TaskMap& map) {
  if (parent_state.dim() != map.dim_in)
    throw std::invalid_argument("pushforward: state dimension mismatch");
  return State(map.value(parent_state.x),
               map.jacobian(parent_state.x) * parent_state.xdot);
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& fn, const Vec& x,
                double h) {
  const Vec y0 = fn(x);
  Mat J(y0.size(), x.size());
  for (int j = 0; j < x.size(); ++j) {
    Vec xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    J.col(j) = (fn(xp) - fn(xm)) / (2.0 * h);
  }
  return J;
}

}  // namespace rmpsim
