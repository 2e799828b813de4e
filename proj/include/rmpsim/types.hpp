#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace rmpsim {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Position/velocity pair on a manifold chart.
struct State {
  Vec x;
  Vec xdot;

  State() = default;
  State(Vec x_, Vec xdot_) : x(std::move(x_)), xdot(std::move(xdot_)) {
    if (x.size() != xdot.size())
      throw std::invalid_argument("State: x and xdot dimensions differ");
  }
  int dim() const { return static_cast<int>(x.size()); }
  bool finite() const { return x.allFinite() && xdot.allFinite(); }
};

/// Force-inertia pair [f, M].
struct NaturalRmp {
  Vec f;
  Mat M;

  static NaturalRmp zero(int dim) {
    return {Vec::Zero(dim), Mat::Zero(dim, dim)};
  }
  int dim() const { return static_cast<int>(f.size()); }
};

/// Acceleration-inertia pair (a, M).
struct CanonicalRmp {
  Vec a;
  Mat M;
  int dim() const { return static_cast<int>(a.size()); }
};

/// Leaf or node evaluation failure, carrying the node identity.
class EvalError : public std::runtime_error {
 public:
  EvalError(std::string node, const std::string& what)
      : std::runtime_error(node + ": " + what), node_(std::move(node)) {}
  const std::string& node() const { return node_; }
  void prepend_path(const std::string& p) { node_ = p + "/" + node_; }

 private:
  std::string node_;
};

/// Collision barrier evaluated at or inside the safety distance (z <= 0).
/// A crossing indicates integrator failure, so the run aborts.
class BarrierDomainError : public EvalError {
 public:
  using EvalError::EvalError;
};

/// Pair task map evaluated at coincident robot positions.
class CoincidentRobotsError : public EvalError {
 public:
  using EvalError::EvalError;
};

/// Neighbor snapshot missing a required robot state.
class StaleViewError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kSymmetryTol = 1e-9;
inline constexpr double kPsdEigTol = -1e-9;

/// Symmetry within 1e-9 and eigenvalues above -1e-9.
inline bool is_valid_inertia(const Mat& M) {
  if (M.rows() != M.cols() || !M.allFinite()) return false;
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose()));
  return es.eigenvalues().minCoeff() >= kPsdEigTol;
}

}  // namespace rmpsim
