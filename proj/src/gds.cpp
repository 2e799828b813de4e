#include "rmpsim/gds.hpp"

namespace rmpsim {

namespace {
constexpr double kFdStep = 1e-6;
constexpr double kSvdCutoff = 1e-8;

void check_dims(const GdsLeaf& leaf, const State& s) {
  if (s.dim() != leaf.dim)
    throw std::invalid_argument(leaf.name + ": state dimension mismatch");
}
}  // namespace

Mat GdsLeaf::metric_dx_or_fd(const Vec& x, const Vec& xdot, int j) const {
  if (metric_dx) return metric_dx(x, xdot, j);
  Vec xp = x, xm = x;
  xp(j) += kFdStep;
  xm(j) -= kFdStep;
  return (metric(xp, xdot) - metric(xm, xdot)) / (2.0 * kFdStep);
}

Mat GdsLeaf::metric_dxdot_or_fd(const Vec& x, const Vec& xdot, int j) const {
  if (metric_dxdot) return metric_dxdot(x, xdot, j);
  Vec vp = xdot, vm = xdot;
  vp(j) += kFdStep;
  vm(j) -= kFdStep;
  return (metric(x, vp) - metric(x, vm)) / (2.0 * kFdStep);
}

Mat curvature_inertia(const GdsLeaf& leaf, const State& s) {
  check_dims(leaf, s);
  const int m = leaf.dim;
  // Column c of Xi is 1/2 (dG/dxdot_c) xdot.
  Mat Xi(m, m);
  for (int c = 0; c < m; ++c)
    Xi.col(c) = 0.5 * leaf.metric_dxdot_or_fd(s.x, s.xdot, c) * s.xdot;
  return Xi;
}

Mat metric_rate(const GdsLeaf& leaf, const State& s) {
  check_dims(leaf, s);
  const int m = leaf.dim;
  Mat Gdot = Mat::Zero(m, m);
  for (int j = 0; j < m; ++j)
    Gdot += s.xdot(j) * leaf.metric_dx_or_fd(s.x, s.xdot, j);
  return Gdot;
}

Vec curvature_force(const GdsLeaf& leaf, const State& s) {
  check_dims(leaf, s);
  const int m = leaf.dim;
  Vec grad_quad(m);
  for (int j = 0; j < m; ++j)
    grad_quad(j) =
        s.xdot.dot(leaf.metric_dx_or_fd(s.x, s.xdot, j) * s.xdot);
  return metric_rate(leaf, s) * s.xdot - 0.5 * grad_quad;
}

NaturalRmp evaluate_gds_leaf(const GdsLeaf& leaf, const State& s) {
  check_dims(leaf, s);
  const Mat G = leaf.metric(s.x, s.xdot);
  const Mat B = leaf.damping(s.x, s.xdot);
  const Vec grad = leaf.potential_grad(s.x);
  if (!G.allFinite() || !B.allFinite() || !grad.allFinite())
    throw EvalError(leaf.name, "non-finite leaf evaluation");
  NaturalRmp out;
  out.M = G + curvature_inertia(leaf, s);
  out.f = -grad - B * s.xdot - curvature_force(leaf, s);
  if (!out.f.allFinite() || !out.M.allFinite())
    throw EvalError(leaf.name, "non-finite leaf RMP");
  return out;
}

NaturalRmp evaluate_partial_leaf(const GdsLeaf& leaf, const State& s) {
  check_dims(leaf, s);
  const Mat G = leaf.metric(s.x, s.xdot);
  const Mat B = leaf.damping(s.x, s.xdot);
  const Vec grad = leaf.potential_grad(s.x);
  if (!G.allFinite() || !B.allFinite() || !grad.allFinite())
    throw EvalError(leaf.name, "non-finite leaf evaluation");
  NaturalRmp out;
  out.M = G + curvature_inertia(leaf, s);
  out.f = -grad - B * s.xdot - 0.5 * metric_rate(leaf, s) * s.xdot;
  if (!out.f.allFinite() || !out.M.allFinite())
    throw EvalError(leaf.name, "non-finite leaf RMP");
  return out;
}

CanonicalRmp resolve(const NaturalRmp& rmp) {
  if (!rmp.f.allFinite() || !rmp.M.allFinite())
    throw std::invalid_argument("resolve: non-finite input");
  Eigen::JacobiSVD<Mat> svd(rmp.M,
                            Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  CanonicalRmp out;
  out.M = rmp.M;
  if (sv.size() == 0 || sv(0) <= 0.0) {
    out.a = Vec::Zero(rmp.dim());
    return out;
  }
  const double cutoff = kSvdCutoff * sv(0);
  Vec inv = Vec::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
  out.a = svd.matrixV() * inv.asDiagonal() *
          (svd.matrixU().transpose() * rmp.f);
  return out;
}

}  // namespace rmpsim
