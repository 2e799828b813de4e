#pragma once

#include <functional>
#include <string>

#include "rmpsim/types.hpp"

namespace rmpsim {

/// Geometric dynamical system leaf: metric G, damping B, potential Phi,
/// plus the metric partials needed to form the curvature terms.
struct GdsLeaf {
  int dim = 0;
  std::string name = "leaf";

  std::function<Mat(const Vec&, const Vec&)> metric;   // G(x, xdot)
  std::function<Mat(const Vec&, const Vec&)> damping;  // B(x, xdot)
  std::function<double(const Vec&)> potential;         // Phi(x); may be null
  std::function<Vec(const Vec&)> potential_grad;       // grad Phi(x)

  // dG/dx_j and dG/dxdot_j as m x m matrices. Finite-difference fallback
  // on `metric` when unset.
  std::function<Mat(const Vec&, const Vec&, int)> metric_dx;
  std::function<Mat(const Vec&, const Vec&, int)> metric_dxdot;

  Mat metric_dx_or_fd(const Vec& x, const Vec& xdot, int j) const;
  Mat metric_dxdot_or_fd(const Vec& x, const Vec& xdot, int j) const;
};

/// Xi_G = 1/2 sum_i xdot_i dG_col_i/dxdot; the velocity-induced inertia
/// correction.
Mat curvature_inertia(const GdsLeaf& leaf, const State& s);

/// Gdot assembly [dG_col_i/dx xdot]_i = sum_j xdot_j dG/dx_j.
Mat metric_rate(const GdsLeaf& leaf, const State& s);

/// xi_G = Gdot xdot - 1/2 grad_x(xdot' G xdot).
Vec curvature_force(const GdsLeaf& leaf, const State& s);

/// GDS leaf RMP: M = G + Xi_G, f = -grad Phi - B xdot - xi_G.
NaturalRmp evaluate_gds_leaf(const GdsLeaf& leaf, const State& s);

/// Partial-flow leaf RMP: same inertia, but the curvature force is the
/// half-Gdot term only (the rest compensates neighbor motion).
NaturalRmp evaluate_partial_leaf(const GdsLeaf& leaf, const State& s);

/// Natural -> canonical form via truncated-SVD pseudoinverse
/// (singular values below 1e-8 of the largest are dropped).
CanonicalRmp resolve(const NaturalRmp& rmp);

}  // namespace rmpsim
