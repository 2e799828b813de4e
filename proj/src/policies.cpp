#include "rmpsim/policies.hpp"

#include <cmath>

namespace rmpsim {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

// Pair maps always act on the stacked planar pair space (x_i, x_j).
constexpr int kPointDim = 2;

}  // namespace

double collision_weight(double z) { return 1.0 / (z * z * z * z); }

double velocity_gate(double zdot, double epsilon) {
  return epsilon + std::min(0.0, zdot) * zdot;
}

LeafPolicy make_collision_avoidance(const CollisionAvoidanceParams& p,
                                    const std::string& pair_label) {
  require_positive(p.d_s, "d_s");
  require_positive(p.alpha, "alpha");
  require_positive(p.epsilon, "epsilon");
  require_positive(p.eta, "eta");

  const std::string name = "collision[" + pair_label + "]";
  auto barrier = [name](double z) {
    if (z <= 0.0)
      throw BarrierDomainError(name, "pair at or inside safety distance");
  };
  auto wprime = [](double z) { return -4.0 / (z * z * z * z * z); };
  // min(0, zdot) zdot has matching one-sided derivatives at 0, so u'(0) = 0.
  auto gate_deriv = [](double zdot) { return zdot < 0.0 ? 2.0 * zdot : 0.0; };

  GdsLeaf leaf;
  leaf.dim = 1;
  leaf.name = name;
  leaf.metric = [p, barrier](const Vec& z, const Vec& zd) {
    barrier(z(0));
    Mat G(1, 1);
    G(0, 0) = collision_weight(z(0)) * velocity_gate(zd(0), p.epsilon);
    return G;
  };
  leaf.damping = [p, barrier, leafMetric = leaf.metric](const Vec& z,
                                                        const Vec& zd) {
    return Mat(p.eta * leafMetric(z, zd));
  };
  leaf.potential = [p, barrier](const Vec& z) {
    barrier(z(0));
    const double w = collision_weight(z(0));
    return 0.5 * p.alpha * w * w;
  };
  leaf.potential_grad = [p, barrier, wprime](const Vec& z) {
    barrier(z(0));
    Vec g(1);
    g(0) = p.alpha * collision_weight(z(0)) * wprime(z(0));
    return g;
  };
  leaf.metric_dx = [p, barrier, wprime](const Vec& z, const Vec& zd, int) {
    barrier(z(0));
    Mat d(1, 1);
    d(0, 0) = wprime(z(0)) * velocity_gate(zd(0), p.epsilon);
    return d;
  };
  leaf.metric_dxdot = [p, barrier, gate_deriv](const Vec& z, const Vec& zd,
                                               int) {
    barrier(z(0));
    Mat d(1, 1);
    d(0, 0) = collision_weight(z(0)) * gate_deriv(zd(0));
    return d;
  };

  return {pair_distance_map(kPointDim, p.d_s, 1.0, name), std::move(leaf)};
}

LeafPolicy make_distance_preservation_a(const DistancePreservationAParams& p,
                                        const std::string& pair_label) {
  require_positive(p.d_ij, "d_ij");
  require_positive(p.c, "c");
  require_positive(p.alpha, "alpha");
  require_positive(p.eta, "eta");

  const std::string name = "dist_pres_a[" + pair_label + "]";
  GdsLeaf leaf;
  leaf.dim = 1;
  leaf.name = name;
  leaf.metric = [c = p.c](const Vec&, const Vec&) {
    return Mat(Mat::Constant(1, 1, c));
  };
  leaf.damping = [eta = p.eta](const Vec&, const Vec&) {
    return Mat(Mat::Constant(1, 1, eta));
  };
  leaf.potential = [alpha = p.alpha](const Vec& z) {
    return 0.5 * alpha * z(0) * z(0);
  };
  leaf.potential_grad = [alpha = p.alpha](const Vec& z) {
    return Vec(alpha * z);
  };
  leaf.metric_dx = [](const Vec&, const Vec&, int) { return Mat::Zero(1, 1); };
  leaf.metric_dxdot = [](const Vec&, const Vec&, int) {
    return Mat::Zero(1, 1);
  };

  return {pair_distance_map(kPointDim, 1.0, p.d_ij, name), std::move(leaf)};
}

double PairPotential::value(double s) const {
  if (kind == Kind::Quadratic) {
    const double e = s - d;
    return e * e;
  }
  const double e = s * s - d * d;
  return e * e;
}

double PairPotential::deriv(double s) const {
  if (kind == Kind::Quadratic) return 2.0 * (s - d);
  return 4.0 * s * (s * s - d * d);
}

namespace {

// Product-space pair leaf shared by distance preservation RMPb and the
// generic pairwise-potential wrapper: G = c I, B = eta I,
// Phi = 1/2 E(||x_i - x_j||).
LeafPolicy make_product_pair_leaf(const PairPotential& pot, double c,
                                  double eta, const std::string& name) {
  const int dim = 2 * kPointDim;
  GdsLeaf leaf;
  leaf.dim = dim;
  leaf.name = name;
  leaf.metric = [c, dim](const Vec&, const Vec&) {
    return Mat(c * Mat::Identity(dim, dim));
  };
  leaf.damping = [eta, dim](const Vec&, const Vec&) {
    return Mat(eta * Mat::Identity(dim, dim));
  };
  leaf.potential = [pot](const Vec& z) {
    const double s = (z.head(kPointDim) - z.tail(kPointDim)).norm();
    return 0.5 * pot.value(s);
  };
  leaf.potential_grad = [pot, name, dim](const Vec& z) {
    const Vec p = z.head(kPointDim) - z.tail(kPointDim);
    const double s = p.norm();
    Vec g = Vec::Zero(dim);
    if (s == 0.0) {
      if (pot.kind == PairPotential::Kind::Quadratic)
        throw CoincidentRobotsError(name,
                                    "gradient undefined at coincident robots");
      return g;  // quartic: 1/2 E'(s) phat -> 2 (s^2-d^2) p = 0 at p = 0
    }
    const Vec gi = 0.5 * pot.deriv(s) * (p / s);
    g.head(kPointDim) = gi;
    g.tail(kPointDim) = -gi;
    return g;
  };
  leaf.metric_dx = [dim](const Vec&, const Vec&, int) {
    return Mat::Zero(dim, dim);
  };
  leaf.metric_dxdot = [dim](const Vec&, const Vec&, int) {
    return Mat::Zero(dim, dim);
  };
  return {identity_map(dim), std::move(leaf)};
}

}  // namespace

LeafPolicy make_distance_preservation_b(const DistancePreservationBParams& p,
                                        const std::string& pair_label) {
  require_positive(p.d_ij, "d_ij");
  require_positive(p.c, "c");
  require_positive(p.eta, "eta");
  PairPotential pot{p.pair_potential, p.d_ij};
  return make_product_pair_leaf(pot, p.c, p.eta,
                                "dist_pres_b[" + pair_label + "]");
}

double soft_norm(double r, double alpha) {
  const double e = std::exp(-2.0 * alpha * r);
  return (1.0 - e) / (1.0 + e);
}

double attractor_weight(const GoalAttractorAParams& p, double r) {
  const double gamma = std::exp(-r * r / (2.0 * p.sigma * p.sigma));
  return gamma * p.w_u + (1.0 - gamma) * p.w_l;
}

double attractor_a_potential(const GoalAttractorAParams& p, double r) {
  // Composite Simpson on |grad Phi|(rho) = beta w(rho) s_alpha(rho); the
  // gradient field is radial, so the radial line integral recovers Phi.
  if (r == 0.0) return 0.0;
  const int n = 256;  // even
  const double h = r / n;
  auto g = [&p](double rho) {
    return p.beta * attractor_weight(p, rho) * soft_norm(rho, p.alpha);
  };
  double sum = g(0.0) + g(r);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * g(i * h);
  return sum * h / 3.0;
}

LeafPolicy make_goal_attractor_a(const GoalAttractorAParams& p, int dim,
                                 const std::string& label) {
  if (!p.goal || p.goal->size() != dim)
    throw std::invalid_argument("goal attractor: bad goal vector");
  if (!(0.0 <= p.w_l && p.w_l <= p.w_u))
    throw std::invalid_argument("goal attractor: need 0 <= w_l <= w_u");
  require_positive(p.sigma, "sigma");
  require_positive(p.alpha, "alpha");
  require_positive(p.beta, "beta");
  require_positive(p.eta, "eta");

  GdsLeaf leaf;
  leaf.dim = dim;
  leaf.name = "goal_attractor_a[" + label + "]";
  leaf.metric = [p, dim](const Vec& z, const Vec&) {
    return Mat(attractor_weight(p, z.norm()) * Mat::Identity(dim, dim));
  };
  leaf.damping = [p, dim](const Vec& z, const Vec&) {
    return Mat(p.eta * attractor_weight(p, z.norm()) *
               Mat::Identity(dim, dim));
  };
  leaf.potential = [p](const Vec& z) {
    return attractor_a_potential(p, z.norm());
  };
  leaf.potential_grad = [p, dim](const Vec& z) {
    const double r = z.norm();
    if (r == 0.0) return Vec(Vec::Zero(dim));  // s_alpha(0) = 0
    return Vec(p.beta * attractor_weight(p, r) * soft_norm(r, p.alpha) *
               (z / r));
  };
  // w depends on position only: dw/dz_j = (w_u - w_l) gamma (-z_j / sigma^2)
  leaf.metric_dx = [p, dim](const Vec& z, const Vec&, int j) {
    const double r2 = z.squaredNorm();
    const double gamma = std::exp(-r2 / (2.0 * p.sigma * p.sigma));
    const double dw = (p.w_u - p.w_l) * gamma * (-z(j) / (p.sigma * p.sigma));
    return Mat(dw * Mat::Identity(dim, dim));
  };
  leaf.metric_dxdot = [dim](const Vec&, const Vec&, int) {
    return Mat(Mat::Zero(dim, dim));
  };

  return {goal_offset_map(p.goal), std::move(leaf)};
}

LeafPolicy make_goal_attractor_b(const GoalAttractorBParams& p, int dim,
                                 const std::string& label) {
  if (!p.goal || p.goal->size() != dim)
    throw std::invalid_argument("goal attractor: bad goal vector");
  require_positive(p.c, "c");
  require_positive(p.alpha, "alpha");
  require_positive(p.eta, "eta");

  GdsLeaf leaf;
  leaf.dim = dim;
  leaf.name = "goal_attractor_b[" + label + "]";
  leaf.metric = [c = p.c, dim](const Vec&, const Vec&) {
    return Mat(c * Mat::Identity(dim, dim));
  };
  leaf.damping = [eta = p.eta, dim](const Vec&, const Vec&) {
    return Mat(eta * Mat::Identity(dim, dim));
  };
  leaf.potential = [alpha = p.alpha](const Vec& z) {
    return 0.5 * alpha * z.squaredNorm();
  };
  leaf.potential_grad = [alpha = p.alpha](const Vec& z) {
    return Vec(alpha * z);
  };
  leaf.metric_dx = [dim](const Vec&, const Vec&, int) {
    return Mat(Mat::Zero(dim, dim));
  };
  leaf.metric_dxdot = [dim](const Vec&, const Vec&, int) {
    return Mat(Mat::Zero(dim, dim));
  };

  return {goal_offset_map(p.goal), std::move(leaf)};
}

LeafPolicy make_damper(const DamperParams& p, int dim,
                       const std::string& label) {
  require_positive(p.c, "c");
  require_positive(p.eta, "eta");

  GdsLeaf leaf;
  leaf.dim = dim;
  leaf.name = "damper[" + label + "]";
  leaf.metric = [c = p.c, dim](const Vec&, const Vec&) {
    return Mat(c * Mat::Identity(dim, dim));
  };
  leaf.damping = [eta = p.eta, dim](const Vec&, const Vec&) {
    return Mat(eta * Mat::Identity(dim, dim));
  };
  leaf.potential = [](const Vec&) { return 0.0; };
  leaf.potential_grad = [dim](const Vec&) { return Vec(Vec::Zero(dim)); };
  leaf.metric_dx = [dim](const Vec&, const Vec&, int) {
    return Mat(Mat::Zero(dim, dim));
  };
  leaf.metric_dxdot = [dim](const Vec&, const Vec&, int) {
    return Mat(Mat::Zero(dim, dim));
  };

  return {identity_map(dim), std::move(leaf)};
}

LeafPolicy make_pairwise_potential(const PairwisePotentialParams& p,
                                   const std::string& pair_label) {
  require_positive(p.c, "c");
  require_positive(p.eta, "eta");
  const std::string name = "pair_potential[" + pair_label + "]";

  if (p.space == PairSpace::Product)
    return make_product_pair_leaf(p.potential, p.c, p.eta, name);

  // 1-d distance space: z = ||x_i - x_j||, Phi = 1/2 E(z).
  GdsLeaf leaf;
  leaf.dim = 1;
  leaf.name = name;
  leaf.metric = [c = p.c](const Vec&, const Vec&) {
    return Mat(Mat::Constant(1, 1, c));
  };
  leaf.damping = [eta = p.eta](const Vec&, const Vec&) {
    return Mat(Mat::Constant(1, 1, eta));
  };
  leaf.potential = [pot = p.potential](const Vec& z) {
    return 0.5 * pot.value(z(0));
  };
  leaf.potential_grad = [pot = p.potential](const Vec& z) {
    Vec g(1);
    g(0) = 0.5 * pot.deriv(z(0));
    return g;
  };
  leaf.metric_dx = [](const Vec&, const Vec&, int) { return Mat::Zero(1, 1); };
  leaf.metric_dxdot = [](const Vec&, const Vec&, int) {
    return Mat::Zero(1, 1);
  };

  return {pair_distance_map(kPointDim, 1.0, 0.0, name), std::move(leaf)};
}

}  // namespace rmpsim
