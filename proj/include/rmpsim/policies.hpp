#pragma once

#include <memory>
#include <string>
#include <utility>

#include "rmpsim/gds.hpp"
#include "rmpsim/task_map.hpp"

namespace rmpsim {

/// A leaf policy bundle: the map from the subtask's participant joint
/// space to the leaf manifold, plus the GDS evaluated there.
struct LeafPolicy {
  TaskMap map;
  GdsLeaf leaf;
};

// ---------------------------------------------------------------------------
// Pairwise collision avoidance on the 1-d distance space
// z = ||x_i - x_j|| / d_s - 1.

struct CollisionAvoidanceParams {
  double d_s = 0.1;       // safety distance (m)
  double alpha = 1e-5;    // potential gain
  double epsilon = 1e-8;  // metric floor
  double eta = 1.0;       // damping gain
};

/// Barrier weight w(z) = 1/z^4.
double collision_weight(double z);

/// Velocity gate u(zdot) = epsilon + min(0, zdot) zdot.
double velocity_gate(double zdot, double epsilon);

LeafPolicy make_collision_avoidance(const CollisionAvoidanceParams& p,
                                    const std::string& pair_label);

// ---------------------------------------------------------------------------
// Distance preservation, 1-d variant: z = ||x_i - x_j|| - d_ij,
// constant metric c, quadratic potential, constant damping.

struct DistancePreservationAParams {
  double d_ij = 1.0;
  double c = 1.0;
  double alpha = 1.0;
  double eta = 2.0;
};

LeafPolicy make_distance_preservation_a(const DistancePreservationAParams& p,
                                        const std::string& pair_label);

// ---------------------------------------------------------------------------
// Distance preservation on the pair product space, with a symmetric pair
// potential E_ij minimized at the desired distance.

struct PairPotential {
  enum class Kind { Quadratic, Quartic };  // (s-d)^2 or (s^2-d^2)^2
  Kind kind = Kind::Quadratic;
  double d = 1.0;

  double value(double s) const;
  double deriv(double s) const;
};

struct DistancePreservationBParams {
  double d_ij = 1.0;
  double c = 1.0;
  double eta = 2.0;
  PairPotential::Kind pair_potential = PairPotential::Kind::Quadratic;
};

LeafPolicy make_distance_preservation_b(const DistancePreservationBParams& p,
                                        const std::string& pair_label);

// ---------------------------------------------------------------------------
// Goal attractors on z = x - g.

struct GoalAttractorAParams {
  std::shared_ptr<Vec> goal;  // shared so moving goals can be re-pointed
  double w_u = 10.0;
  double w_l = 1.0;
  double sigma = 0.1;
  double alpha = 10.0;  // soft-norm length scale
  double beta = 0.1;    // potential gain
  double eta = 1.0;
};

/// Soft normalization s_alpha(r) = (1 - e^{-2 a r}) / (1 + e^{-2 a r}).
double soft_norm(double r, double alpha);

/// Metric weight w = gamma w_u + (1 - gamma) w_l, gamma = exp(-r^2/2s^2).
double attractor_weight(const GoalAttractorAParams& p, double r);

/// Potential recovered from its gradient by radial quadrature, zero at the
/// goal.
double attractor_a_potential(const GoalAttractorAParams& p, double r);

LeafPolicy make_goal_attractor_a(const GoalAttractorAParams& p, int dim,
                                 const std::string& label);

struct GoalAttractorBParams {
  std::shared_ptr<Vec> goal;
  double c = 1.0;
  double alpha = 1.0;  // stiffness; k_p = alpha / c
  double eta = 2.0;    // k_d = eta / c
};

LeafPolicy make_goal_attractor_b(const GoalAttractorBParams& p, int dim,
                                 const std::string& label);

// ---------------------------------------------------------------------------
// Per-robot damper: G = c I, B = eta I, no potential.

struct DamperParams {
  double c = 0.01;
  double eta = 1.0;
};

LeafPolicy make_damper(const DamperParams& p, int dim,
                       const std::string& label);

// ---------------------------------------------------------------------------
// Generic pairwise-potential wrapper: an arbitrary symmetric pair potential
// as a leaf on the 1-d distance space or the pair product space.

enum class PairSpace { Distance, Product };

struct PairwisePotentialParams {
  PairPotential potential;
  double c = 1.0;
  double eta = 2.0;
  PairSpace space = PairSpace::Product;
};

LeafPolicy make_pairwise_potential(const PairwisePotentialParams& p,
                                   const std::string& pair_label);

}  // namespace rmpsim
