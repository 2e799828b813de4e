#pragma once

#include <variant>
#include <vector>

#include "rmpsim/policies.hpp"

namespace rmpsim {

/// A team of robots on a joint product chart. Robots are indexed 0..N-1;
/// robot i occupies a contiguous coordinate block.
struct RobotTeamSpec {
  std::vector<int> dims;  // per-robot configuration dimension

  static RobotTeamSpec planar(int count) {
    return RobotTeamSpec{std::vector<int>(count, 2)};
  }
  int count() const { return static_cast<int>(dims.size()); }
  int joint_dim() const {
    int d = 0;
    for (int x : dims) d += x;
    return d;
  }
  int offset(int robot) const {
    int off = 0;
    for (int i = 0; i < robot; ++i) off += dims[i];
    return off;
  }
};

/// One subtask: a leaf constructor plus the subset of robots it acts on.
struct SubtaskAssignment {
  using Params =
      std::variant<CollisionAvoidanceParams, DistancePreservationAParams,
                   DistancePreservationBParams, GoalAttractorAParams,
                   GoalAttractorBParams, DamperParams,
                   PairwisePotentialParams>;

  std::string name;
  std::vector<int> participants;  // robot indices, ascending
  Params params;
};

/// Joint dimension of the subtask's participant space.
int participant_dim(const RobotTeamSpec& team, const SubtaskAssignment& st);

/// Instantiates the leaf policy on the participant joint space.
LeafPolicy instantiate_leaf(const RobotTeamSpec& team,
                            const SubtaskAssignment& st);

void validate_subtask(const RobotTeamSpec& team, const SubtaskAssignment& st);

}  // namespace rmpsim
