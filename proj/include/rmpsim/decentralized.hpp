#pragma once

#include <map>

#include "rmpsim/team.hpp"
#include "rmpsim/tree.hpp"

namespace rmpsim {

/// Snapshot of neighbor states taken at the start of a control step. All
/// entries must come from the same step.
struct NeighborView {
  int robot = -1;
  long step = 0;
  std::map<int, State> states;  // robot index -> (q, qdot)
};

/// Partial-flow forest: one single-level tree per robot, each holding a
/// copy of every subtask leaf that robot participates in. Copies share
/// subtask definitions but no runtime information.
class RmpForest {
 public:
  struct LeafCopy {
    int subtask = -1;
    std::vector<int> participants;
    int owner_slot = -1;  // index of the owning robot within participants
    TaskMap map;          // participant joint space -> leaf space
    GdsLeaf leaf;
  };

  RmpForest(RobotTeamSpec team, std::vector<SubtaskAssignment> subtasks);

  const RobotTeamSpec& team() const { return team_; }
  const std::vector<SubtaskAssignment>& subtasks() const { return subtasks_; }
  const std::vector<LeafCopy>& tree_of(int robot) const {
    return trees_.at(robot);
  }
  /// Robots sharing at least one subtask with `robot`.
  const std::vector<int>& neighbors_of(int robot) const {
    return neighbors_.at(robot);
  }

  /// Joint participant (position, velocity) assembled from the robot's own
  /// state and the neighbor snapshot. Throws StaleViewError on a missing
  /// participant.
  State participant_state(const LeafCopy& copy, int robot,
                          const State& own_state,
                          const NeighborView& view) const;

 private:
  RobotTeamSpec team_;
  std::vector<SubtaskAssignment> subtasks_;
  std::vector<std::vector<LeafCopy>> trees_;
  std::vector<std::vector<int>> neighbors_;
};

/// Leaf state under partial flow: position from the full joint map,
/// velocity from the owner's motion only (other robots held static).
State decentralized_pushforward(const RmpForest& forest,
                                const RmpForest::LeafCopy& copy, int robot,
                                const State& own_state,
                                const NeighborView& view);

/// Per-robot control: partial pushforward, Eq.-5-style leaf evaluation,
/// per-tree pullback through the partial Jacobian blocks, resolve.
CanonicalRmp compute_control_decentralized(const RmpForest& forest, int robot,
                                           const State& own_state,
                                           const NeighborView& view);

/// Synchronous sweep over all robots from one joint state; per-robot
/// computations run in parallel when requested.
std::vector<Vec> compute_control_decentralized_all(const RmpForest& forest,
                                                   const State& joint_state,
                                                   bool parallel = false);

/// Builds robot i's snapshot from the joint state.
NeighborView make_view(const RmpForest& forest, int robot,
                       const State& joint_state, long step = 0);

/// V = sum_i 1/2 sum_k zdot_k^i' G_k zdot_k^i + sum_k Phi_k(psi_k(q)),
/// the Theorem-3 candidate.
double lyapunov_decentralized(const RmpForest& forest,
                              const State& joint_state);

}  // namespace rmpsim
