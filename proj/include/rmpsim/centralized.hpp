#pragma once

#include "rmpsim/team.hpp"
#include "rmpsim/tree.hpp"

namespace rmpsim {

/// Tree layout: one intermediate node per distinct participant set
/// (grouped, the default), or leaves attached straight to the root through
/// composed maps (flat). Both produce the same root policy; the flat form
/// exists as the restructuring oracle.
enum class TreeLayout { Grouped, Flat };

/// Root on the joint configuration space; a selection edge per subtask
/// participant set; the subtask leaf beneath it.
RmpTree build_rmp_tree(const RobotTeamSpec& team,
                       const std::vector<SubtaskAssignment>& subtasks,
                       TreeLayout layout = TreeLayout::Grouped);

/// Runs the full RMP flow and splits the root acceleration by robot.
std::vector<Vec> compute_control(RmpTree& tree, const RobotTeamSpec& team,
                                 const State& joint_state,
                                 bool parallel = false);

/// Root metric sum(J' G J), from cached forward-pass states.
Mat root_metric(RmpTree& tree, const State& joint_state);

/// 1/2 qdot' G_root qdot + sum of leaf potentials, Theorem-1 style.
double lyapunov_centralized(RmpTree& tree, const State& joint_state);

/// Gradient of the total pulled-back potential at the root.
Vec root_potential_grad(RmpTree& tree, const State& joint_state);

}  // namespace rmpsim
