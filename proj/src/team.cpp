#include "rmpsim/team.hpp"

#include <algorithm>

namespace rmpsim {

namespace {

std::string pair_label(const SubtaskAssignment& st) {
  std::string s;
  for (size_t i = 0; i < st.participants.size(); ++i)
    s += (i ? "," : "") + std::to_string(st.participants[i]);
  return s;
}

}  // namespace

int participant_dim(const RobotTeamSpec& team, const SubtaskAssignment& st) {
  int d = 0;
  for (int r : st.participants) d += team.dims.at(r);
  return d;
}

void validate_subtask(const RobotTeamSpec& team,
                      const SubtaskAssignment& st) {
  if (st.participants.empty())
    throw std::invalid_argument(st.name + ": empty participant set");
  for (int r : st.participants)
    if (r < 0 || r >= team.count())
      throw std::invalid_argument(st.name + ": unknown robot id " +
                                  std::to_string(r));
  if (!std::is_sorted(st.participants.begin(), st.participants.end()))
    throw std::invalid_argument(st.name + ": participants must be ascending");
  const bool pairwise =
      std::holds_alternative<CollisionAvoidanceParams>(st.params) ||
      std::holds_alternative<DistancePreservationAParams>(st.params) ||
      std::holds_alternative<DistancePreservationBParams>(st.params) ||
      std::holds_alternative<PairwisePotentialParams>(st.params);
  if (pairwise && (st.participants.size() != 2 ||
                   st.participants[0] == st.participants[1]))
    throw std::invalid_argument(st.name + ": needs two distinct robots");
  if (!pairwise && st.participants.size() != 1)
    throw std::invalid_argument(st.name + ": unary subtask");
}

LeafPolicy instantiate_leaf(const RobotTeamSpec& team,
                            const SubtaskAssignment& st) {
  validate_subtask(team, st);
  const std::string label = pair_label(st);
  const int dim = team.dims.at(st.participants[0]);
  return std::visit(
      [&](const auto& p) -> LeafPolicy {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CollisionAvoidanceParams>)
          return make_collision_avoidance(p, label);
        else if constexpr (std::is_same_v<T, DistancePreservationAParams>)
          return make_distance_preservation_a(p, label);
        else if constexpr (std::is_same_v<T, DistancePreservationBParams>)
          return make_distance_preservation_b(p, label);
        else if constexpr (std::is_same_v<T, GoalAttractorAParams>)
          return make_goal_attractor_a(p, dim, label);
        else if constexpr (std::is_same_v<T, GoalAttractorBParams>)
          return make_goal_attractor_b(p, dim, label);
        else if constexpr (std::is_same_v<T, DamperParams>)
          return make_damper(p, dim, label);
        else
          return make_pairwise_potential(p, label);
      },
      st.params);
}

}  // namespace rmpsim
