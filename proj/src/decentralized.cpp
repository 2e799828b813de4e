#include "rmpsim/decentralized.hpp"

#include <algorithm>
#include <set>

namespace rmpsim {

RmpForest::RmpForest(RobotTeamSpec team,
                     std::vector<SubtaskAssignment> subtasks)
    : team_(std::move(team)), subtasks_(std::move(subtasks)) {
  trees_.resize(team_.count());
  std::vector<std::set<int>> nbrs(team_.count());
  for (size_t k = 0; k < subtasks_.size(); ++k) {
    const auto& st = subtasks_[k];
    validate_subtask(team_, st);
    for (size_t slot = 0; slot < st.participants.size(); ++slot) {
      const int robot = st.participants[slot];
      LeafCopy copy;
      copy.subtask = static_cast<int>(k);
      copy.participants = st.participants;
      copy.owner_slot = static_cast<int>(slot);
      LeafPolicy policy = instantiate_leaf(team_, st);
      copy.map = std::move(policy.map);
      copy.leaf = std::move(policy.leaf);
      trees_[robot].push_back(std::move(copy));
      for (int other : st.participants)
        if (other != robot) nbrs[robot].insert(other);
    }
  }
  neighbors_.resize(team_.count());
  for (int i = 0; i < team_.count(); ++i)
    neighbors_[i].assign(nbrs[i].begin(), nbrs[i].end());
}

State RmpForest::participant_state(const LeafCopy& copy, int robot,
                                   const State& own_state,
                                   const NeighborView& view) const {
  int dim = 0;
  for (int r : copy.participants) dim += team_.dims[r];
  Vec q(dim), qdot(dim);
  int off = 0;
  for (int r : copy.participants) {
    const int d = team_.dims[r];
    if (r == robot) {
      q.segment(off, d) = own_state.x;
      qdot.segment(off, d) = own_state.xdot;
    } else {
      auto it = view.states.find(r);
      if (it == view.states.end())
        throw StaleViewError("missing neighbor state for robot " +
                             std::to_string(r));
      q.segment(off, d) = it->second.x;
      qdot.segment(off, d) = it->second.xdot;
    }
    off += d;
  }
  return State(std::move(q), std::move(qdot));
}

namespace {

// Column range of the owner's block inside the participant joint space.
std::pair<int, int> owner_block(const RobotTeamSpec& team,
                                const RmpForest::LeafCopy& copy) {
  int off = 0;
  for (int s = 0; s < copy.owner_slot; ++s)
    off += team.dims[copy.participants[s]];
  return {off, team.dims[copy.participants[copy.owner_slot]]};
}

}  // namespace

State decentralized_pushforward(const RmpForest& forest,
                                const RmpForest::LeafCopy& copy, int robot,
                                const State& own_state,
                                const NeighborView& view) {
  const State joint = forest.participant_state(copy, robot, own_state, view);
  const auto [off, len] = owner_block(forest.team(), copy);
  const Mat J = copy.map.jacobian(joint.x);
  // zdot from the owner's motion only; neighbors are held static here.
  return State(copy.map.value(joint.x),
               J.middleCols(off, len) * own_state.xdot);
}

CanonicalRmp compute_control_decentralized(const RmpForest& forest, int robot,
                                           const State& own_state,
                                           const NeighborView& view) {
  const int dim = forest.team().dims.at(robot);
  NaturalRmp root = NaturalRmp::zero(dim);
  for (const auto& copy : forest.tree_of(robot)) {
    const State joint = forest.participant_state(copy, robot, own_state, view);
    const auto [off, len] = owner_block(forest.team(), copy);
    const Mat J_i = copy.map.jacobian(joint.x).middleCols(off, len);
    const State leaf_state(copy.map.value(joint.x), J_i * own_state.xdot);
    const NaturalRmp rmp = evaluate_partial_leaf(copy.leaf, leaf_state);
    // Jdot of the owner's block uses the true joint motion, so the
    // curvature bookkeeping of the stability analysis holds.
    const Mat Jdot_i =
        copy.map.jac_rate_or_fd(joint.x, joint.xdot).middleCols(off, len);
    root.f += J_i.transpose() * (rmp.f - rmp.M * (Jdot_i * own_state.xdot));
    root.M += J_i.transpose() * rmp.M * J_i;
  }
  return resolve(root);
}

NeighborView make_view(const RmpForest& forest, int robot,
                       const State& joint_state, long step) {
  NeighborView view;
  view.robot = robot;
  view.step = step;
  for (int r : forest.neighbors_of(robot)) {
    const int off = forest.team().offset(r);
    const int d = forest.team().dims[r];
    view.states.emplace(r, State(joint_state.x.segment(off, d),
                                 joint_state.xdot.segment(off, d)));
  }
  return view;
}

std::vector<Vec> compute_control_decentralized_all(const RmpForest& forest,
                                                   const State& joint_state,
                                                   bool parallel) {
  const int n = forest.team().count();
  std::vector<Vec> out(n);
  std::exception_ptr err;
#ifdef RMPSIM_HAS_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      const int off = forest.team().offset(i);
      const int d = forest.team().dims[i];
      const State own(joint_state.x.segment(off, d),
                      joint_state.xdot.segment(off, d));
      out[i] = compute_control_decentralized(forest, i, own,
                                             make_view(forest, i, joint_state))
                   .a;
    } catch (...) {
#ifdef RMPSIM_HAS_OPENMP
#pragma omp critical
#endif
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

double lyapunov_decentralized(const RmpForest& forest,
                              const State& joint_state) {
  double kinetic = 0.0;
  for (int i = 0; i < forest.team().count(); ++i) {
    const int off = forest.team().offset(i);
    const int d = forest.team().dims[i];
    const State own(joint_state.x.segment(off, d),
                    joint_state.xdot.segment(off, d));
    const NeighborView view = make_view(forest, i, joint_state);
    for (const auto& copy : forest.tree_of(i)) {
      const State ls =
          decentralized_pushforward(forest, copy, i, own, view);
      kinetic += 0.5 * ls.xdot.dot(copy.leaf.metric(ls.x, ls.xdot) * ls.xdot);
    }
  }
  // The shared potential is counted once per subtask.
  double potential = 0.0;
  for (const auto& st : forest.subtasks()) {
    LeafPolicy policy = instantiate_leaf(forest.team(), st);
    Vec q(participant_dim(forest.team(), st));
    int off = 0;
    for (int r : st.participants) {
      const int d = forest.team().dims[r];
      q.segment(off, d) = joint_state.x.segment(forest.team().offset(r), d);
      off += d;
    }
    potential += policy.leaf.potential(policy.map.value(q));
  }
  return kinetic + potential;
}

}  // namespace rmpsim
