#include "rmpsim/centralized.hpp"

#include <map>

namespace rmpsim {

namespace {

TaskMap participant_selection(const RobotTeamSpec& team,
                              const std::vector<int>& participants) {
  std::vector<std::pair<int, int>> blocks;
  for (int r : participants) blocks.push_back({team.offset(r), team.dims[r]});
  return block_selection_map(team.joint_dim(), blocks);
}

std::string set_label(const std::vector<int>& participants) {
  std::string s = "team{";
  for (size_t i = 0; i < participants.size(); ++i)
    s += (i ? "," : "") + std::to_string(participants[i]);
  return s + "}";
}

}  // namespace

RmpTree build_rmp_tree(const RobotTeamSpec& team,
                       const std::vector<SubtaskAssignment>& subtasks,
                       TreeLayout layout) {
  RmpTree tree(team.joint_dim());
  // One intermediate node per distinct participant set.
  std::map<std::vector<int>, int> group_nodes;
  for (const auto& st : subtasks) {
    validate_subtask(team, st);
    LeafPolicy policy = instantiate_leaf(team, st);
    const TaskMap select = participant_selection(team, st.participants);
    if (layout == TreeLayout::Flat) {
      tree.add_leaf(0, compose(policy.map, select), std::move(policy.leaf));
      continue;
    }
    auto it = group_nodes.find(st.participants);
    if (it == group_nodes.end()) {
      const int id = tree.add_node(0, select, set_label(st.participants));
      it = group_nodes.emplace(st.participants, id).first;
    }
    tree.add_leaf(it->second, std::move(policy.map), std::move(policy.leaf));
  }
  return tree;
}

std::vector<Vec> compute_control(RmpTree& tree, const RobotTeamSpec& team,
                                 const State& joint_state, bool parallel) {
  if (joint_state.dim() != team.joint_dim())
    throw std::invalid_argument("compute_control: joint state dim mismatch");
  const CanonicalRmp root = tree.policy(joint_state, parallel);
  std::vector<Vec> per_robot(team.count());
  for (int i = 0; i < team.count(); ++i)
    per_robot[i] = root.a.segment(team.offset(i), team.dims[i]);
  return per_robot;
}

Mat root_metric(RmpTree& tree, const State& joint_state) {
  tree.forward(joint_state);
  const int n = joint_state.dim();
  Mat G = Mat::Zero(n, n);
  for (int id : tree.leaf_ids()) {
    const State& ls = tree.cached_state(id);
    const Mat Gl = tree.node(id).leaf->metric(ls.x, ls.xdot);
    // Composed Jacobian leaf <- root, chained up the ancestor path.
    Mat J = tree.node(id).edge.jacobian(
        tree.cached_state(tree.node(id).parent).x);
    for (int p = tree.node(id).parent; p > 0; p = tree.node(p).parent)
      J = J * tree.node(p).edge.jacobian(
                  tree.cached_state(tree.node(p).parent).x);
    G += J.transpose() * Gl * J;
  }
  return G;
}

double lyapunov_centralized(RmpTree& tree, const State& joint_state) {
  tree.forward(joint_state);
  // Kinetic term via leaf states: 1/2 sum zdot' G zdot equals
  // 1/2 qdot' G_root qdot by the pullback definition of the node metric.
  double kinetic = 0.0;
  double potential = 0.0;
  for (int id : tree.leaf_ids()) {
    const State& ls = tree.cached_state(id);
    const GdsLeaf& leaf = *tree.node(id).leaf;
    kinetic += 0.5 * ls.xdot.dot(leaf.metric(ls.x, ls.xdot) * ls.xdot);
    potential += leaf.potential(ls.x);
  }
  return kinetic + potential;
}

Vec root_potential_grad(RmpTree& tree, const State& joint_state) {
  tree.forward(joint_state);
  Vec grad = Vec::Zero(joint_state.dim());
  for (int id : tree.leaf_ids()) {
    const State& ls = tree.cached_state(id);
    Vec g = tree.node(id).leaf->potential_grad(ls.x);
    // Chain rule back to the root chart.
    int node = id;
    while (node > 0) {
      const State& ps = tree.cached_state(tree.node(node).parent);
      g = tree.node(node).edge.jacobian(ps.x).transpose() * g;
      node = tree.node(node).parent;
    }
    grad += g;
  }
  return grad;
}

}  // namespace rmpsim
