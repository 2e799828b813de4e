#include "rmpsim/tree.hpp"

#include <exception>

namespace rmpsim {

RmpTree::RmpTree(int root_dim, std::string root_name) {
  Node root;
  root.name = std::move(root_name);
  root.dim = root_dim;
  nodes_.push_back(std::move(root));
}

int RmpTree::add_node(int parent, TaskMap edge, std::string name) {
  if (parent < 0 || parent >= size())
    throw std::invalid_argument("add_node: unknown parent");
  if (edge.dim_in != nodes_[parent].dim)
    throw std::invalid_argument("add_node: edge dim_in != parent dim");
  Node n;
  n.name = std::move(name);
  n.parent = parent;
  n.dim = edge.dim_out;
  n.edge = std::move(edge);
  nodes_.push_back(std::move(n));
  return size() - 1;
}

int RmpTree::add_leaf(int parent, TaskMap edge, GdsLeaf leaf) {
  if (edge.dim_out != leaf.dim)
    throw std::invalid_argument("add_leaf: edge dim_out != leaf dim");
  const int id = add_node(parent, std::move(edge), leaf.name);
  nodes_[id].leaf = std::move(leaf);
  return id;
}

std::vector<int> RmpTree::leaf_ids() const {
  std::vector<int> ids;
  for (int i = 0; i < size(); ++i)
    if (nodes_[i].leaf) ids.push_back(i);
  return ids;
}

std::string RmpTree::node_path(int id) const {
  std::string path = nodes_.at(id).name;
  for (int p = nodes_.at(id).parent; p >= 0; p = nodes_[p].parent)
    path = nodes_[p].name + "/" + path;
  return path;
}

void RmpTree::forward(const State& root_state) {
  if (root_state.dim() != nodes_[0].dim)
    throw std::invalid_argument("forward: root state dimension mismatch");
  for (auto& n : nodes_) n.state.reset();
  nodes_[0].state = root_state;
  // Children always follow their parent in insertion order.
  for (int i = 1; i < size(); ++i)
    nodes_[i].state = pushforward(*nodes_[nodes_[i].parent].state,
                                  nodes_[i].edge);
}

const State& RmpTree::cached_state(int id) const {
  const auto& s = nodes_.at(id).state;
  if (!s) throw std::logic_error("cached_state: forward pass not run");
  return *s;
}

NaturalRmp RmpTree::pull_to_root(bool parallel) {
  const std::vector<int> leaves = leaf_ids();
  std::vector<NaturalRmp> leaf_rmps(leaves.size());
  std::exception_ptr err;

#ifdef RMPSIM_HAS_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int k = 0; k < static_cast<int>(leaves.size()); ++k) {
    try {
      const Node& n = nodes_[leaves[k]];
      leaf_rmps[k] = evaluate_gds_leaf(*n.leaf, *n.state);
    } catch (...) {
#ifdef RMPSIM_HAS_OPENMP
#pragma omp critical
#endif
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  // Accumulate leaf contributions into per-node slots, then fold child
  // slots into parents in reverse insertion order. The order is fixed, so
  // results are bit-identical between serial and parallel runs.
  std::vector<NaturalRmp> acc(size());
  for (int i = 0; i < size(); ++i) acc[i] = NaturalRmp::zero(nodes_[i].dim);
  for (size_t k = 0; k < leaves.size(); ++k) acc[leaves[k]] = leaf_rmps[k];

  for (int i = size() - 1; i >= 1; --i) {
    const Node& n = nodes_[i];
    const State& ps = *nodes_[n.parent].state;
    const Mat J = n.edge.jacobian(ps.x);
    const Vec jdot_xdot = n.edge.jac_rate_times_vel(ps.x, ps.xdot);
    acc[n.parent].f += J.transpose() * (acc[i].f - acc[i].M * jdot_xdot);
    acc[n.parent].M += J.transpose() * acc[i].M * J;
  }
  return acc[0];
}

CanonicalRmp RmpTree::policy(const State& root_state, bool parallel) {
  forward(root_state);
  return resolve(pull_to_root(parallel));
}

NaturalRmp pullback(
    const std::vector<std::pair<NaturalRmp, TaskMap>>& children,
    const State& parent_state) {
  NaturalRmp out = NaturalRmp::zero(parent_state.dim());
  for (const auto& [rmp, map] : children) {
    if (map.dim_in != parent_state.dim() || map.dim_out != rmp.dim())
      throw std::invalid_argument("pullback: dimension mismatch");
    const Mat J = map.jacobian(parent_state.x);
    const Vec jdot_xdot =
        map.jac_rate_times_vel(parent_state.x, parent_state.xdot);
    out.f += J.transpose() * (rmp.f - rmp.M * jdot_xdot);
    out.M += J.transpose() * rmp.M * J;
  }
  return out;
}

}  // namespace rmpsim
