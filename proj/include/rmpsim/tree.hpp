#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmpsim/gds.hpp"
#include "rmpsim/task_map.hpp"

namespace rmpsim {

/// Directed tree of manifolds. Node 0 is the root; every other node hangs
/// off its parent through a task map. Leaves carry a GDS policy. States
/// computed in the forward pass are cached on nodes and invalidated per
/// root state.
class RmpTree {
 public:
  struct Node {
    std::string name;
    int parent = -1;
    int dim = 0;
    TaskMap edge;  // parent -> this; unused on the root
    std::optional<GdsLeaf> leaf;
    // forward-pass cache
    std::optional<State> state;
  };

  explicit RmpTree(int root_dim, std::string root_name = "root");

  int add_node(int parent, TaskMap edge, std::string name);
  int add_leaf(int parent, TaskMap edge, GdsLeaf leaf);

  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_.at(id); }
  Node& node(int id) { return nodes_.at(id); }
  std::vector<int> leaf_ids() const;
  std::string node_path(int id) const;

  /// Recursive pushforward from a root state; caches node states.
  void forward(const State& root_state);

  const State& cached_state(int id) const;

  /// Forward pass, leaf evaluation, backward pass, root resolve.
  /// Leaf evaluation fans out over OpenMP threads when parallel is set;
  /// the pullback reduction stays in deterministic node order.
  CanonicalRmp policy(const State& root_state, bool parallel = false);

  /// Backward half only, assuming forward() has run: returns the root
  /// natural RMP.
  NaturalRmp pull_to_root(bool parallel = false);

 private:
  std::vector<Node> nodes_;
};

/// Combines child RMPs into the parent node RMP:
/// f = sum J'(f_c - M_c Jdot xdot), M = sum J' M_c J.
NaturalRmp pullback(
    const std::vector<std::pair<NaturalRmp, TaskMap>>& children,
    const State& parent_state);

}  // namespace rmpsim
