#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cbgame/game.hpp"
#include "cbgame/graph.hpp"

namespace cbgame {

/// Full binary tree with k levels mapped into a graph.
///
/// Nodes are stored in heap order: index 0 is the root, the children of
/// index h are 2h+1 and 2h+2. Position (i,j) with level i in 1..k (k at the
/// root, 1 at the leaves) and 1 <= j <= 2^(k-i) lives at index
/// 2^(k-i) - 1 + (j - 1); its children are (i-1, 2j-1) and (i-1, 2j).
struct TreeEmbedding {
  int k = 0;
  std::vector<Vertex> nodes;

  TreeEmbedding() = default;
  TreeEmbedding(int levels, std::vector<Vertex> heap_nodes);

  static int node_count(int levels) { return (1 << levels) - 1; }
  static int index_of(int k, int level, int j) { return (1 << (k - level)) - 1 + (j - 1); }

  Vertex root() const { return nodes.front(); }
  Vertex at(int level, int j) const { return nodes[static_cast<std::size_t>(index_of(k, level, j))]; }
  int level_of_index(int h) const;
  bool is_leaf_index(int h) const { return 2 * h + 1 >= static_cast<int>(nodes.size()); }
  std::vector<Vertex> leaves() const;
  /// Parent-to-child pairs, root side first.
  std::vector<std::pair<Vertex, Vertex>> arcs() const;
  /// The subtree hanging at heap index h, itself in heap order.
  TreeEmbedding subtree(int h) const;
  /// A tree whose root has `left` and `right` as its two subtrees.
  static TreeEmbedding join(Vertex root, const TreeEmbedding& left, const TreeEmbedding& right);

  friend bool operator==(const TreeEmbedding&, const TreeEmbedding&) = default;
};

/// Injective, correctly sized, and every parent-child pair is an edge of g.
bool is_embedded(const Graph& g, const TreeEmbedding& t);

/// Good tree test against the current position: x is not in the tree, every
/// arc u->w is not Breaker's or ends in V_C, and every leaf-x pair is an edge
/// Breaker does not own.
bool is_good_tree(const TreeEmbedding& t, Vertex x, const GameState& state);

}  // namespace cbgame
