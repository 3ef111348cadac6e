#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cbgame/game.hpp"
#include "cbgame/graph.hpp"
#include "cbgame/trees.hpp"

namespace cbgame {

struct SearchLimits {
  long long expansion_cap = 1'000'000;
  std::uint64_t seed = 0;
};

enum class SearchStatus { Found, Absent, CapExceeded };

/// Edge admissibility rules for embedding trees that must reach x through
/// their leaves. Unset rules accept everything.
struct ArcRules {
  /// Arc parent -> child inside a tree.
  std::function<bool(Vertex parent, Vertex child, EdgeId id)> tree_arc;
  /// Arc from the forest root to a subtree root.
  std::function<bool(Vertex root, Vertex child, EdgeId id)> top_arc;
  /// Leaf-x edge.
  std::function<bool(Vertex leaf, EdgeId id)> leaf_edge;
  std::function<bool(Vertex v)> vertex_allowed;
};

/// Backtracking embedder for a root with c >= 2 vertex-disjoint copies of the
/// h-level full binary tree hanging off it, all leaves adjacent to x.
///
/// Per-level candidate sets are computed once: level 1 holds admissible
/// neighbours of x, level i the vertices with two admissible arcs into level
/// i-1. The search then assigns nodes in pre-order, visiting candidates in a
/// seeded random order, with siblings in increasing rank so each forest is
/// tried once.
class ForestSearcher {
 public:
  ForestSearcher(const Graph& g, Vertex x, int h, ArcRules rules, const SearchLimits& limits);

  /// Quick necessary condition: enough admissible top arcs into level h.
  bool may_root(Vertex root, int children) const;
  /// Subtrees in root-arc order, or nullopt. Check status() for the reason.
  std::optional<std::vector<TreeEmbedding>> embed(Vertex root, int children);

  SearchStatus status() const { return status_; }
  long long expansions() const { return expansions_; }
  int height() const { return h_; }
  bool in_level(int level, Vertex v) const {
    return levels_[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(v)] != 0;
  }
  std::uint32_t rank(Vertex v) const { return rank_[static_cast<std::size_t>(v)]; }

 private:
  struct Position {
    int parent;        // -1 for a child of the root
    int level;         // 1..h
    int prev_sibling;  // -1 when first among siblings
  };

  bool top_ok(Vertex root, Vertex child, EdgeId id) const;
  bool tree_ok(Vertex parent, Vertex child, EdgeId id) const;
  bool assign(std::size_t idx);

  const Graph& g_;
  Vertex x_;
  int h_;
  ArcRules rules_;
  long long cap_;
  std::vector<std::vector<char>> levels_;
  std::vector<std::uint32_t> rank_;
  std::vector<Position> positions_;
  std::vector<Vertex> assigned_;
  std::vector<char> used_;
  Vertex root_ = -1;
  long long expansions_ = 0;
  SearchStatus status_ = SearchStatus::Absent;
};

struct Stage1Search {
  SearchStatus status = SearchStatus::Absent;
  std::optional<TreeEmbedding> tree;
  long long expansions = 0;
};

/// A k1-level full binary tree rooted at r inside G minus B, avoiding x, with
/// every leaf joined to x by an edge outside B.
Stage1Search find_tree_stage1(const Graph& g, const EdgeSet& B, Vertex r, Vertex x, int k1,
                              const SearchLimits& limits = {});

struct Stage2Structure {
  Vertex z = -1;
  Vertex anchor = -1;  // a vertex of A1 with az outside B
  std::array<TreeEmbedding, 4> trees;
};

struct Stage2Search {
  SearchStatus status = SearchStatus::Absent;
  std::optional<Stage2Structure> structure;
  long long expansions = 0;
};

/// z adjacent to A1 outside B plus four vertex-disjoint k2-level trees with
/// roots r_l such that x is in none of them, zr_l is outside B, each arc u->w
/// is outside B or has w in M, and every leaf-x edge is outside B.
Stage2Search find_structure_stage2(const Graph& g, const EdgeSet& B, std::span<const Vertex> M,
                                   std::span<const Vertex> A1, Vertex x, int k2, const SearchLimits& limits = {});

/// Edge set holding Breaker's edges of a position.
EdgeSet breaker_edge_set(const GameState& state);

}  // namespace cbgame
