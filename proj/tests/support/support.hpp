#pragma once

#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cbgame/decomposition.hpp"
#include "cbgame/game.hpp"
#include "cbgame/graph.hpp"
#include "cbgame/solver.hpp"
#include "cbgame/trees.hpp"

namespace cbtest {

using cbgame::Edge;
using cbgame::Graph;
using cbgame::Vertex;

/// One representative per isomorphism class of connected graphs on n
/// vertices, n <= 7 (brute force over all labelled graphs).
std::vector<Graph> connected_graph_classes(int n);

/// Every labelled graph on n vertices, n <= 5.
std::vector<Graph> all_labelled_graphs(int n);

/// Bad set by literal set comprehension, recomputed from scratch each round.
struct OracleBadSet {
  std::vector<std::set<Vertex>> layers;
  int r_x = 1;
};
OracleBadSet bad_set_oracle(const Graph& g, Vertex x);

/// Plain recursive minimax without memo, one edge per call.
cbgame::Role solve_oracle(const Graph& g, const cbgame::SolveOptions& options);

/// Pairs (u,v) with uv an edge and every other vertex adjacent to both.
std::optional<std::pair<Vertex, Vertex>> hn_oracle(const Graph& g);

/// Full binary tree with k levels on vertices 0..2^k-2 (heap labels, root 0),
/// target x = 2^k - 1 joined to every leaf, plus `extra` isolated vertices.
struct TreeWitness {
  Graph graph;
  cbgame::TreeEmbedding tree;
  Vertex x = -1;
};
TreeWitness tree_witness(int k, int extra = 0);

/// Plays the base forcing strategy for Connector on a (2:2) game over the
/// witness, root as start vertex, Connector first. Returns the round in which
/// x joined V_C, or -1 if the strategy got stuck or `max_rounds` passed.
using BreakerReply = std::function<cbgame::Move(const cbgame::GameState&)>;
int base_strategy_rounds(const TreeWitness& w, const BreakerReply& reply, int max_rounds);

/// Every Breaker reply sequence (all subsets of at most b free edges each
/// turn). Returns the worst round count, or -1 if some line fails.
int base_strategy_worst_case(const TreeWitness& w, int max_rounds);

/// x = 0 joined to every level-1 cell and each cell (i,j,l), i >= 2, joined
/// completely to its two child cells. Cells hold consecutive vertices.
struct LayeredInstance {
  Graph graph;
  Vertex x = 0;
  std::vector<std::vector<Vertex>> cells;
};
LayeredInstance layered_instance(int k, int cell_size);

/// G1: x=0, a=1, b=2, c=3, d=4 with edges xa, xb, xc, da, db.
Graph g1();

/// Builds a state on g with the given edges pre-claimed, Connector to move.
cbgame::GameState make_state(std::shared_ptr<const Graph> g, std::optional<Vertex> start,
                             const std::vector<Edge>& connector, const std::vector<Edge>& breaker, int m = 2,
                             int b = 2);

}  // namespace cbtest
