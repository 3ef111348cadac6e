#pragma once

#include <cstddef>
#include <optional>

#include "cbgame/game.hpp"
#include "cbgame/graph.hpp"

namespace cbgame {

enum class GoalKind { Spanning, ReachVertex };

struct Goal {
  GoalKind kind = GoalKind::Spanning;
  Vertex target = -1;

  static Goal spanning() { return {}; }
  static Goal reach(Vertex x) { return {GoalKind::ReachVertex, x}; }
};

struct SolveOptions {
  int m = 1;
  int b = 1;
  Role first = Role::Connector;
  Goal goal;
  /// Without a start vertex Connector's first edge may be anywhere.
  std::optional<Vertex> start_vertex;
  int max_edges = 16;
  /// Maximum number of single-edge plies along any line; 0 means no cap.
  int depth_cap = 0;
};

struct SolveResult {
  Role winner = Role::Breaker;
  std::size_t positions = 0;
};

/// Exact winner under optimal play, by exhaustive minimax over every legal
/// move including partial ones. Positions are memoized on the claimed-edge
/// bitmaps of both players, the player to move and the claims left in the
/// current turn. Throws CapacityError above max_edges (hard limit 24) or when
/// the depth cap is hit.
SolveResult solve_exact_detailed(const Graph& g, const SolveOptions& options);
Role solve_exact(const Graph& g, const SolveOptions& options);

/// Move for the player to move that keeps a won position won, edge by edge,
/// stopping early only when that also wins. In a lost position, the first
/// legal edges. Same size limits as solve_exact.
Move solver_move(const GameState& state, const Goal& goal, int max_edges = 16);

}  // namespace cbgame
