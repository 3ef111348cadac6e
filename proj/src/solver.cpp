#include "cbgame/solver.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cbgame/errors.hpp"

namespace cbgame {

namespace {

constexpr int kHardEdgeLimit = 24;

class Solver {
 public:
  Solver(const Graph& g, const SolveOptions& opt) : g_(g), opt_(opt) {
    const int e = g.num_edges();
    all_ = e == 0 ? 0 : ((std::uint32_t{1} << e) - 1);
    for (EdgeId id = 0; id < e; ++id) {
      const Edge& edge = g.edge(id);
      ends_.push_back((std::uint64_t{1} << edge.u) | (std::uint64_t{1} << edge.v));
    }
    const int n = g.num_vertices();
    full_vertices_ = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    if (opt.start_vertex) start_mask_ = std::uint64_t{1} << *opt.start_vertex;
  }

  bool connector_wins(std::uint32_t c, std::uint32_t b, Role mover, int rem, int depth) {
    if (opt_.depth_cap > 0 && depth > opt_.depth_cap) throw CapacityError("solver depth cap exceeded");
    const std::uint64_t vc = vertex_set(c);
    if (goal_met(vc)) return true;

    const std::uint64_t key = std::uint64_t{c} | (std::uint64_t{b} << 24) |
                              (std::uint64_t{mover == Role::Breaker ? 1u : 0u} << 48) |
                              (std::uint64_t(rem) << 49);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    bool result;
    const std::uint32_t free = all_ & ~(c | b);
    if (mover == Role::Connector) {
      result = connector_turn(c, b, rem, free, vc, depth);
    } else {
      result = breaker_turn(c, b, rem, free, depth);
    }
    memo_.emplace(key, result);
    return result;
  }

  std::size_t positions() const { return memo_.size(); }

  bool legal_for_connector(std::uint32_t c, int id) const {
    const std::uint64_t vc = vertex_set(c);
    return vc == 0 || (ends_[static_cast<std::size_t>(id)] & vc);
  }

 private:
  bool connector_turn(std::uint32_t c, std::uint32_t b, int rem, std::uint32_t free, std::uint64_t vc, int depth) {
    const bool turn_start = rem == opt_.m;
    std::uint32_t legal = 0;
    for (std::uint32_t bits = free; bits; bits &= bits - 1) {
      const int id = __builtin_ctz(bits);
      if (vc == 0 || (ends_[static_cast<std::size_t>(id)] & vc)) legal |= std::uint32_t{1} << id;
    }
    if (legal == 0 || rem == 0) {
      // Connector's options only shrink while she waits, so being stuck at
      // the start of her turn is final.
      if (turn_start && opt_.m > 0) return false;
      return connector_wins(c, b, Role::Breaker, opt_.b, depth);
    }
    for (std::uint32_t bits = legal; bits; bits &= bits - 1) {
      const std::uint32_t e = bits & (~bits + 1);
      if (rem - 1 == 0) {
        if (connector_wins(c | e, b, Role::Breaker, opt_.b, depth + 1)) return true;
      } else if (connector_wins(c | e, b, Role::Connector, rem - 1, depth + 1)) {
        return true;
      }
    }
    if (!turn_start) return connector_wins(c, b, Role::Breaker, opt_.b, depth);
    return false;
  }

  bool breaker_turn(std::uint32_t c, std::uint32_t b, int rem, std::uint32_t free, int depth) {
    const bool turn_start = rem == opt_.b;
    if (free == 0) return false;
    if (rem == 0) return connector_wins(c, b, Role::Connector, opt_.m, depth);
    for (std::uint32_t bits = free; bits; bits &= bits - 1) {
      const std::uint32_t e = bits & (~bits + 1);
      if (rem - 1 == 0) {
        if (!connector_wins(c, b | e, Role::Connector, opt_.m, depth + 1)) return false;
      } else if (!connector_wins(c, b | e, Role::Breaker, rem - 1, depth + 1)) {
        return false;
      }
    }
    if (!turn_start) return connector_wins(c, b, Role::Connector, opt_.m, depth);
    return true;
  }

  std::uint64_t vertex_set(std::uint32_t c) const {
    std::uint64_t vc = start_mask_;
    for (std::uint32_t bits = c; bits; bits &= bits - 1) vc |= ends_[static_cast<std::size_t>(__builtin_ctz(bits))];
    return vc;
  }

  bool goal_met(std::uint64_t vc) const {
    if (opt_.goal.kind == GoalKind::Spanning) return g_.num_vertices() <= 1 || vc == full_vertices_;
    return (vc >> opt_.goal.target) & 1u;
  }

  const Graph& g_;
  const SolveOptions& opt_;
  std::uint32_t all_ = 0;
  std::vector<std::uint64_t> ends_;
  std::uint64_t full_vertices_ = 0;
  std::uint64_t start_mask_ = 0;
  std::unordered_map<std::uint64_t, bool> memo_;
};

void check_limits(const Graph& g, const SolveOptions& options) {
  const int limit = std::min(options.max_edges, kHardEdgeLimit);
  if (g.num_edges() > limit) {
    throw CapacityError("board has " + std::to_string(g.num_edges()) + " edges, solver limit is " +
                        std::to_string(limit));
  }
  if (g.num_vertices() > 64) throw CapacityError("solver supports at most 64 vertices");
  if (options.m < 1 || options.b < 0 || options.m > 255 || options.b > 255) {
    throw ParameterError("solver biases out of range");
  }
  if (options.start_vertex) g.check_vertex(*options.start_vertex);
  if (options.goal.kind == GoalKind::ReachVertex) g.check_vertex(options.goal.target);
}

}  // namespace

SolveResult solve_exact_detailed(const Graph& g, const SolveOptions& options) {
  check_limits(g, options);
  Solver solver(g, options);
  const int rem = options.first == Role::Connector ? options.m : options.b;
  const bool wins = solver.connector_wins(0, 0, options.first, rem, 0);
  return {wins ? Role::Connector : Role::Breaker, solver.positions()};
}

Role solve_exact(const Graph& g, const SolveOptions& options) { return solve_exact_detailed(g, options).winner; }

Move solver_move(const GameState& state, const Goal& goal, int max_edges) {
  const Graph& g = state.graph();
  SolveOptions options;
  options.m = state.m();
  options.b = state.b();
  options.first = state.to_move();
  options.goal = goal;
  options.start_vertex = state.start_vertex();
  options.max_edges = max_edges;
  check_limits(g, options);

  std::uint32_t c = 0, b = 0;
  for (EdgeId id : state.connector_edges()) c |= std::uint32_t{1} << id;
  for (EdgeId id : state.breaker_edges()) b |= std::uint32_t{1} << id;
  const Role me = state.to_move();
  const int bias = state.bias(me);
  Solver solver(g, options);
  auto good_for_me = [&](bool connector_wins) { return connector_wins == (me == Role::Connector); };

  Move move;
  std::vector<EdgeId> fallback;
  for (int rem = bias; rem > 0; --rem) {
    const std::uint32_t claimed = c | b;
    std::optional<EdgeId> pick;
    for (EdgeId id = 0; id < g.num_edges() && !pick; ++id) {
      const std::uint32_t bit = std::uint32_t{1} << id;
      if (claimed & bit) continue;
      if (me == Role::Connector && !solver.legal_for_connector(c, id)) continue;
      // Connector's fallback is a single edge so it stays legal.
      const std::size_t room = me == Role::Connector ? 1 : static_cast<std::size_t>(rem);
      if (fallback.size() < room) fallback.push_back(id);
      const std::uint32_t nc = me == Role::Connector ? c | bit : c;
      const std::uint32_t nb = me == Role::Breaker ? b | bit : b;
      const bool last = rem == 1;
      const Role next = last ? opponent(me) : me;
      const int next_rem = last ? state.bias(opponent(me)) : rem - 1;
      if (good_for_me(solver.connector_wins(nc, nb, next, next_rem, 0))) pick = id;
    }
    if (!pick) {
      // Stopping here may still win; otherwise the position is lost.
      const bool can_stop = rem < bias;
      if (can_stop && good_for_me(solver.connector_wins(c, b, opponent(me), state.bias(opponent(me)), 0))) break;
      if (move.claimed.empty() && !fallback.empty()) {
        for (EdgeId id : fallback) move.claimed.push_back(g.edge(id));
      }
      break;
    }
    move.claimed.push_back(g.edge(*pick));
    const std::uint32_t bit = std::uint32_t{1} << *pick;
    (me == Role::Connector ? c : b) |= bit;
    fallback.clear();
  }
  return move;
}

}  // namespace cbgame
