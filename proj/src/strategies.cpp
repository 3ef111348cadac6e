#include "cbgame/strategies.hpp"

#include <algorithm>
#include <limits>

#include "cbgame/errors.hpp"

namespace cbgame {

namespace {

bool in_move(const std::vector<Edge>& move, const Edge& e) {
  return std::find(move.begin(), move.end(), e) != move.end();
}

}  // namespace

void RandomStrategy::start(const GameState&, Role role, std::uint64_t seed) {
  role_ = role;
  rng_ = Rng(seed);
}

Decision RandomStrategy::decide(const GameState& state) {
  const Graph& g = state.graph();
  Decision d;
  auto& claimed = d.move.claimed;
  const int bias = state.bias(role_);
  std::vector<char> extra(static_cast<std::size_t>(g.num_vertices()), 0);
  bool vc_empty = state.vc_size() == 0;
  for (int step = 0; step < bias; ++step) {
    std::vector<EdgeId> options;
    if (role_ == Role::Breaker || vc_empty) {
      for (EdgeId id = 0; id < g.num_edges(); ++id) {
        if (state.is_free(id) && !in_move(claimed, g.edge(id))) options.push_back(id);
      }
    } else {
      std::vector<char> seen(static_cast<std::size_t>(g.num_edges()), 0);
      auto scan = [&](Vertex v) {
        for (EdgeId id : g.incident_edges(v)) {
          if (seen[static_cast<std::size_t>(id)] || !state.is_free(id) || in_move(claimed, g.edge(id))) continue;
          seen[static_cast<std::size_t>(id)] = 1;
          options.push_back(id);
        }
      };
      for (Vertex v : state.vc_order()) scan(v);
      for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (extra[static_cast<std::size_t>(v)]) scan(v);
      }
      std::sort(options.begin(), options.end());
    }
    if (options.empty()) break;
    const EdgeId pick = options[static_cast<std::size_t>(rng_.below(options.size()))];
    const Edge& e = g.edge(pick);
    claimed.push_back(e);
    if (role_ == Role::Connector) {
      for (Vertex v : {e.u, e.v}) {
        if (!state.in_vc(v)) extra[static_cast<std::size_t>(v)] = 1;
      }
      vc_empty = false;
    }
  }
  return d;
}

void GreedyDegreeStrategy::start(const GameState&, Role role, std::uint64_t) { role_ = role; }

Decision GreedyDegreeStrategy::decide(const GameState& state) {
  const Graph& g = state.graph();
  const int n = g.num_vertices();
  Decision d;
  auto& claimed = d.move.claimed;
  const int bias = state.bias(role_);
  std::vector<char> vc(static_cast<std::size_t>(n), 0);
  for (Vertex v : state.vc_order()) vc[static_cast<std::size_t>(v)] = 1;
  auto usable = [&](EdgeId id) { return state.is_free(id) && !in_move(claimed, g.edge(id)); };

  for (int step = 0; step < bias; ++step) {
    if (role_ == Role::Connector) {
      std::optional<Edge> best;
      int best_deg = -1;
      if (state.vc_size() == 0 && claimed.empty()) {
        for (EdgeId id = 0; id < g.num_edges() && !best; ++id) {
          if (usable(id)) best = g.edge(id);
        }
      }
      for (Vertex w = 0; w < n; ++w) {
        if (vc[static_cast<std::size_t>(w)]) continue;
        auto nbrs = g.neighbors(w);
        auto ids = g.incident_edges(w);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
          if (!vc[static_cast<std::size_t>(nbrs[i])] || !usable(ids[i])) continue;
          if (state.breaker_degree(w) > best_deg) {
            best_deg = state.breaker_degree(w);
            best = g.edge(ids[i]);
          }
          break;
        }
      }
      if (!best) break;
      claimed.push_back(*best);
      vc[static_cast<std::size_t>(best->u)] = 1;
      vc[static_cast<std::size_t>(best->v)] = 1;
      continue;
    }

    // Breaker: the most nearly cut-off vertex outside V_C.
    Vertex target = -1;
    int target_links = std::numeric_limits<int>::max();
    for (Vertex w = 0; w < n; ++w) {
      if (vc[static_cast<std::size_t>(w)]) continue;
      int links = 0;
      auto nbrs = g.neighbors(w);
      auto ids = g.incident_edges(w);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (vc[static_cast<std::size_t>(nbrs[i])] && usable(ids[i])) ++links;
      }
      if (links > 0 && links < target_links) {
        target = w;
        target_links = links;
      }
    }
    std::optional<Edge> pick;
    if (target >= 0) {
      auto nbrs = g.neighbors(target);
      auto ids = g.incident_edges(target);
      for (std::size_t i = 0; i < nbrs.size() && !pick; ++i) {
        if (vc[static_cast<std::size_t>(nbrs[i])] && usable(ids[i])) pick = g.edge(ids[i]);
      }
    }
    for (EdgeId id = 0; id < g.num_edges() && !pick; ++id) {
      if (usable(id)) pick = g.edge(id);
    }
    if (!pick) break;
    claimed.push_back(*pick);
  }
  return d;
}

Decision MinimaxStrategy::decide(const GameState& state) {
  Decision d;
  d.move = solver_move(state, goal_, max_edges_);
  return d;
}

std::vector<std::string> strategy_ids() {
  return {"paper-breaker", "paper-connector", "random", "greedy-degree", "minimax"};
}

std::unique_ptr<Strategy> make_strategy(const std::string& id, Role role, const StrategyOptions& options) {
  if (id == "paper-breaker") {
    if (role != Role::Breaker) throw ParameterError("paper-breaker can only play Breaker");
    return std::make_unique<PaperBreaker>(options.breaker);
  }
  if (id == "paper-connector") {
    if (role != Role::Connector) throw ParameterError("paper-connector can only play Connector");
    return std::make_unique<PaperConnector>(options.connector);
  }
  if (id == "random") return std::make_unique<RandomStrategy>();
  if (id == "greedy-degree") return std::make_unique<GreedyDegreeStrategy>();
  if (id == "minimax") return std::make_unique<MinimaxStrategy>(options.goal, options.solver_max_edges);
  throw ParameterError("unknown strategy id '" + id + "'");
}

}  // namespace cbgame
