#include "cbgame/game.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include <json.hpp>

#include "cbgame/errors.hpp"
#include "cbgame/random.hpp"

namespace cbgame {

namespace {

std::string edge_text(const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

}  // namespace

const char* role_name(Role r) { return r == Role::Connector ? "Connector" : "Breaker"; }
const char* role_tag(Role r) { return r == Role::Connector ? "C" : "B"; }

const char* reason_name(EndReason r) {
  switch (r) {
    case EndReason::Spanned:
      return "spanned";
    case EndReason::BoardExhausted:
      return "board-exhausted";
    case EndReason::Forfeit:
      return "forfeit";
  }
  return "unknown";
}

GameState::GameState() : GameState(std::make_shared<const Graph>(0), 1, 1, std::nullopt) {}

GameState::GameState(std::shared_ptr<const Graph> graph, int m, int b, std::optional<Vertex> start_vertex,
                     Role first)
    : graph_(std::move(graph)), m_(m), b_(b), start_(start_vertex), first_(first), to_move_(first) {
  if (!graph_) throw ParameterError("game needs a graph");
  if (m < 0 || b < 0) throw ParameterError("biases must be non-negative");
  const int n = graph_->num_vertices();
  owner_.assign(static_cast<std::size_t>(graph_->num_edges()), Owner::Free);
  in_vc_.assign(static_cast<std::size_t>(n), 0);
  breaker_degree_.assign(static_cast<std::size_t>(n), 0);
  free_count_ = graph_->num_edges();
  if (start_) {
    graph_->check_vertex(*start_);
    add_to_vc(*start_);
  }
}

std::vector<Vertex> GameState::vc_sorted() const {
  std::vector<Vertex> out(vc_order_.begin(), vc_order_.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool GameState::connector_may_claim(EdgeId id) const {
  if (!is_free(id)) return false;
  if (vc_order_.empty()) return true;
  const Edge& e = graph_->edge(id);
  return in_vc(e.u) || in_vc(e.v);
}

bool GameState::connector_can_move() const {
  if (vc_order_.empty()) return free_count_ > 0;
  if (frontier_free_ > 0) return true;
  for (Vertex v : vc_order_) {
    for (EdgeId id : graph_->incident_edges(v)) {
      if (is_free(id)) return true;
    }
  }
  return false;
}

bool GameState::all_vertices_reached() const {
  return graph_->num_vertices() <= 1 || vc_size() == graph_->num_vertices();
}

void GameState::claim(EdgeId id, Role who) {
  const Edge& e = graph_->edge(id);
  const int inside = (in_vc(e.u) ? 1 : 0) + (in_vc(e.v) ? 1 : 0);
  if (inside == 1) --frontier_free_;
  --free_count_;
  if (who == Role::Connector) {
    owner_[static_cast<std::size_t>(id)] = Owner::Connector;
    connector_edges_.push_back(id);
  } else {
    owner_[static_cast<std::size_t>(id)] = Owner::Breaker;
    breaker_edges_.push_back(id);
    ++breaker_degree_[static_cast<std::size_t>(e.u)];
    ++breaker_degree_[static_cast<std::size_t>(e.v)];
  }
}

void GameState::add_to_vc(Vertex v) {
  if (in_vc(v)) return;
  in_vc_[static_cast<std::size_t>(v)] = 1;
  vc_order_.push_back(v);
  auto nbrs = graph_->neighbors(v);
  auto ids = graph_->incident_edges(v);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    if (!is_free(ids[i])) continue;
    if (in_vc(nbrs[i])) {
      --frontier_free_;
    } else {
      ++frontier_free_;
    }
  }
}

void GameState::apply(const Move& move) {
  const Role who = to_move_;
  if (static_cast<int>(move.claimed.size()) > bias(who)) {
    throw IllegalMoveError(std::string(role_name(who)) + " claimed " + std::to_string(move.claimed.size()) +
                           " edges with bias " + std::to_string(bias(who)));
  }
  std::vector<EdgeId> ids;
  std::vector<Vertex> added;
  auto reached = [&](Vertex v) { return in_vc(v) || std::find(added.begin(), added.end(), v) != added.end(); };
  for (const Edge& raw : move.claimed) {
    const Edge e(raw.u, raw.v);
    auto id = graph_->edge_id(e.u, e.v);
    if (!id) throw IllegalMoveError("edge " + edge_text(e) + " is not in the graph");
    if (!is_free(*id)) throw IllegalMoveError("edge " + edge_text(e) + " is already claimed");
    if (std::find(ids.begin(), ids.end(), *id) != ids.end()) {
      throw IllegalMoveError("edge " + edge_text(e) + " repeated within one move");
    }
    if (who == Role::Connector) {
      const bool anywhere = vc_order_.empty() && added.empty();
      if (!anywhere && !reached(e.u) && !reached(e.v)) {
        throw ConnectivityError("edge " + edge_text(e) + " does not touch Connector's vertex set");
      }
      if (!reached(e.u)) added.push_back(e.u);
      if (!reached(e.v)) added.push_back(e.v);
    }
    ids.push_back(*id);
  }

  for (EdgeId id : ids) {
    claim(id, who);
    if (who == Role::Connector) {
      add_to_vc(graph_->edge(id).u);
      add_to_vc(graph_->edge(id).v);
    }
  }
  if (who != first_) ++round_;
  to_move_ = opponent(who);
}

void GameState::check_invariants() const {
  const Graph& g = *graph_;
  const int n = g.num_vertices();
  std::vector<char> expect_vc(static_cast<std::size_t>(n), 0);
  if (start_) expect_vc[static_cast<std::size_t>(*start_)] = 1;
  std::vector<int> bdeg(static_cast<std::size_t>(n), 0);
  int c_count = 0, b_count = 0, free_count = 0;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    switch (owner(id)) {
      case Owner::Connector:
        ++c_count;
        expect_vc[static_cast<std::size_t>(e.u)] = 1;
        expect_vc[static_cast<std::size_t>(e.v)] = 1;
        break;
      case Owner::Breaker:
        ++b_count;
        ++bdeg[static_cast<std::size_t>(e.u)];
        ++bdeg[static_cast<std::size_t>(e.v)];
        break;
      case Owner::Free:
        ++free_count;
        break;
    }
  }
  if (c_count != static_cast<int>(connector_edges_.size()) || b_count != static_cast<int>(breaker_edges_.size())) {
    throw Error("edge lists disagree with owner table");
  }
  if (free_count != free_count_) throw Error("free edge count out of sync");
  if (expect_vc != in_vc_) throw Error("V_C differs from endpoints of Connector edges plus start vertex");
  if (static_cast<int>(vc_order_.size()) != static_cast<int>(std::count(in_vc_.begin(), in_vc_.end(), 1))) {
    throw Error("V_C order list out of sync");
  }
  if (bdeg != breaker_degree_) throw Error("Breaker degrees out of sync");

  int frontier = 0;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    if (!is_free(id)) continue;
    const Edge& e = g.edge(id);
    if (in_vc(e.u) != in_vc(e.v)) ++frontier;
  }
  if (frontier != frontier_free_) throw Error("frontier count out of sync");

  if (!connector_edges_.empty()) {
    // (V_C, C) must be connected: BFS over Connector edges from one vertex.
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (EdgeId id : connector_edges_) {
      const Edge& e = g.edge(id);
      adj[static_cast<std::size_t>(e.u)].push_back(e.v);
      adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> stack{vc_order_.front()};
    seen[static_cast<std::size_t>(vc_order_.front())] = 1;
    int reached = 0;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      ++reached;
      for (Vertex w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    if (reached != vc_size()) throw Error("Connector's graph is not connected");
  }
}

bool operator==(const GameState& a, const GameState& b) {
  const bool same_graph = a.graph_ == b.graph_ || *a.graph_ == *b.graph_;
  return same_graph && a.m_ == b.m_ && a.b_ == b.b_ && a.start_ == b.start_ && a.first_ == b.first_ &&
         a.to_move_ == b.to_move_ && a.round_ == b.round_ && a.owner_ == b.owner_ &&
         a.connector_edges_ == b.connector_edges_ && a.breaker_edges_ == b.breaker_edges_ &&
         a.vc_order_ == b.vc_order_;
}

GameState validate_and_apply(const GameState& state, const Move& move) {
  GameState next = state;
  next.apply(move);
  return next;
}

std::vector<Edge> free_edges(const GameState& state) {
  std::vector<Edge> out;
  const Graph& g = state.graph();
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    if (state.is_free(id)) out.push_back(g.edge(id));
  }
  return out;
}

bool connector_has_spanned(const GameState& state) {
  return is_spanning_connected(state.graph(), state.connector_edges());
}

GameResult run_game(std::shared_ptr<const Graph> graph, Strategy& connector, Strategy& breaker,
                    const GameOptions& options, const GameObserver& observer) {
  if (options.m < 1 || options.b < 1) throw ParameterError("biases must be at least 1");
  GameState state(std::move(graph), options.m, options.b, options.start_vertex, options.first);
  GameResult result;
  result.initial = state;
  connector.start(state, Role::Connector, mix_seed(options.seed, 1));
  breaker.start(state, Role::Breaker, mix_seed(options.seed, 2));

  auto finish = [&](Role winner, EndReason reason, std::string note = {}) {
    result.winner = winner;
    result.reason = reason;
    result.note = std::move(note);
  };

  int idle_plies = 0;
  while (true) {
    if (state.all_vertices_reached()) {
      finish(Role::Connector, EndReason::Spanned);
      break;
    }
    const bool stuck = state.vc_size() > 0 ? state.frontier_free_count() == 0 : state.free_edge_count() == 0;
    if (stuck || idle_plies >= 2) {
      finish(Role::Breaker, EndReason::BoardExhausted);
      break;
    }
    const Role mover = state.to_move();
    Strategy& strategy = mover == Role::Connector ? connector : breaker;
    Decision decision;
    try {
      decision = strategy.decide(state);
    } catch (const Error& e) {
      finish(opponent(mover), EndReason::Forfeit, e.what());
      break;
    }
    if (decision.forfeit) {
      finish(opponent(mover), EndReason::Forfeit, decision.reason);
      break;
    }
    const int round = state.round() + 1;
    try {
      state.apply(decision.move);
    } catch (const Error& e) {
      finish(opponent(mover), EndReason::Forfeit, std::string("illegal move: ") + e.what());
      break;
    }
    result.transcript.push_back(Ply{round, mover, decision.move});
    idle_plies = decision.move.claimed.empty() ? idle_plies + 1 : 0;
    if (observer) observer(state, mover, decision.move);
  }
  result.rounds = result.transcript.empty() ? 0 : result.transcript.back().round;
  result.final_state = std::move(state);
  return result;
}

GameState replay_transcript(const GameState& initial, std::span<const Ply> transcript) {
  GameState state = initial;
  for (const Ply& ply : transcript) {
    if (ply.player != state.to_move()) throw IllegalMoveError("transcript ply out of turn order");
    state.apply(ply.move);
  }
  return state;
}

void write_transcript_jsonl(std::ostream& out, const GameResult& result) {
  using nlohmann::ordered_json;
  for (const Ply& ply : result.transcript) {
    ordered_json line;
    line["round"] = ply.round;
    line["player"] = role_tag(ply.player);
    ordered_json edges = ordered_json::array();
    for (const Edge& e : ply.move.claimed) edges.push_back({e.u, e.v});
    line["edges"] = std::move(edges);
    out << line.dump() << '\n';
  }
  ordered_json last;
  last["winner"] = role_name(result.winner);
  last["reason"] = reason_name(result.reason);
  out << last.dump() << '\n';
}

}  // namespace cbgame
