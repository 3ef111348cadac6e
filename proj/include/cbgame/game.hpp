#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbgame/graph.hpp"

namespace cbgame {

enum class Role { Connector, Breaker };
enum class Owner : std::uint8_t { Free, Connector, Breaker };

inline Role opponent(Role r) { return r == Role::Connector ? Role::Breaker : Role::Connector; }
const char* role_name(Role r);
/// "C" or "B".
const char* role_tag(Role r);

/// Edges claimed in one turn, in claim order.
struct Move {
  std::vector<Edge> claimed;

  friend bool operator==(const Move&, const Move&) = default;
};

/// Full position of an (m:b) Connector-Breaker game.
///
/// V_C is the start vertex plus every endpoint of a Connector edge. A round
/// is one move of the first mover followed by one move of the other player;
/// round() counts completed rounds.
class GameState {
 public:
  /// Empty position on the graph with no vertices.
  GameState();
  GameState(std::shared_ptr<const Graph> graph, int m, int b, std::optional<Vertex> start_vertex,
            Role first = Role::Connector);

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }

  int m() const { return m_; }
  int b() const { return b_; }
  int bias(Role r) const { return r == Role::Connector ? m_ : b_; }
  Role to_move() const { return to_move_; }
  Role first_mover() const { return first_; }
  int round() const { return round_; }
  std::optional<Vertex> start_vertex() const { return start_; }

  Owner owner(EdgeId id) const { return owner_[static_cast<std::size_t>(id)]; }
  bool is_free(EdgeId id) const { return owner(id) == Owner::Free; }
  std::span<const EdgeId> connector_edges() const { return connector_edges_; }
  std::span<const EdgeId> breaker_edges() const { return breaker_edges_; }

  bool in_vc(Vertex v) const { return in_vc_[static_cast<std::size_t>(v)] != 0; }
  /// V_C in the order vertices joined it.
  std::span<const Vertex> vc_order() const { return vc_order_; }
  int vc_size() const { return static_cast<int>(vc_order_.size()); }
  std::vector<Vertex> vc_sorted() const;

  int breaker_degree(Vertex v) const { return breaker_degree_[static_cast<std::size_t>(v)]; }
  int free_edge_count() const { return free_count_; }
  /// Free edges with exactly one endpoint in V_C.
  int frontier_free_count() const { return frontier_free_; }

  /// True iff Connector has at least one legal edge.
  bool connector_can_move() const;
  /// True iff claiming `id` next is legal for Connector.
  bool connector_may_claim(EdgeId id) const;
  bool all_vertices_reached() const;

  /// Validates the whole move, then applies it. On error the state is left
  /// untouched. Throws IllegalMoveError or ConnectivityError.
  void apply(const Move& move);

  /// Throws Error describing the first broken invariant.
  void check_invariants() const;

  friend bool operator==(const GameState& a, const GameState& b);

 private:
  void claim(EdgeId id, Role who);
  void add_to_vc(Vertex v);

  std::shared_ptr<const Graph> graph_;
  int m_;
  int b_;
  std::optional<Vertex> start_;
  Role first_;
  Role to_move_;
  int round_ = 0;
  std::vector<Owner> owner_;
  std::vector<EdgeId> connector_edges_;
  std::vector<EdgeId> breaker_edges_;
  std::vector<char> in_vc_;
  std::vector<Vertex> vc_order_;
  std::vector<int> breaker_degree_;
  int free_count_ = 0;
  int frontier_free_ = 0;
};

/// Copy of `state` with `move` applied by the player to move.
GameState validate_and_apply(const GameState& state, const Move& move);

std::vector<Edge> free_edges(const GameState& state);
bool connector_has_spanned(const GameState& state);

/// Free-form diagnostics a strategy exposes after a game.
struct StrategyReport {
  int failure_flags = 0;
  std::optional<Vertex> target;
  bool verified = false;
  std::string source;
  std::map<std::string, long long> counters;
  std::vector<std::string> notes;
};

struct Decision {
  Move move;
  bool forfeit = false;
  std::string reason;
};

/// A decision procedure for one side of one game.
///
/// start() is called once before play; decide() is called whenever the
/// strategy's role is to move. Instances hold per-game state and must not be
/// shared between concurrently running games; clone() yields a fresh copy.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual void start(const GameState& initial, Role role, std::uint64_t seed) = 0;
  virtual Decision decide(const GameState& state) = 0;
  virtual StrategyReport report() const { return {}; }
  virtual std::unique_ptr<Strategy> clone() const = 0;
};

enum class EndReason { Spanned, BoardExhausted, Forfeit };
const char* reason_name(EndReason r);

struct Ply {
  int round = 0;  // 1-based
  Role player = Role::Connector;
  Move move;
};

struct GameResult {
  Role winner = Role::Breaker;
  EndReason reason = EndReason::BoardExhausted;
  int rounds = 0;
  std::vector<Ply> transcript;
  GameState initial;
  GameState final_state;
  std::string note;  // forfeit reason or illegal-move message
};

struct GameOptions {
  int m = 2;
  int b = 2;
  std::optional<Vertex> start_vertex = 0;
  Role first = Role::Connector;
  std::uint64_t seed = 0;
};

/// Called after every applied move with the new state.
using GameObserver = std::function<void(const GameState&, Role, const Move&)>;

/// Plays a full game. Ends when Connector's vertex set covers V (Connector
/// wins), when Connector has no legal edge left or a whole round passes with
/// no claim (Breaker wins, board-exhausted), or when a strategy forfeits or
/// returns an illegal move (that player loses).
GameResult run_game(std::shared_ptr<const Graph> graph, Strategy& connector, Strategy& breaker,
                    const GameOptions& options, const GameObserver& observer = {});

/// Re-applies every ply to `initial`.
GameState replay_transcript(const GameState& initial, std::span<const Ply> transcript);

void write_transcript_jsonl(std::ostream& out, const GameResult& result);

}  // namespace cbgame
