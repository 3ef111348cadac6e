#include <gtest/gtest.h>

#include <sstream>

#include "cbgame/errors.hpp"
#include "cbgame/game.hpp"
#include "cbgame/strategies.hpp"
#include "support.hpp"

using namespace cbgame;

namespace {

std::shared_ptr<const Graph> complete(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return std::make_shared<const Graph>(Graph::from_edges(n, edges));
}

Move move_of(std::vector<Edge> edges) { return Move{std::move(edges)}; }

}  // namespace

TEST(GameState, ConnectivityRule) {
  auto g = complete(5);
  GameState s(g, 2, 2, 0);
  EXPECT_THROW(s.apply(move_of({{3, 4}})), ConnectivityError);
  EXPECT_EQ(s.vc_size(), 1);
  s.apply(move_of({{0, 1}, {1, 2}}));
  EXPECT_EQ(s.vc_sorted(), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_THROW(s.apply(move_of({{0, 1}})), IllegalMoveError);
}

TEST(GameState, RejectsBadMoves) {
  auto g = complete(4);
  GameState s(g, 1, 1, 0);
  EXPECT_THROW(s.apply(move_of({{0, 1}, {0, 2}})), IllegalMoveError);
  s.apply(move_of({{0, 1}}));
  EXPECT_THROW(s.apply(move_of({{0, 1}})), IllegalMoveError);
  std::vector<Edge> few{{0, 1}};
  auto sparse = std::make_shared<const Graph>(Graph::from_edges(3, few));
  GameState t(sparse, 1, 1, 0);
  EXPECT_THROW(t.apply(move_of({{1, 2}})), IllegalMoveError);
}

TEST(GameState, RoundAccounting) {
  auto g = complete(4);
  GameState s(g, 1, 1, 0);
  EXPECT_EQ(s.round(), 0);
  s.apply(move_of({{0, 1}}));
  EXPECT_EQ(s.round(), 0);
  EXPECT_EQ(s.to_move(), Role::Breaker);
  s.apply(move_of({{2, 3}}));
  EXPECT_EQ(s.round(), 1);
  EXPECT_EQ(s.breaker_degree(2), 1);
}

TEST(GameState, NoStartVertex) {
  auto g = complete(4);
  GameState s(g, 1, 1, std::nullopt);
  s.apply(move_of({{2, 3}}));
  EXPECT_TRUE(s.in_vc(2));
  EXPECT_FALSE(s.in_vc(0));
}

TEST(GameState, FreeEdges) {
  auto g = complete(3);
  GameState s(g, 1, 1, 0);
  EXPECT_EQ(free_edges(s).size(), 3u);
  s.apply(move_of({{0, 1}}));
  s.apply(move_of({{1, 2}}));
  EXPECT_EQ(free_edges(s), (std::vector<Edge>{{0, 2}}));
  s.apply(move_of({{0, 2}}));
  EXPECT_TRUE(free_edges(s).empty());
}

TEST(GameState, ConnectorHasSpanned) {
  std::vector<Edge> p{{0, 1}, {1, 2}, {2, 3}};
  auto path = std::make_shared<const Graph>(Graph::from_edges(4, p));
  GameState s(path, 3, 1, 0);
  EXPECT_FALSE(connector_has_spanned(s));
  s.apply(move_of({{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_TRUE(connector_has_spanned(s));

  auto k4 = complete(4);
  GameState t(k4, 3, 1, 0);
  t.apply(move_of({{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_FALSE(connector_has_spanned(t));
}

TEST(RunGame, SingleEdge) {
  auto g = complete(2);
  GreedyDegreeStrategy c, b;
  const GameResult r = run_game(g, c, b, GameOptions{});
  EXPECT_EQ(r.winner, Role::Connector);
  EXPECT_EQ(r.reason, EndReason::Spanned);
  EXPECT_EQ(r.rounds, 1);
}

TEST(RunGame, EdgelessBoard) {
  auto g = std::make_shared<const Graph>(Graph(3));
  RandomStrategy c, b;
  const GameResult r = run_game(g, c, b, GameOptions{});
  EXPECT_EQ(r.winner, Role::Breaker);
  EXPECT_EQ(r.reason, EndReason::BoardExhausted);
}

TEST(RunGame, DeterministicAndReplayable) {
  for (int seed = 0; seed < 20; ++seed) {
    auto g = std::make_shared<const Graph>(gen_gnp(40, 0.2, seed));
    for (const std::string c_id : {"random", "greedy-degree", "paper-connector"}) {
      for (const std::string b_id : {"random", "greedy-degree", "paper-breaker"}) {
        auto c1 = make_strategy(c_id, Role::Connector);
        auto b1 = make_strategy(b_id, Role::Breaker);
        auto c2 = make_strategy(c_id, Role::Connector);
        auto b2 = make_strategy(b_id, Role::Breaker);
        GameOptions opt;
        opt.seed = static_cast<std::uint64_t>(seed);
        const GameResult r1 = run_game(g, *c1, *b1, opt);
        const GameResult r2 = run_game(g, *c2, *b2, opt);
        std::ostringstream o1, o2;
        write_transcript_jsonl(o1, r1);
        write_transcript_jsonl(o2, r2);
        EXPECT_EQ(o1.str(), o2.str());
        EXPECT_EQ(replay_transcript(r1.initial, r1.transcript), r1.final_state);
        if (r1.winner == Role::Connector) {
          EXPECT_TRUE(r1.final_state.all_vertices_reached());
        }
      }
    }
  }
}

TEST(RunGame, InvariantsAfterEveryMove) {
  for (int seed = 0; seed < 10; ++seed) {
    auto g = std::make_shared<const Graph>(gen_gnp(30, 0.25, 100 + seed));
    RandomStrategy c, b;
    GameOptions opt;
    opt.seed = static_cast<std::uint64_t>(seed);
    int checked = 0;
    run_game(g, c, b, opt, [&](const GameState& s, Role, const Move& mv) {
      EXPECT_NO_THROW(s.check_invariants());
      EXPECT_LE(static_cast<int>(mv.claimed.size()), 2);
      ++checked;
    });
    EXPECT_GT(checked, 0);
  }
}

TEST(RunGame, ForfeitOnIllegalMove) {
  class Cheater : public Strategy {
   public:
    std::string name() const override { return "cheater"; }
    void start(const GameState&, Role, std::uint64_t) override {}
    Decision decide(const GameState&) override { return Decision{Move{{{2, 3}}}, false, {}}; }
    std::unique_ptr<Strategy> clone() const override { return std::make_unique<Cheater>(); }
  };
  auto g = complete(4);
  Cheater c;
  RandomStrategy b;
  const GameResult r = run_game(g, c, b, GameOptions{});
  EXPECT_EQ(r.winner, Role::Breaker);
  EXPECT_EQ(r.reason, EndReason::Forfeit);
  EXPECT_TRUE(r.transcript.empty());
}

TEST(Strategies, Registry) {
  const auto ids = strategy_ids();
  EXPECT_EQ(ids.size(), 5u);
  EXPECT_THROW(make_strategy("nope", Role::Connector), ParameterError);
  EXPECT_THROW(make_strategy("paper-breaker", Role::Connector), ParameterError);
  EXPECT_THROW(make_strategy("paper-connector", Role::Breaker), ParameterError);
  for (const auto& id : {"random", "greedy-degree", "minimax"}) {
    EXPECT_NO_THROW(make_strategy(id, Role::Connector));
    EXPECT_NO_THROW(make_strategy(id, Role::Breaker));
  }
}

TEST(Strategies, MovesAreLegal) {
  for (int seed = 0; seed < 10; ++seed) {
    auto g = std::make_shared<const Graph>(gen_gnp(25, 0.3, 500 + seed));
    for (const std::string id : {"random", "greedy-degree"}) {
      auto c = make_strategy(id, Role::Connector);
      auto b = make_strategy(id, Role::Breaker);
      GameOptions opt;
      opt.seed = static_cast<std::uint64_t>(seed);
      const GameResult r = run_game(g, *c, *b, opt);
      EXPECT_NE(r.reason, EndReason::Forfeit) << id << " " << r.note;
    }
  }
}

TEST(Strategies, MinimaxWinsK3) {
  auto g = complete(3);
  MinimaxStrategy c, b;
  GameOptions opt;
  opt.m = 1;
  opt.b = 1;
  const GameResult r = run_game(g, c, b, opt);
  EXPECT_EQ(r.winner, Role::Connector);
}
