#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cbgame/breaker.hpp"
#include "cbgame/connector.hpp"
#include "cbgame/game.hpp"
#include "cbgame/random.hpp"
#include "cbgame/solver.hpp"

namespace cbgame {

/// Uniformly random legal edges, one at a time, up to the bias.
class RandomStrategy : public Strategy {
 public:
  std::string name() const override { return "random"; }
  void start(const GameState& initial, Role role, std::uint64_t seed) override;
  Decision decide(const GameState& state) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<RandomStrategy>(); }

 private:
  Role role_ = Role::Connector;
  Rng rng_{0};
};

/// Connector grabs the frontier vertex with the highest Breaker degree.
/// Breaker cuts the vertex outside V_C with the fewest free edges into V_C.
/// Ties go to the lowest index.
class GreedyDegreeStrategy : public Strategy {
 public:
  std::string name() const override { return "greedy-degree"; }
  void start(const GameState& initial, Role role, std::uint64_t seed) override;
  Decision decide(const GameState& state) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<GreedyDegreeStrategy>(); }

 private:
  Role role_ = Role::Connector;
};

/// Optimal play from the exact solver; tiny boards only.
class MinimaxStrategy : public Strategy {
 public:
  explicit MinimaxStrategy(Goal goal = Goal::spanning(), int max_edges = 16) : goal_(goal), max_edges_(max_edges) {}
  std::string name() const override { return "minimax"; }
  void start(const GameState&, Role, std::uint64_t) override {}
  Decision decide(const GameState& state) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<MinimaxStrategy>(goal_, max_edges_); }

 private:
  Goal goal_;
  int max_edges_;
};

struct StrategyOptions {
  PaperConnectorConfig connector;
  PaperBreakerConfig breaker;
  Goal goal = Goal::spanning();
  int solver_max_edges = 16;
};

/// "paper-breaker", "paper-connector", "random", "greedy-degree", "minimax".
std::vector<std::string> strategy_ids();

/// Throws ParameterError for an unknown id or a role-bound strategy in the wrong role.
std::unique_ptr<Strategy> make_strategy(const std::string& id, Role role, const StrategyOptions& options = {});

}  // namespace cbgame
