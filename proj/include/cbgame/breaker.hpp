#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbgame/game.hpp"
#include "cbgame/graph.hpp"

namespace cbgame {

/// Layered bad set around a target vertex x.
///
/// layers[i-1] holds B_i (sorted). level[v] is 0 for x, i for v in B_i and -1
/// for every other vertex.
struct BadSetDecomposition {
  Vertex x = -1;
  int r_x = 1;
  std::vector<std::vector<Vertex>> layers;
  std::vector<Vertex> bad;  // B^x, sorted
  std::vector<int> level;

  int level_of(Vertex v) const { return level[static_cast<std::size_t>(v)]; }
  bool in_bad(Vertex v) const { return level_of(v) > 0; }
  const std::vector<Vertex>& layer(int i) const { return layers[static_cast<std::size_t>(i - 1)]; }

  friend bool operator==(const BadSetDecomposition&, const BadSetDecomposition&) = default;
};

/// B_1 = N(x) minus `excluded`; then repeatedly B_i = vertices outside
/// B^x, x and `excluded` with at least two neighbours in the current B^x,
/// stopping at the first empty layer. r_x is the index of the last layer
/// computed before that (1 when B_1 is empty).
BadSetDecomposition build_bad_set(const Graph& g, Vertex x, std::span<const Vertex> excluded = {});

/// Candidates x_1..x_t with their bad sets, each computed standalone, and
/// the running unions B^{(j,i)} over them.
struct SuccessiveBadSets {
  std::vector<Vertex> candidates;
  std::vector<BadSetDecomposition> decs;

  int size() const { return static_cast<int>(candidates.size()); }
  /// r_{x_j}, 1-based j.
  int r(int j) const { return decs[static_cast<std::size_t>(j - 1)].r_x; }
  /// B^{(j,i)}: all of B^{x_l} for l < j plus B_1..B_i of x_j. Sorted.
  std::vector<Vertex> cumulative(int j, int i) const;
  /// a(j,i): (j,i-1) for i > 1, (j-1, r_{x_{j-1}}) for i = 1.
  std::pair<int, int> predecessor(int j, int i) const;
};

SuccessiveBadSets build_successive(const Graph& g, std::span<const Vertex> candidates);

struct CandidateResult {
  Vertex x = -1;
  BadSetDecomposition dec;
  SuccessiveBadSets successive;  // every candidate examined, in order
};

/// Samples up to t distinct vertices of V \ M uniformly (seeded), builds
/// their bad sets in order and returns the first candidate whose set passes
/// B1-B4 against M. Throws CapacityError when n < t + 4.
std::optional<CandidateResult> find_candidate(const Graph& g, std::span<const Vertex> M, int t,
                                              std::uint64_t seed);

/// Free edges vw with v outside V_C in level i of the decomposition (x at
/// level 0), w in V_C, and w not in a level below i. Sorted.
std::vector<Edge> q_violations(const GameState& state, const BadSetDecomposition& dec);

struct BreakerMoveResult {
  Move move;
  bool failure = false;
  int violations = 0;
};

/// Claims the current violations, then fills up to b edges with free edges at
/// x, then at B_1, then the lowest-index free edge. More than b violations
/// keeps the first b and sets the failure flag.
BreakerMoveResult breaker_move(const GameState& state, const BadSetDecomposition& dec);

struct PaperBreakerConfig {
  int t = 7;
  /// Extra candidates tried with a direct B1-B4 check when the sampled t fail.
  int extended_budget = 64;
};

/// Picks the target x at its first move with M = V_C and then restores the
/// invariant every turn. Reports the target, whether B1-B4 held for it, which
/// search produced it and the number of turns with too many violations.
class PaperBreaker : public Strategy {
 public:
  explicit PaperBreaker(PaperBreakerConfig config = {}) : config_(config) {}

  std::string name() const override { return "paper-breaker"; }
  void start(const GameState& initial, Role role, std::uint64_t seed) override;
  Decision decide(const GameState& state) override;
  StrategyReport report() const override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<PaperBreaker>(config_); }

  const std::optional<BadSetDecomposition>& decomposition() const { return dec_; }

 private:
  void choose_target(const GameState& state);
  void scan_new_vc(const GameState& state);

  PaperBreakerConfig config_;
  std::uint64_t seed_ = 0;
  std::optional<BadSetDecomposition> dec_;
  bool verified_ = false;
  std::string source_;
  int failures_ = 0;
  std::size_t vc_seen_ = 0;
  std::vector<EdgeId> pending_;
  std::vector<char> pending_mark_;
  EdgeId cursor_ = 0;
  long long violations_claimed_ = 0;
  long long filler_claimed_ = 0;
};

}  // namespace cbgame
