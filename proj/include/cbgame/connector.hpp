#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbgame/game.hpp"
#include "cbgame/graph.hpp"
#include "cbgame/structures.hpp"
#include "cbgame/trees.hpp"

namespace cbgame {

/// A subtree whose root hangs off a vertex Connector already owns.
struct Branch {
  Vertex anchor = -1;
  TreeEmbedding tree;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// The two root subtrees of t, anchored at its root. Needs t.k >= 2.
std::vector<Branch> tree_branches(const TreeEmbedding& t);

/// Branch still usable to reach x: x not in it, the anchor arc and every
/// inner arc u->w either not Breaker's or ending in V_C, leaf-x edges not
/// Breaker's.
bool branch_is_good(const Branch& br, Vertex x, const GameState& state);

struct BaseStep {
  Move move;
  std::vector<Branch> next;  // branches to continue with next turn
  bool reaches_target = false;
  bool stuck = false;        // too few good branches left
};

/// One turn of the forcing strategy on a set of equal-height branches with
/// anchors in V_C. Height 1: claim anchor-leaf then leaf-x (only leaf-x when
/// the leaf is in V_C). Greater heights: take the first two good branches
/// and claim the arcs to their roots; when both roots are already in V_C,
/// descend to their four subtrees within the same turn. At most `budget`
/// edges are claimed.
BaseStep base_strategy_step(const GameState& state, const std::vector<Branch>& branches, Vertex x, int budget);
/// Same for a whole tree whose root is in V_C.
BaseStep base_strategy_step(const GameState& state, const TreeEmbedding& t, Vertex x, int budget);

struct LevelChoice {
  double eps = 0;
  int k = 2;
  int k1 = 3;
  int k2 = 2;
  int budget = 5;
};

/// eps = ln p / ln n + 2/3; k is the smallest level count >= 2 whose matched
/// density exponent is at most eps, clipped to k_cap. Stage I trees get up to
/// k+1 levels, Stage II trees up to k; the per-target round budget is
/// max(k1, k2) + 2.
LevelChoice choose_levels(int n, double p, int k_cap);

enum class Stage { I, II };
const char* stage_name(Stage s);

/// Stage I: lowest-index vertex of A1 \ V_C, else of A2 \ V_C, else of
/// V \ V_C. Stage II: largest Breaker degree outside V_C, lowest index on
/// ties. Throws NoMoveError when V_C = V.
Vertex select_target(const GameState& state, Stage stage, std::span<const Vertex> A1, std::span<const Vertex> A2);

/// A1 = the ceil(n^(1/3)) lowest vertices, A2 = the next ceil(n^(2/3)).
std::pair<std::vector<Vertex>, std::vector<Vertex>> reference_sets(int n);

enum class StructureMode { Search, Decompose };

struct PaperConnectorConfig {
  int k_cap = 4;
  long long expansion_cap = 1'000'000;
  /// Per-level M-set size used in decompose mode; 0 keeps every survivor.
  int size_target_override = 0;
  StructureMode structure_mode = StructureMode::Search;
};

struct ConnectorPlan {
  Stage stage = Stage::I;
  std::optional<Vertex> target;
  int case_id = 0;  // 1..3 once a structure has been chosen for the target
  int rounds_used = 0;
  std::vector<Branch> branches;
  std::optional<Vertex> hub;         // z of a Stage II structure
  std::optional<Edge> entry_edge;    // A1-z edge still to be claimed
};

/// Alternates Stage I and Stage II targets from the start vertex until every
/// vertex is in V_C. A target is reached by a direct edge from V_C when one is
/// free, otherwise by a forcing tree (while A1 is not yet covered), a hub with
/// four trees (while A2 is not yet covered), or not at all (forfeit).
class PaperConnector : public Strategy {
 public:
  explicit PaperConnector(PaperConnectorConfig config = {}) : config_(config) {}

  std::string name() const override { return "paper-connector"; }
  void start(const GameState& initial, Role role, std::uint64_t seed) override;
  Decision decide(const GameState& state) override;
  StrategyReport report() const override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<PaperConnector>(config_); }

  const ConnectorPlan& plan() const { return plan_; }
  const LevelChoice& levels() const { return levels_; }

 private:
  void begin_target(const GameState& state, const std::vector<char>& extra_vc);
  void use_stage2(const GameState& state, const Stage2Structure& s);
  bool plan_structure(const GameState& state, std::string& why);
  bool search_stage1(const GameState& state);
  bool search_stage2(const GameState& state);
  bool decompose_stage1(const GameState& state);
  bool decompose_stage2(const GameState& state);
  void monitor(const GameState& state);

  PaperConnectorConfig config_;
  std::uint64_t seed_ = 0;
  LevelChoice levels_;
  std::vector<Vertex> A1_, A2_;
  std::vector<char> in_A2_;
  ConnectorPlan plan_;
  long long searches_ = 0;
  long long expansions_ = 0;
  long long cap_hits_ = 0;
  long long targets_reached_ = 0;
  long long direct_edges_ = 0;
  long long case_counts_[4] = {0, 0, 0, 0};
  long long degree_flags_ = 0;
  long long edge_flags_ = 0;
  long long box_flags_ = 0;
  int max_rounds_per_target_ = 0;
};

}  // namespace cbgame
