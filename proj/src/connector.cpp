#include "cbgame/connector.hpp"

#include <algorithm>
#include <cmath>

#include "cbgame/decomposition.hpp"
#include "cbgame/errors.hpp"
#include "cbgame/random.hpp"

namespace cbgame {

namespace {

bool arc_ok(const GameState& state, Vertex child, std::optional<EdgeId> id) {
  return id && (state.owner(*id) != Owner::Breaker || state.in_vc(child));
}

std::vector<Branch> children_of(const Branch& br) {
  return {Branch{br.tree.root(), br.tree.subtree(1)}, Branch{br.tree.root(), br.tree.subtree(2)}};
}

template <typename InVc>
Vertex pick_target(const GameState& state, Stage stage, std::span<const Vertex> A1, std::span<const Vertex> A2,
                   InVc in_vc) {
  const int n = state.graph().num_vertices();
  if (stage == Stage::I) {
    for (auto set : {A1, A2}) {
      Vertex best = -1;
      for (Vertex v : set) {
        if (!in_vc(v) && (best < 0 || v < best)) best = v;
      }
      if (best >= 0) return best;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (!in_vc(v)) return v;
    }
  } else {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (in_vc(v)) continue;
      if (best < 0 || state.breaker_degree(v) > state.breaker_degree(best)) best = v;
    }
    if (best >= 0) return best;
  }
  throw NoMoveError("every vertex is already in V_C");
}

}  // namespace

std::vector<Branch> tree_branches(const TreeEmbedding& t) {
  if (t.k < 2) throw ParameterError("a tree needs two levels to split into branches");
  return {Branch{t.root(), t.subtree(1)}, Branch{t.root(), t.subtree(2)}};
}

bool branch_is_good(const Branch& br, Vertex x, const GameState& state) {
  const Graph& g = state.graph();
  if (br.anchor == x || !is_embedded(g, br.tree)) return false;
  if (std::find(br.tree.nodes.begin(), br.tree.nodes.end(), br.anchor) != br.tree.nodes.end()) return false;
  if (!arc_ok(state, br.tree.root(), g.edge_id(br.anchor, br.tree.root()))) return false;
  return is_good_tree(br.tree, x, state);
}

BaseStep base_strategy_step(const GameState& state, const std::vector<Branch>& branches, Vertex x, int budget) {
  BaseStep out;
  auto& claimed = out.move.claimed;
  const auto limit = static_cast<std::size_t>(std::max(budget, 0));
  std::vector<Branch> current = branches;
  while (true) {
    std::vector<const Branch*> good;
    for (const Branch& br : current) {
      if (branch_is_good(br, x, state)) good.push_back(&br);
    }
    if (current.empty() || good.empty()) {
      out.stuck = true;
      return out;
    }
    if (current.front().tree.k == 1) {
      for (const Branch* br : good) {
        if (!state.in_vc(br->tree.root())) continue;
        if (limit >= 1) {
          claimed.emplace_back(br->tree.root(), x);
          out.reaches_target = true;
        } else {
          out.next = current;
        }
        return out;
      }
      const Branch& br = *good.front();
      if (limit >= 1) claimed.emplace_back(br.anchor, br.tree.root());
      if (limit >= 2) {
        claimed.emplace_back(br.tree.root(), x);
        out.reaches_target = true;
      } else {
        out.next = {br};
      }
      return out;
    }
    if (good.size() < 2) {
      out.stuck = true;
      return out;
    }
    std::vector<Edge> needed;
    for (int i = 0; i < 2; ++i) {
      if (!state.in_vc(good[i]->tree.root())) needed.emplace_back(good[i]->anchor, good[i]->tree.root());
    }
    std::vector<Branch> deeper;
    for (int i = 0; i < 2; ++i) {
      for (Branch& c : children_of(*good[i])) deeper.push_back(std::move(c));
    }
    if (needed.empty()) {
      current = std::move(deeper);
      continue;
    }
    if (needed.size() > limit) {
      needed.resize(limit);
      out.next = current;
    } else {
      out.next = std::move(deeper);
    }
    claimed = std::move(needed);
    return out;
  }
}

BaseStep base_strategy_step(const GameState& state, const TreeEmbedding& t, Vertex x, int budget) {
  if (!state.in_vc(t.root())) throw ParameterError("tree root must be in V_C");
  return base_strategy_step(state, tree_branches(t), x, budget);
}

LevelChoice choose_levels(int n, double p, int k_cap) {
  if (k_cap < 2) throw ParameterError("k_cap must be at least 2");
  LevelChoice c;
  c.eps = (n >= 3 && p > 0) ? std::log(p) / std::log(static_cast<double>(n)) + 2.0 / 3.0 : 0.0;
  c.k = k_cap;
  if (c.eps > 0) {
    for (int k = 2; k <= k_cap; ++k) {
      if (epsilon_for_levels(k) <= c.eps) {
        c.k = k;
        break;
      }
    }
  }
  c.k1 = std::min(c.k + 1, k_cap);
  c.k2 = std::min(c.k, k_cap);
  c.budget = std::max(c.k1, c.k2) + 2;
  return c;
}

const char* stage_name(Stage s) { return s == Stage::I ? "I" : "II"; }

Vertex select_target(const GameState& state, Stage stage, std::span<const Vertex> A1, std::span<const Vertex> A2) {
  return pick_target(state, stage, A1, A2, [&](Vertex v) { return state.in_vc(v); });
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> reference_sets(int n) {
  const double nd = static_cast<double>(n);
  const int a1 = std::min(n, static_cast<int>(std::ceil(std::cbrt(nd) - 1e-9)));
  const int a2 = std::min(n - a1, static_cast<int>(std::ceil(std::pow(nd, 2.0 / 3.0) - 1e-9)));
  std::pair<std::vector<Vertex>, std::vector<Vertex>> out;
  for (Vertex v = 0; v < a1; ++v) out.first.push_back(v);
  for (Vertex v = a1; v < a1 + a2; ++v) out.second.push_back(v);
  return out;
}

void PaperConnector::start(const GameState& initial, Role role, std::uint64_t seed) {
  if (role != Role::Connector) throw ParameterError("paper-connector only plays Connector");
  if (!initial.start_vertex()) throw ParameterError("paper-connector needs a start vertex");
  const Graph& g = initial.graph();
  const int n = g.num_vertices();
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const double density = pairs > 0 ? g.num_edges() / pairs : 1.0;
  seed_ = seed;
  levels_ = choose_levels(n, density, config_.k_cap);
  std::tie(A1_, A2_) = reference_sets(n);
  in_A2_ = vertex_mask(n, A2_);
  plan_ = ConnectorPlan{};
  searches_ = expansions_ = cap_hits_ = targets_reached_ = direct_edges_ = 0;
  std::fill(std::begin(case_counts_), std::end(case_counts_), 0);
  degree_flags_ = edge_flags_ = box_flags_ = 0;
  max_rounds_per_target_ = 0;
}

void PaperConnector::begin_target(const GameState& state, const std::vector<char>& extra_vc) {
  const Vertex x = pick_target(state, plan_.stage, A1_, A2_, [&](Vertex v) {
    return state.in_vc(v) || extra_vc[static_cast<std::size_t>(v)];
  });
  plan_.target = x;
  plan_.case_id = 0;
  plan_.rounds_used = 1;
  plan_.branches.clear();
  plan_.hub.reset();
  plan_.entry_edge.reset();
  if (plan_.stage == Stage::II) {
    const double n = static_cast<double>(state.graph().num_vertices());
    if (state.breaker_degree(x) >= 8.0 * levels_.budget * (std::log(n) + 1.0)) ++box_flags_;
  }
}

bool PaperConnector::plan_structure(const GameState& state, std::string& why) {
  const bool a1_done = std::all_of(A1_.begin(), A1_.end(), [&](Vertex v) { return state.in_vc(v); });
  const bool a2_done = std::all_of(A2_.begin(), A2_.end(), [&](Vertex v) { return state.in_vc(v); });
  const bool decompose_first = config_.structure_mode == StructureMode::Decompose;
  bool found = false;
  if (!a1_done) {
    plan_.case_id = 1;
    found = (decompose_first && decompose_stage1(state)) || search_stage1(state);
    if (!found) why = "no forcing tree for the target";
  } else if (!a2_done) {
    plan_.case_id = 2;
    found = (decompose_first && decompose_stage2(state)) || search_stage2(state);
    if (!found) why = "no hub structure for the target";
  } else {
    plan_.case_id = 3;
    why = "no free edge from V_C to the target";
  }
  ++case_counts_[plan_.case_id];
  return found;
}

bool PaperConnector::search_stage1(const GameState& state) {
  const Graph& g = state.graph();
  const Vertex x = *plan_.target;
  ArcRules rules;
  rules.tree_arc = [&state](Vertex, Vertex child, EdgeId id) {
    return state.owner(id) != Owner::Breaker || state.in_vc(child);
  };
  rules.leaf_edge = [&state](Vertex, EdgeId id) { return state.owner(id) != Owner::Breaker; };
  long long used = 0;
  for (int k = 2; k <= levels_.k1; ++k) {
    ++searches_;
    SearchLimits limits{config_.expansion_cap - used, mix_seed(seed_, static_cast<std::uint64_t>(searches_))};
    ForestSearcher search(g, x, k - 1, rules, limits);
    for (Vertex r : state.vc_order()) {
      if (r == x || !search.may_root(r, 2)) continue;
      auto found = search.embed(r, 2);
      if (search.status() == SearchStatus::CapExceeded) {
        ++cap_hits_;
        expansions_ += search.expansions();
        return false;
      }
      if (!found) continue;
      auto t = TreeEmbedding::join(r, (*found)[0], (*found)[1]);
      expansions_ += search.expansions();
      if (!is_good_tree(t, x, state)) throw Error("stage I search returned a tree that is not good");
      plan_.branches = tree_branches(t);
      return true;
    }
    used += search.expansions();
    expansions_ += search.expansions();
  }
  return false;
}

void PaperConnector::use_stage2(const GameState& state, const Stage2Structure& s) {
  plan_.hub = s.z;
  plan_.branches.clear();
  for (const auto& t : s.trees) plan_.branches.push_back(Branch{s.z, t});
  if (!state.in_vc(s.z)) plan_.entry_edge = Edge(s.anchor, s.z);
}

bool PaperConnector::search_stage2(const GameState& state) {
  const Graph& g = state.graph();
  const Vertex x = *plan_.target;
  const EdgeSet B = breaker_edge_set(state);
  const auto M = state.vc_sorted();
  long long used = 0;
  for (int k = 1; k <= levels_.k2; ++k) {
    ++searches_;
    SearchLimits limits{config_.expansion_cap - used, mix_seed(seed_, static_cast<std::uint64_t>(searches_))};
    auto res = find_structure_stage2(g, B, M, A1_, x, k, limits);
    used += res.expansions;
    expansions_ += res.expansions;
    if (res.status == SearchStatus::CapExceeded) {
      ++cap_hits_;
      return false;
    }
    if (res.structure) {
      use_stage2(state, *res.structure);
      return true;
    }
  }
  return false;
}

namespace {

Graph residual_graph(const GameState& state) {
  const Graph& g = state.graph();
  std::vector<Edge> keep;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    if (state.owner(id) != Owner::Breaker) keep.push_back(g.edge(id));
  }
  return Graph::from_edges(g.num_vertices(), keep);
}

std::optional<Decomposition> try_decompose(const Graph& residual, Vertex x, int k, int target, std::uint64_t seed) {
  const int n = residual.num_vertices();
  if (n - 1 < cell_count(k)) return std::nullopt;
  auto cells = random_partition(n, x, k, {}, 0, mix_seed(seed, 0));
  std::vector<int> targets(static_cast<std::size_t>(k), target);
  return decompose(residual, x, cells, k, targets, mix_seed(seed, 1));
}

// Tree under the first root of M_(k,1,l) that v can use as a child.
std::optional<TreeEmbedding> tree_below(const GameState& state, const Decomposition& dec, Vertex v, int l) {
  const Graph& g = state.graph();
  for (Vertex w : dec.m_set(dec.k, 1, l)) {
    if (w == v || !arc_ok(state, w, g.edge_id(v, w))) continue;
    auto t = extract_tree(dec, w, l);
    if (t && std::find(t->nodes.begin(), t->nodes.end(), v) == t->nodes.end()) return t;
  }
  return std::nullopt;
}

}  // namespace

bool PaperConnector::decompose_stage1(const GameState& state) {
  const Vertex x = *plan_.target;
  const Graph residual = residual_graph(state);
  for (int k = 1; k + 1 <= levels_.k1; ++k) {
    ++searches_;
    auto dec = try_decompose(residual, x, k, config_.size_target_override, mix_seed(seed_, static_cast<std::uint64_t>(searches_)));
    if (!dec) continue;
    for (Vertex r : state.vc_order()) {
      if (r == x) continue;
      std::vector<TreeEmbedding> found;
      for (int l = 1; l <= 4 && found.size() < 2; ++l) {
        if (auto t = tree_below(state, *dec, r, l)) found.push_back(std::move(*t));
      }
      if (found.size() < 2) continue;
      auto t = TreeEmbedding::join(r, found[0], found[1]);
      if (!is_good_tree(t, x, state)) continue;
      plan_.branches = tree_branches(t);
      return true;
    }
  }
  return false;
}

bool PaperConnector::decompose_stage2(const GameState& state) {
  const Graph& g = state.graph();
  const Vertex x = *plan_.target;
  const Graph residual = residual_graph(state);
  for (int k = 1; k <= levels_.k2; ++k) {
    ++searches_;
    auto dec = try_decompose(residual, x, k, config_.size_target_override, mix_seed(seed_, static_cast<std::uint64_t>(searches_)));
    if (!dec) continue;
    for (Vertex a : A1_) {
      for (Vertex z : residual.neighbors(a)) {
        if (z == x) continue;
        Stage2Structure s;
        s.z = z;
        s.anchor = a;
        bool ok = true;
        for (int l = 1; l <= 4 && ok; ++l) {
          auto t = tree_below(state, *dec, z, l);
          // Hub arcs must avoid Breaker's edges outright.
          ok = t && state.owner(*g.edge_id(z, t->root())) != Owner::Breaker;
          if (ok) s.trees[static_cast<std::size_t>(l - 1)] = std::move(*t);
        }
        if (!ok) continue;
        use_stage2(state, s);
        return true;
      }
    }
  }
  return false;
}

void PaperConnector::monitor(const GameState& state) {
  const Graph& g = state.graph();
  const int n = g.num_vertices();
  if (n < 2) return;
  const double ln = std::log(static_cast<double>(n));
  int max_db = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!state.in_vc(v)) max_db = std::max(max_db, state.breaker_degree(v));
  }
  if (max_db >= ln * ln) ++degree_flags_;
  const bool a1_open = std::any_of(A1_.begin(), A1_.end(), [&](Vertex v) { return !state.in_vc(v); });
  if (a1_open && state.breaker_edges().size() > 4ull * levels_.budget * A1_.size()) ++edge_flags_;
}

Decision PaperConnector::decide(const GameState& state) {
  monitor(state);
  const Graph& g = state.graph();
  const int n = g.num_vertices();
  Decision d;
  if (plan_.target && !state.in_vc(*plan_.target)) {
    ++plan_.rounds_used;
    max_rounds_per_target_ = std::max(max_rounds_per_target_, plan_.rounds_used);
    if (plan_.rounds_used > levels_.budget) {
      d.forfeit = true;
      d.reason = "round budget exceeded for target " + std::to_string(*plan_.target);
      return d;
    }
  }

  auto& claimed = d.move.claimed;
  const auto limit = static_cast<std::size_t>(std::max(state.m(), 0));
  std::vector<char> extra(static_cast<std::size_t>(n), 0);
  int reached = state.vc_size();
  auto in_vc = [&](Vertex v) { return state.in_vc(v) || extra[static_cast<std::size_t>(v)]; };
  auto absorb = [&](const std::vector<Edge>& edges) {
    for (const Edge& e : edges) {
      for (Vertex v : {e.u, e.v}) {
        if (!in_vc(v)) {
          extra[static_cast<std::size_t>(v)] = 1;
          ++reached;
        }
      }
    }
  };

  while (claimed.size() < limit) {
    if (!plan_.target || in_vc(*plan_.target)) {
      if (plan_.target) {
        ++targets_reached_;
        plan_.stage = plan_.stage == Stage::I ? Stage::II : Stage::I;
        plan_.target.reset();
      }
      if (reached >= n) break;
      begin_target(state, extra);
    }
    const Vertex x = *plan_.target;

    std::optional<Edge> direct;
    for (int pass = 0; pass < 2 && !direct; ++pass) {
      auto nbrs = g.neighbors(x);
      auto ids = g.incident_edges(x);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const Vertex w = nbrs[i];
        if (!state.is_free(ids[i]) || !in_vc(w)) continue;
        if (pass == 0 && !in_A2_[static_cast<std::size_t>(w)]) continue;
        const Edge e(w, x);
        if (std::find(claimed.begin(), claimed.end(), e) != claimed.end()) continue;
        direct = e;
        break;
      }
    }
    if (direct) {
      claimed.push_back(*direct);
      absorb({*direct});
      ++direct_edges_;
      continue;
    }
    if (!claimed.empty()) {
      // Picked after reaching the previous target; its rounds start next turn.
      plan_.rounds_used = 0;
      break;
    }

    if (plan_.case_id == 0) {
      std::string why;
      if (!plan_structure(state, why)) {
        d.forfeit = true;
        d.reason = why + " " + std::to_string(x);
        d.move.claimed.clear();
        return d;
      }
    }
    if (plan_.entry_edge) {
      claimed.push_back(*plan_.entry_edge);
      plan_.entry_edge.reset();
      break;
    }
    auto step = base_strategy_step(state, plan_.branches, x, static_cast<int>(limit - claimed.size()));
    if (step.stuck) {
      d.forfeit = true;
      d.reason = "forcing structure broken for target " + std::to_string(x);
      d.move.claimed.clear();
      return d;
    }
    claimed.insert(claimed.end(), step.move.claimed.begin(), step.move.claimed.end());
    absorb(step.move.claimed);
    plan_.branches = std::move(step.next);
    if (!step.reaches_target) break;
  }
  return d;
}

StrategyReport PaperConnector::report() const {
  StrategyReport r;
  r.failure_flags = static_cast<int>(degree_flags_ + edge_flags_ + box_flags_);
  r.target = plan_.target;
  r.verified = true;
  r.source = config_.structure_mode == StructureMode::Search ? "search" : "decompose";
  r.counters["targets_reached"] = targets_reached_;
  r.counters["direct_edges"] = direct_edges_;
  r.counters["case1"] = case_counts_[1];
  r.counters["case2"] = case_counts_[2];
  r.counters["case3"] = case_counts_[3];
  r.counters["searches"] = searches_;
  r.counters["expansions"] = expansions_;
  r.counters["cap_hits"] = cap_hits_;
  r.counters["degree_flags"] = degree_flags_;
  r.counters["edge_flags"] = edge_flags_;
  r.counters["box_flags"] = box_flags_;
  r.counters["max_rounds_per_target"] = max_rounds_per_target_;
  r.counters["k1"] = levels_.k1;
  r.counters["k2"] = levels_.k2;
  r.counters["budget"] = levels_.budget;
  return r;
}

}  // namespace cbgame
