#include "cbgame/structures.hpp"

#include <algorithm>
#include <numeric>

#include "cbgame/errors.hpp"
#include "cbgame/random.hpp"

namespace cbgame {

ForestSearcher::ForestSearcher(const Graph& g, Vertex x, int h, ArcRules rules, const SearchLimits& limits)
    : g_(g), x_(x), h_(h), rules_(std::move(rules)), cap_(limits.expansion_cap) {
  if (h < 1) throw ParameterError("subtree height must be at least 1");
  g.check_vertex(x);
  const int n = g.num_vertices();
  const auto un = static_cast<std::size_t>(n);

  std::vector<std::uint32_t> order(un);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(limits.seed);
  rng.shuffle(order);
  rank_.assign(un, 0);
  for (std::size_t i = 0; i < un; ++i) rank_[order[i]] = static_cast<std::uint32_t>(i);

  auto allowed = [&](Vertex v) { return v != x_ && (!rules_.vertex_allowed || rules_.vertex_allowed(v)); };

  levels_.assign(static_cast<std::size_t>(h), std::vector<char>(un, 0));
  std::vector<Vertex> current;
  auto xs = g.neighbors(x);
  auto xe = g.incident_edges(x);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (allowed(xs[i]) && (!rules_.leaf_edge || rules_.leaf_edge(xs[i], xe[i]))) {
      levels_[0][static_cast<std::size_t>(xs[i])] = 1;
      current.push_back(xs[i]);
    }
  }
  std::vector<int> count(un, 0);
  for (int level = 2; level <= h; ++level) {
    std::vector<Vertex> touched;
    for (Vertex c : current) {
      auto nbrs = g.neighbors(c);
      auto ids = g.incident_edges(c);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const Vertex v = nbrs[i];
        if (!allowed(v) || !tree_ok(v, c, ids[i])) continue;
        if (count[static_cast<std::size_t>(v)]++ == 0) touched.push_back(v);
      }
    }
    current.clear();
    for (Vertex v : touched) {
      if (count[static_cast<std::size_t>(v)] >= 2) {
        levels_[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(v)] = 1;
        current.push_back(v);
      }
      count[static_cast<std::size_t>(v)] = 0;
    }
  }
  used_.assign(un, 0);
}

bool ForestSearcher::top_ok(Vertex root, Vertex child, EdgeId id) const {
  if (rules_.top_arc) return rules_.top_arc(root, child, id);
  return tree_ok(root, child, id);
}

bool ForestSearcher::tree_ok(Vertex parent, Vertex child, EdgeId id) const {
  return !rules_.tree_arc || rules_.tree_arc(parent, child, id);
}

bool ForestSearcher::may_root(Vertex root, int children) const {
  if (root == x_) return false;
  auto nbrs = g_.neighbors(root);
  auto ids = g_.incident_edges(root);
  int ok = 0;
  for (std::size_t i = 0; i < nbrs.size() && ok < children; ++i) {
    if (in_level(h_, nbrs[i]) && top_ok(root, nbrs[i], ids[i])) ++ok;
  }
  return ok >= children;
}

std::optional<std::vector<TreeEmbedding>> ForestSearcher::embed(Vertex root, int children) {
  if (children < 1) throw ParameterError("forest needs at least one subtree");
  status_ = SearchStatus::Absent;
  if (!may_root(root, children)) return std::nullopt;

  positions_.clear();
  // Pre-order layout: each subtree root followed by its whole subtree.
  std::function<void(int, int, int)> lay_out = [&](int parent, int level, int prev) {
    const int self = static_cast<int>(positions_.size());
    positions_.push_back(Position{parent, level, prev});
    if (level > 1) {
      const int first = static_cast<int>(positions_.size());
      lay_out(self, level - 1, -1);
      lay_out(self, level - 1, first);
    }
  };
  int prev = -1;
  for (int c = 0; c < children; ++c) {
    const int here = static_cast<int>(positions_.size());
    lay_out(-1, h_, prev);
    prev = here;
  }

  assigned_.assign(positions_.size(), -1);
  root_ = root;
  used_[static_cast<std::size_t>(root)] = 1;
  bool found = false;
  try {
    found = assign(0);
  } catch (const CapacityError&) {
    status_ = SearchStatus::CapExceeded;
  }
  used_[static_cast<std::size_t>(root)] = 0;
  if (!found) {
    for (Vertex v : assigned_) {
      if (v >= 0) used_[static_cast<std::size_t>(v)] = 0;
    }
    return std::nullopt;
  }
  for (Vertex v : assigned_) used_[static_cast<std::size_t>(v)] = 0;
  status_ = SearchStatus::Found;

  // Convert pre-order positions to heap-ordered trees.
  std::vector<TreeEmbedding> out;
  std::size_t idx = 0;
  const int per_tree = TreeEmbedding::node_count(h_);
  for (int c = 0; c < children; ++c) {
    std::vector<Vertex> heap(static_cast<std::size_t>(per_tree), -1);
    std::function<void(int)> place = [&](int heap_index) {
      heap[static_cast<std::size_t>(heap_index)] = assigned_[idx++];
      if (2 * heap_index + 1 < per_tree) {
        place(2 * heap_index + 1);
        place(2 * heap_index + 2);
      }
    };
    place(0);
    out.emplace_back(h_, std::move(heap));
  }
  return out;
}

bool ForestSearcher::assign(std::size_t idx) {
  if (idx == positions_.size()) return true;
  const Position& pos = positions_[idx];
  const Vertex parent = pos.parent < 0 ? root_ : assigned_[static_cast<std::size_t>(pos.parent)];
  const std::uint32_t floor_rank =
      pos.prev_sibling < 0 ? 0 : rank(assigned_[static_cast<std::size_t>(pos.prev_sibling)]) + 1;

  std::vector<std::pair<std::uint32_t, Vertex>> options;
  auto nbrs = g_.neighbors(parent);
  auto ids = g_.incident_edges(parent);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const Vertex v = nbrs[i];
    if (used_[static_cast<std::size_t>(v)] || !in_level(pos.level, v) || rank(v) < floor_rank) continue;
    const bool ok = pos.parent < 0 ? top_ok(parent, v, ids[i]) : tree_ok(parent, v, ids[i]);
    if (ok) options.emplace_back(rank(v), v);
  }
  std::sort(options.begin(), options.end());
  for (auto [r, v] : options) {
    if (++expansions_ > cap_) throw CapacityError("tree search expansion cap exceeded");
    assigned_[idx] = v;
    used_[static_cast<std::size_t>(v)] = 1;
    if (assign(idx + 1)) return true;
    used_[static_cast<std::size_t>(v)] = 0;
    assigned_[idx] = -1;
  }
  return false;
}

Stage1Search find_tree_stage1(const Graph& g, const EdgeSet& B, Vertex r, Vertex x, int k1,
                              const SearchLimits& limits) {
  g.check_vertex(r);
  g.check_vertex(x);
  if (r == x) throw ParameterError("root and target must differ");
  if (k1 < 2) throw ParameterError("tree needs at least two levels");
  ArcRules rules;
  rules.tree_arc = [&B](Vertex, Vertex, EdgeId id) { return !B.contains(id); };
  rules.leaf_edge = [&B](Vertex, EdgeId id) { return !B.contains(id); };
  ForestSearcher search(g, x, k1 - 1, rules, limits);
  Stage1Search out;
  auto found = search.embed(r, 2);
  out.status = search.status();
  out.expansions = search.expansions();
  if (found) out.tree = TreeEmbedding::join(r, (*found)[0], (*found)[1]);
  return out;
}

Stage2Search find_structure_stage2(const Graph& g, const EdgeSet& B, std::span<const Vertex> M,
                                   std::span<const Vertex> A1, Vertex x, int k2, const SearchLimits& limits) {
  g.check_vertex(x);
  if (k2 < 1) throw ParameterError("trees need at least one level");
  auto in_m = vertex_mask(g.num_vertices(), M);
  ArcRules rules;
  rules.tree_arc = [&](Vertex, Vertex child, EdgeId id) {
    return !B.contains(id) || in_m[static_cast<std::size_t>(child)];
  };
  rules.top_arc = [&B](Vertex, Vertex, EdgeId id) { return !B.contains(id); };
  rules.leaf_edge = [&B](Vertex, EdgeId id) { return !B.contains(id); };
  ForestSearcher search(g, x, k2, rules, limits);

  // z ranges over N_{G\B}(A1) minus x, each with its lowest anchor.
  std::vector<Vertex> anchor(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<Vertex> zs;
  std::vector<Vertex> a_sorted(A1.begin(), A1.end());
  std::sort(a_sorted.begin(), a_sorted.end());
  for (Vertex a : a_sorted) {
    g.check_vertex(a);
    auto nbrs = g.neighbors(a);
    auto ids = g.incident_edges(a);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const Vertex z = nbrs[i];
      if (z == x || B.contains(ids[i]) || anchor[static_cast<std::size_t>(z)] >= 0) continue;
      anchor[static_cast<std::size_t>(z)] = a;
      zs.push_back(z);
    }
  }
  std::sort(zs.begin(), zs.end(), [&](Vertex a, Vertex b) { return search.rank(a) < search.rank(b); });

  Stage2Search out;
  for (Vertex z : zs) {
    auto found = search.embed(z, 4);
    if (search.status() == SearchStatus::CapExceeded) {
      out.status = SearchStatus::CapExceeded;
      break;
    }
    if (found) {
      Stage2Structure s;
      s.z = z;
      s.anchor = anchor[static_cast<std::size_t>(z)];
      for (std::size_t l = 0; l < 4; ++l) s.trees[l] = (*found)[l];
      out.structure = std::move(s);
      out.status = SearchStatus::Found;
      break;
    }
  }
  out.expansions = search.expansions();
  return out;
}

EdgeSet breaker_edge_set(const GameState& state) {
  EdgeSet set(state.graph().num_edges());
  for (EdgeId id : state.breaker_edges()) set.insert(id);
  return set;
}

}  // namespace cbgame
