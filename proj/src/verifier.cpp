#include "cbgame/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "cbgame/errors.hpp"

namespace cbgame {

namespace {

using nlohmann::json;

json edge_json(const Edge& e) { return json::array({e.u, e.v}); }

Clause hard(std::string name) { return Clause{std::move(name), true, ClauseKind::Hard, std::nullopt, nullptr}; }

Clause bound(std::string name, double threshold) {
  return Clause{std::move(name), true, ClauseKind::Bound, threshold, nullptr};
}

void fail(Clause& c, json witness) {
  if (!c.holds) return;  // keep the first witness
  c.holds = false;
  c.witness = std::move(witness);
}

int count_in(const Graph& g, Vertex v, const std::vector<char>& mask) {
  int c = 0;
  for (Vertex w : g.neighbors(v)) c += mask[static_cast<std::size_t>(w)] ? 1 : 0;
  return c;
}

bool sorted_has(const std::vector<Vertex>& v, Vertex x) { return std::binary_search(v.begin(), v.end(), x); }

}  // namespace

const Clause* PropertyReport::find(const std::string& name) const {
  for (const Clause& c : clauses) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool PropertyReport::holds(const std::string& name) const {
  const Clause* c = find(name);
  if (!c) throw ParameterError("report has no clause " + name);
  return c->holds;
}

bool PropertyReport::all_hold() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.holds; });
}

bool PropertyReport::hard_hold() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const Clause& c) { return c.kind == ClauseKind::Bound || c.holds; });
}

json PropertyReport::to_json() const {
  json out;
  out["family"] = family;
  out["params"] = params;
  json list = json::array();
  for (const Clause& c : clauses) {
    json item;
    item["name"] = c.name;
    item["holds"] = c.holds;
    item["kind"] = c.kind == ClauseKind::Hard ? "hard" : "bound";
    if (c.threshold) item["threshold"] = *c.threshold;
    if (!c.holds) item["witness"] = c.witness;
    list.push_back(std::move(item));
  }
  out["clauses"] = std::move(list);
  out["all_hold"] = all_hold();
  return out;
}

PropertyReport check_B(const Graph& g, const BadSetDecomposition& dec, std::span<const Vertex> M) {
  PropertyReport r;
  r.family = "B";
  r.params = {{"n", g.num_vertices()}, {"x", dec.x}, {"r_x", dec.r_x}, {"bad_size", dec.bad.size()}};
  const int n = g.num_vertices();

  Clause b1 = hard("B1");
  const std::vector<Vertex> b1_set = dec.layers.empty() ? std::vector<Vertex>{} : dec.layers.front();
  auto nx = g.neighbors(dec.x);
  for (Vertex v : nx) {
    if (!sorted_has(b1_set, v)) fail(b1, {{"missing_neighbor", v}});
  }
  for (Vertex v : b1_set) {
    if (!g.has_edge(v, dec.x)) fail(b1, {{"non_neighbor", v}});
  }
  for (const Edge& e : edges_within(g, b1_set)) fail(b1, {{"edge", edge_json(e)}});
  r.clauses.push_back(b1);

  Clause b2 = hard("B2");
  std::vector<char> upto(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= static_cast<int>(dec.layers.size()); ++i) {
    for (Vertex v : dec.layer(i)) upto[static_cast<std::size_t>(v)] = 1;
    if (i < 2) continue;
    for (Vertex v : dec.layer(i)) {
      const int d = count_in(g, v, upto);
      if (d != 2) fail(b2, {{"vertex", v}, {"layer", i}, {"degree", d}});
    }
  }
  r.clauses.push_back(b2);

  Clause b3 = hard("B3");
  auto in_bad = vertex_mask(n, dec.bad);
  for (Vertex v = 0; v < n; ++v) {
    if (v == dec.x || in_bad[static_cast<std::size_t>(v)]) continue;
    const int d = count_in(g, v, in_bad);
    if (d > 1) fail(b3, {{"vertex", v}, {"degree", d}});
  }
  r.clauses.push_back(b3);

  Clause b4 = hard("B4");
  auto in_m = vertex_mask(n, M);
  for (Vertex v : dec.bad) {
    if (in_m[static_cast<std::size_t>(v)]) {
      fail(b4, {{"vertex", v}, {"in", "M"}});
    } else if (count_in(g, v, in_m) > 0) {
      fail(b4, {{"vertex", v}, {"in", "N(M)"}});
    }
  }
  r.clauses.push_back(b4);
  return r;
}

std::vector<Vertex> n_s_set(const Graph& g, std::span<const Vertex> set, int s) {
  auto mask = vertex_mask(g.num_vertices(), set);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (mask[static_cast<std::size_t>(v)]) continue;
    if (count_in(g, v, mask) >= s) out.push_back(v);
  }
  return out;
}

bool bad_set_regime(int n, double eps) {
  if (n < 3) return false;
  const double ln = std::log(static_cast<double>(n));
  return eps >= 7.0 * std::log(ln) / ln;
}

PropertyReport check_P(const Graph& g, const SuccessiveBadSets& succ, double eps) {
  if (!(eps > 0)) throw ParameterError("eps must be positive");
  PropertyReport r;
  r.family = "P";
  const int n = g.num_vertices();
  const double nd = static_cast<double>(n);
  const int cap = static_cast<int>(std::ceil(1.0 / eps));
  r.params = {{"n", n}, {"eps", eps}, {"t", succ.size()}, {"regime_ok", bad_set_regime(n, eps)}, {"round_cap", cap}};

  Clause p1 = hard("P1"), p2 = bound("P2", std::pow(nd, (1.0 - eps) / 3.0)), p3 = hard("P3"), p4 = hard("P4");
  std::vector<Clause> p5;
  for (int s = 0; s <= 3; ++s) p5.push_back(bound("P5_s" + std::to_string(s), std::pow(nd, (3.0 - s * (1.0 + eps)) / 3.0)));
  Clause p6 = hard("P6");

  for (int j = 1; j <= succ.size(); ++j) {
    const BadSetDecomposition& dec = succ.decs[static_cast<std::size_t>(j - 1)];
    const int r_tilde = std::min(dec.r_x, cap);
    std::vector<Vertex> before;  // B^{a(j,1)}
    if (j > 1) before = succ.cumulative(j - 1, succ.r(j - 1));
    auto before_mask = vertex_mask(n, before);
    std::vector<char> before_or_nbr = before_mask;
    for (Vertex v : before) {
      for (Vertex w : g.neighbors(v)) before_or_nbr[static_cast<std::size_t>(w)] = 1;
    }
    if (before_or_nbr[static_cast<std::size_t>(dec.x)]) fail(p1, {{"j", j}, {"x", dec.x}});

    for (int i = 1; i <= r_tilde && i <= static_cast<int>(dec.layers.size()); ++i) {
      const auto& layer = dec.layer(i);
      const double size_bound = std::pow(nd, (1.0 - i * eps) / 3.0);
      if (!(static_cast<double>(layer.size()) < size_bound)) {
        fail(p2, {{"j", j}, {"i", i}, {"size", layer.size()}, {"bound", size_bound}});
      }
      auto inner = edges_within(g, layer);
      if (!inner.empty()) fail(p3, {{"j", j}, {"i", i}, {"edge", edge_json(inner.front())}});
      for (Vertex v : layer) {
        if (before_or_nbr[static_cast<std::size_t>(v)]) {
          fail(p4, {{"j", j}, {"i", i}, {"vertex", v}});
          break;
        }
      }
      const auto cum = succ.cumulative(j, i);
      auto cum_mask = vertex_mask(n, cum);
      std::vector<int> deg(static_cast<std::size_t>(n), 0);
      for (Vertex v : cum) {
        for (Vertex w : g.neighbors(v)) ++deg[static_cast<std::size_t>(w)];
      }
      for (int s = 0; s <= 3; ++s) {
        long long count = 0;
        for (Vertex v = 0; v < n; ++v) {
          if (!cum_mask[static_cast<std::size_t>(v)] && deg[static_cast<std::size_t>(v)] >= s) ++count;
        }
        const double limit = (2.0 * j / eps + i) * std::pow(nd, (3.0 - s * (1.0 + eps)) / 3.0);
        if (!(static_cast<double>(count) <= limit)) {
          fail(p5[static_cast<std::size_t>(s)], {{"j", j}, {"i", i}, {"count", count}, {"bound", limit}});
        }
      }
    }
    if (dec.r_x != r_tilde) fail(p6, {{"j", j}, {"r_x", dec.r_x}, {"r_tilde", r_tilde}});
  }
  r.clauses.push_back(p1);
  r.clauses.push_back(p2);
  r.clauses.push_back(p3);
  r.clauses.push_back(p4);
  for (auto& c : p5) r.clauses.push_back(c);
  r.clauses.push_back(p6);
  return r;
}

PropertyReport check_D(const Graph& g, const Decomposition& dec, double eps) {
  PropertyReport r;
  r.family = "D";
  const int k = dec.k;
  const double nd = static_cast<double>(g.num_vertices());
  r.params = {{"n", g.num_vertices()}, {"k", k}, {"eps", eps}, {"x", dec.x}, {"targets", dec.targets},
              {"h_edges", dec.H.size()}};
  const auto alpha = alpha_table(k);
  const std::vector<Vertex> root_set{dec.x};

  Clause d1 = hard("D1"), d2 = bound("D2", 0), d3 = hard("D3"), d5 = hard("D5"), d6 = hard("D6");
  Clause d4 = bound("D4", 0);
  d2.threshold.reset();
  d4.threshold.reset();
  for (int slot = 0; slot < cell_count(k); ++slot) {
    const CellIndex c = cell_at(k, slot);
    const auto& m = dec.M[static_cast<std::size_t>(slot)];
    const auto& cell = dec.cells[static_cast<std::size_t>(slot)];
    for (Vertex v : m) {
      if (!sorted_has(cell, v)) fail(d1, {{"cell", {c.i, c.j, c.l}}, {"vertex", v}});
    }
    const int target = dec.targets[static_cast<std::size_t>(c.i - 1)];
    if (target > 0 && static_cast<int>(m.size()) != target) {
      fail(d2, {{"cell", {c.i, c.j, c.l}}, {"size", m.size()}, {"target", target}});
    }
    if (c.i == 1) {
      for (Vertex v : m) {
        if (!dec.h_has(v, dec.x)) fail(d5, {{"cell", {c.i, c.j, c.l}}, {"vertex", v}});
      }
      continue;
    }
    const auto& left = dec.m_set(c.i - 1, 2 * c.j - 1, c.l);
    const auto& right = dec.m_set(c.i - 1, 2 * c.j, c.l);
    for (Vertex v : m) {
      for (const auto* child : {&left, &right}) {
        const bool hit = std::any_of(child->begin(), child->end(), [&](Vertex w) { return dec.h_has(v, w); });
        if (!hit) fail(d3, {{"cell", {c.i, c.j, c.l}}, {"vertex", v}});
      }
    }
    const double limit = std::pow(nd, static_cast<double>(alpha[static_cast<std::size_t>(c.i - 1)] -
                                                          alpha[static_cast<std::size_t>(c.i - 2)]) *
                                          eps);
    for (const auto* child : {&left, &right}) {
      for (Vertex v : *child) {
        const auto d = std::count_if(m.begin(), m.end(), [&](Vertex w) { return dec.h_has(v, w); });
        if (static_cast<double>(d) > limit) {
          fail(d4, {{"cell", {c.i, c.j, c.l}}, {"vertex", v}, {"degree", d}, {"bound", limit}});
        }
      }
    }
  }

  for (const Edge& e : dec.H) {
    bool placed = false;
    if (g.has_edge(e.u, e.v)) {
      for (int slot = 0; slot < cell_count(k) && !placed; ++slot) {
        const CellIndex c = cell_at(k, slot);
        const auto& m = dec.M[static_cast<std::size_t>(slot)];
        const auto& left = c.i == 1 ? root_set : dec.m_set(c.i - 1, 2 * c.j - 1, c.l);
        const auto& right = c.i == 1 ? root_set : dec.m_set(c.i - 1, 2 * c.j, c.l);
        for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
          if (sorted_has(m, a) && (sorted_has(left, b) || sorted_has(right, b))) placed = true;
        }
      }
    }
    if (!placed) fail(d6, {{"edge", edge_json(e)}});
  }
  for (Clause* c : {&d1, &d2, &d3, &d4, &d5, &d6}) r.clauses.push_back(*c);
  return r;
}

PropertyReport check_T(const Decomposition& dec, const std::map<Vertex, TreeEmbedding>& trees) {
  PropertyReport r;
  r.family = "T";
  const int k = dec.k;
  r.params = {{"k", k}, {"trees", trees.size()}};
  Clause t1 = hard("T1"), t2 = hard("T2"), t3 = hard("T3"), t4 = hard("T4");
  std::vector<std::vector<Vertex>> levels;
  for (int i = 0; i <= k; ++i) levels.push_back(dec.level_union(i));
  for (int l = 1; l <= 4; ++l) {
    const auto m_l = dec.m_union(l);
    for (Vertex v : dec.m_set(k, 1, l)) {
      auto it = trees.find(v);
      if (it == trees.end()) {
        fail(t1, {{"root", v}, {"missing", true}});
        continue;
      }
      const TreeEmbedding& t = it->second;
      if (t.k != k || t.root() != v) fail(t1, {{"root", v}});
      for (Vertex u : t.nodes) {
        if (!sorted_has(m_l, u)) fail(t2, {{"root", v}, {"vertex", u}});
      }
      for (auto [a, b] : t.arcs()) {
        if (!dec.h_has(a, b)) fail(t2, {{"root", v}, {"edge", {a, b}}});
      }
      for (Vertex leaf : t.leaves()) {
        if (!dec.h_has(leaf, dec.x)) fail(t3, {{"root", v}, {"leaf", leaf}});
      }
      for (std::size_t h = 0; 2 * h + 2 < t.nodes.size(); ++h) {
        const Vertex u = t.nodes[h];
        for (int i = 2; i <= k; ++i) {
          if (!sorted_has(levels[static_cast<std::size_t>(i)], u)) continue;
          for (Vertex child : {t.nodes[2 * h + 1], t.nodes[2 * h + 2]}) {
            if (!sorted_has(levels[static_cast<std::size_t>(i - 1)], child)) {
              fail(t4, {{"root", v}, {"vertex", u}, {"child", child}});
            }
          }
        }
      }
    }
  }
  for (Clause* c : {&t1, &t2, &t3, &t4}) r.clauses.push_back(*c);
  return r;
}

PropertyReport check_S(const Graph& g, const EdgeSet& B, std::span<const Vertex> M, std::span<const Vertex> A1,
                       Vertex x, const Stage2Structure& s) {
  PropertyReport r;
  r.family = "S";
  r.params = {{"x", x}, {"z", s.z}, {"anchor", s.anchor}};
  auto in_m = vertex_mask(g.num_vertices(), M);
  Clause za = hard("z_in_N(A1)"), disjoint = hard("disjoint"), s1 = hard("S1"), s2 = hard("S2"), s3 = hard("S3"),
         s4 = hard("S4");

  bool anchored = false;
  for (Vertex a : A1) {
    auto id = g.edge_id(a, s.z);
    if (id && !B.contains(*id)) anchored = true;
  }
  if (!anchored) fail(za, {{"z", s.z}});

  std::vector<Vertex> all{s.z};
  for (std::size_t l = 0; l < 4; ++l) {
    const TreeEmbedding& t = s.trees[l];
    if (!is_embedded(g, t)) fail(disjoint, {{"tree", l + 1}, {"not_embedded", true}});
    all.insert(all.end(), t.nodes.begin(), t.nodes.end());
    if (std::find(t.nodes.begin(), t.nodes.end(), x) != t.nodes.end()) fail(s1, {{"tree", l + 1}});
    auto top = g.edge_id(s.z, t.root());
    if (!top || B.contains(*top)) fail(s2, {{"tree", l + 1}, {"edge", {s.z, t.root()}}});
    for (auto [u, w] : t.arcs()) {
      auto id = g.edge_id(u, w);
      if (id && B.contains(*id) && !in_m[static_cast<std::size_t>(w)]) fail(s3, {{"tree", l + 1}, {"arc", {u, w}}});
    }
    for (Vertex leaf : t.leaves()) {
      auto id = g.edge_id(leaf, x);
      if (!id || B.contains(*id)) fail(s4, {{"tree", l + 1}, {"leaf", leaf}});
    }
  }
  std::sort(all.begin(), all.end());
  if (auto dup = std::adjacent_find(all.begin(), all.end()); dup != all.end()) fail(disjoint, {{"vertex", *dup}});
  for (Clause* c : {&za, &disjoint, &s1, &s2, &s3, &s4}) r.clauses.push_back(*c);
  return r;
}

std::vector<Vertex> compute_Se(const Decomposition& dec, const std::map<Vertex, TreeEmbedding>& trees, const Edge& e) {
  const Edge key(e.u, e.v);
  std::vector<Vertex> out;
  for (const auto& [v, t] : trees) {
    bool uses = false;
    for (auto [a, b] : t.arcs()) uses = uses || Edge(a, b) == key;
    for (Vertex leaf : t.leaves()) uses = uses || Edge(leaf, dec.x) == key;
    if (uses) out.push_back(v);
  }
  return out;
}

PropertyReport check_Se_bound(int n, const Decomposition& dec, const std::map<Vertex, TreeEmbedding>& trees,
                              double eps) {
  PropertyReport r;
  r.family = "Q";
  const double limit = std::pow(static_cast<double>(n), 2.0 / 3.0 - eps);
  r.params = {{"n", n}, {"eps", eps}};
  Clause c = bound("Se_size", limit);
  std::map<Edge, long long> usage;
  for (const auto& [v, t] : trees) {
    std::vector<Edge> used;
    for (auto [a, b] : t.arcs()) used.emplace_back(a, b);
    for (Vertex leaf : t.leaves()) used.emplace_back(leaf, dec.x);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (const Edge& e : used) ++usage[e];
  }
  long long worst = 0;
  for (const auto& [e, count] : usage) {
    worst = std::max(worst, count);
    if (static_cast<double>(count) > limit) fail(c, {{"edge", edge_json(e)}, {"size", count}});
  }
  r.params["max_Se"] = worst;
  r.clauses.push_back(c);
  return r;
}

std::vector<Vertex> compute_BigQ(const Graph& g, std::span<const Vertex> Q, std::span<const Vertex> r_prime,
                                 double threshold) {
  auto in_q = vertex_mask(g.num_vertices(), Q);
  std::vector<Vertex> out;
  for (Vertex u : r_prime) {
    if (static_cast<double>(count_in(g, u, in_q)) > threshold) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PropertyReport check_claim_big(const Graph& g, const Decomposition& dec, std::span<const Vertex> A,
                               std::span<const Vertex> r_prime, double eps, std::span<const Vertex> Q) {
  PropertyReport r;
  r.family = "Q";
  const double nd = static_cast<double>(g.num_vertices());
  r.params = {{"n", g.num_vertices()}, {"eps", eps}, {"q_size", Q.size()}};
  Clause a = bound("a", std::pow(nd, 1.0 / 3.0 + 2.0 * eps / 3.0));
  Clause b = bound("b", std::pow(nd, 2.0 / 3.0 + 2.0 * eps / 3.0));
  Clause c = bound("c", std::pow(nd, 2.0 / 3.0 + eps / 2.0));

  for (int l = 1; l <= 4; ++l) {
    auto mask = vertex_mask(g.num_vertices(), dec.m_set(dec.k, 1, l));
    for (Vertex v : r_prime) {
      const int d = count_in(g, v, mask);
      if (!(static_cast<double>(d) > *a.threshold)) fail(a, {{"vertex", v}, {"l", l}, {"degree", d}});
    }
  }
  auto nbr_a = neighborhood(g, A);
  auto in_r = vertex_mask(g.num_vertices(), r_prime);
  const auto hits = std::count_if(nbr_a.begin(), nbr_a.end(), [&](Vertex v) { return in_r[static_cast<std::size_t>(v)]; });
  r.params["N(A)_in_R'"] = hits;
  if (!(static_cast<double>(hits) > *b.threshold)) fail(b, {{"count", hits}});

  auto big = compute_BigQ(g, Q, r_prime, std::pow(nd, 1.0 / 3.0 + eps / 2.0));
  r.params["big_q"] = big.size();
  if (static_cast<double>(big.size()) > *c.threshold) fail(c, {{"count", big.size()}});
  for (Clause* cl : {&a, &b, &c}) r.clauses.push_back(*cl);
  return r;
}

PropertyReport check_Hn(const Graph& g) {
  PropertyReport r;
  r.family = "Hn";
  r.params = {{"n", g.num_vertices()}, {"m", g.num_edges()}};
  Clause c = hard("contains_Hn");
  auto pair = g.num_vertices() >= 3 ? contains_Hn(g) : std::nullopt;
  if (pair) {
    r.params["pair"] = {pair->first, pair->second};
  } else {
    fail(c, {{"pair", nullptr}});
  }
  r.clauses.push_back(c);
  return r;
}

}  // namespace cbgame
