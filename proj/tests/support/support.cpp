#include "support.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "cbgame/connector.hpp"
#include "cbgame/errors.hpp"

namespace cbtest {

namespace {

std::vector<std::pair<int, int>> pairs_of(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

Graph from_mask(int n, const std::vector<std::pair<int, int>>& pairs, std::uint32_t mask) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask >> i & 1u) edges.emplace_back(pairs[i].first, pairs[i].second);
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

std::vector<Graph> all_labelled_graphs(int n) {
  if (n > 5) throw std::invalid_argument("too many labelled graphs");
  const auto pairs = pairs_of(n);
  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) out.push_back(from_mask(n, pairs, mask));
  return out;
}

std::vector<Graph> connected_graph_classes(int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("n out of range");
  const auto pairs = pairs_of(n);
  std::vector<std::vector<int>> index(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    index[static_cast<std::size_t>(pairs[i].first)][static_cast<std::size_t>(pairs[i].second)] = static_cast<int>(i);
    index[static_cast<std::size_t>(pairs[i].second)][static_cast<std::size_t>(pairs[i].first)] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::unordered_set<std::uint32_t> seen;
  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::uint32_t canon = mask;
    for (const auto& p : perms) {
      std::uint32_t image = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1u) {
          image |= 1u << index[static_cast<std::size_t>(p[static_cast<std::size_t>(pairs[i].first)])]
                               [static_cast<std::size_t>(p[static_cast<std::size_t>(pairs[i].second)])];
        }
      }
      canon = std::min(canon, image);
    }
    if (!seen.insert(canon).second) continue;
    Graph g = from_mask(n, pairs, canon);
    if (cbgame::is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

OracleBadSet bad_set_oracle(const Graph& g, Vertex x) {
  const int n = g.num_vertices();
  OracleBadSet out;
  std::set<Vertex> bad;
  std::set<Vertex> first;
  for (Vertex v = 0; v < n; ++v) {
    if (v != x && g.has_edge(v, x)) first.insert(v);
  }
  out.layers.push_back(first);
  bad = first;
  if (first.empty()) return out;
  while (true) {
    std::set<Vertex> next;
    for (Vertex v = 0; v < n; ++v) {
      if (v == x || bad.count(v)) continue;
      int d = 0;
      for (Vertex w : bad) d += g.has_edge(v, w) ? 1 : 0;
      if (d >= 2) next.insert(v);
    }
    if (next.empty()) break;
    out.layers.push_back(next);
    bad.insert(next.begin(), next.end());
  }
  out.r_x = static_cast<int>(out.layers.size());
  return out;
}

namespace {

struct OracleState {
  std::vector<int> owner;  // 0 free, 1 Connector, 2 Breaker
  std::vector<char> vc;
  bool any_vc = false;
};

bool goal_met(const Graph& g, const cbgame::SolveOptions& opt, const OracleState& s) {
  if (opt.goal.kind == cbgame::GoalKind::ReachVertex) return s.vc[static_cast<std::size_t>(opt.goal.target)] != 0;
  if (g.num_vertices() <= 1) return true;
  return std::all_of(s.vc.begin(), s.vc.end(), [](char c) { return c != 0; });
}

bool connector_wins(const Graph& g, const cbgame::SolveOptions& opt, OracleState& s, cbgame::Role mover, int rem) {
  if (goal_met(g, opt, s)) return true;
  const int e = g.num_edges();
  const bool is_c = mover == cbgame::Role::Connector;
  const int bias = is_c ? opt.m : opt.b;
  const bool turn_start = rem == bias;
  auto other = [&] { return connector_wins(g, opt, s, cbgame::opponent(mover), is_c ? opt.b : opt.m); };

  std::vector<int> legal;
  for (int id = 0; id < e; ++id) {
    if (s.owner[static_cast<std::size_t>(id)] != 0) continue;
    const Edge& ed = g.edge(id);
    if (is_c && s.any_vc && !s.vc[static_cast<std::size_t>(ed.u)] && !s.vc[static_cast<std::size_t>(ed.v)]) continue;
    legal.push_back(id);
  }
  if (is_c) {
    if (legal.empty() || rem == 0) {
      if (turn_start) return false;
      return other();
    }
  } else {
    bool any_free = false;
    for (int id = 0; id < e; ++id) any_free = any_free || s.owner[static_cast<std::size_t>(id)] == 0;
    if (!any_free) return false;
    if (rem == 0) return other();
  }
  for (int id : legal) {
    OracleState saved = s;
    s.owner[static_cast<std::size_t>(id)] = is_c ? 1 : 2;
    if (is_c) {
      const Edge& ed = g.edge(id);
      s.vc[static_cast<std::size_t>(ed.u)] = 1;
      s.vc[static_cast<std::size_t>(ed.v)] = 1;
      s.any_vc = true;
    }
    const bool r = rem - 1 == 0 ? connector_wins(g, opt, s, cbgame::opponent(mover), is_c ? opt.b : opt.m)
                                : connector_wins(g, opt, s, mover, rem - 1);
    s = std::move(saved);
    if (is_c && r) return true;
    if (!is_c && !r) return false;
  }
  if (!turn_start) {
    const bool r = other();
    return r;
  }
  return !is_c;
}

}  // namespace

cbgame::Role solve_oracle(const Graph& g, const cbgame::SolveOptions& options) {
  OracleState s;
  s.owner.assign(static_cast<std::size_t>(g.num_edges()), 0);
  s.vc.assign(static_cast<std::size_t>(g.num_vertices()), 0);
  if (options.start_vertex) {
    s.vc[static_cast<std::size_t>(*options.start_vertex)] = 1;
    s.any_vc = true;
  }
  const int rem = options.first == cbgame::Role::Connector ? options.m : options.b;
  return connector_wins(g, options, s, options.first, rem) ? cbgame::Role::Connector : cbgame::Role::Breaker;
}

std::optional<std::pair<Vertex, Vertex>> hn_oracle(const Graph& g) {
  const int n = g.num_vertices();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) continue;
      bool all = true;
      for (Vertex w = 0; w < n && all; ++w) {
        if (w != u && w != v) all = g.has_edge(u, w) && g.has_edge(v, w);
      }
      if (all) return std::make_pair(u, v);
    }
  }
  return std::nullopt;
}

TreeWitness tree_witness(int k, int extra) {
  const int nodes = cbgame::TreeEmbedding::node_count(k);
  const Vertex x = nodes;
  std::vector<Edge> edges;
  std::vector<Vertex> heap(static_cast<std::size_t>(nodes));
  std::iota(heap.begin(), heap.end(), 0);
  for (int h = 0; 2 * h + 2 < nodes; ++h) {
    edges.emplace_back(h, 2 * h + 1);
    edges.emplace_back(h, 2 * h + 2);
  }
  for (int h = (1 << (k - 1)) - 1; h < nodes; ++h) edges.emplace_back(h, x);
  return TreeWitness{Graph::from_edges(nodes + 1 + extra, edges), cbgame::TreeEmbedding(k, heap), x};
}

namespace {

// Connector's turn: one base step. Returns the round x was reached, 0 to
// continue, or -1 on failure.
int connector_turn(cbgame::GameState& state, std::vector<cbgame::Branch>& branches, Vertex x) {
  const auto step = cbgame::base_strategy_step(state, branches, x, state.m());
  if (step.stuck) return -1;
  state.apply(step.move);
  if (state.in_vc(x)) return state.round() + 1;
  branches = step.next;
  return 0;
}

int worst_from(const cbgame::GameState& state, const std::vector<cbgame::Branch>& branches, Vertex x,
               int max_rounds) {
  cbgame::GameState s = state;
  std::vector<cbgame::Branch> br = branches;
  const int r = connector_turn(s, br, x);
  if (r != 0) return r;
  if (s.round() + 1 >= max_rounds) return -1;
  std::vector<Edge> free;
  for (cbgame::EdgeId id = 0; id < s.graph().num_edges(); ++id) {
    if (s.is_free(id)) free.push_back(s.graph().edge(id));
  }
  int worst = 0;
  auto consider = [&](const cbgame::Move& mv) {
    if (worst < 0) return;
    cbgame::GameState next = s;
    next.apply(mv);
    const int got = worst_from(next, br, x, max_rounds);
    worst = got < 0 ? -1 : std::max(worst, got);
  };
  consider(cbgame::Move{});
  for (std::size_t i = 0; i < free.size(); ++i) {
    consider(cbgame::Move{{free[i]}});
    if (s.b() < 2) continue;
    for (std::size_t j = i + 1; j < free.size(); ++j) consider(cbgame::Move{{free[i], free[j]}});
  }
  return worst;
}

}  // namespace

int base_strategy_rounds(const TreeWitness& w, const BreakerReply& reply, int max_rounds) {
  auto g = std::make_shared<const Graph>(w.graph);
  cbgame::GameState state(g, 2, 2, w.tree.root());
  auto branches = cbgame::tree_branches(w.tree);
  while (state.round() < max_rounds) {
    const int r = connector_turn(state, branches, w.x);
    if (r != 0) return r;
    state.apply(reply(state));
  }
  return -1;
}

int base_strategy_worst_case(const TreeWitness& w, int max_rounds) {
  auto g = std::make_shared<const Graph>(w.graph);
  const cbgame::GameState state(g, 2, 2, w.tree.root());
  return worst_from(state, cbgame::tree_branches(w.tree), w.x, max_rounds);
}

LayeredInstance layered_instance(int k, int cell_size) {
  LayeredInstance out;
  const int cells = cbgame::cell_count(k);
  Vertex next = 1;
  for (int c = 0; c < cells; ++c) {
    std::vector<Vertex> cell;
    for (int s = 0; s < cell_size; ++s) cell.push_back(next++);
    out.cells.push_back(std::move(cell));
  }
  auto cell = [&](int i, int j, int l) -> const std::vector<Vertex>& {
    return out.cells[static_cast<std::size_t>(cbgame::cell_slot(k, {i, j, l}))];
  };
  std::vector<Edge> edges;
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= (1 << (k - i)); ++j) {
      for (int l = 1; l <= 4; ++l) {
        for (Vertex v : cell(i, j, l)) {
          if (i == 1) {
            edges.emplace_back(0, v);
            continue;
          }
          for (int s = 0; s < 2; ++s) {
            for (Vertex w : cell(i - 1, 2 * j - 1 + s, l)) edges.emplace_back(v, w);
          }
        }
      }
    }
  }
  out.graph = Graph::from_edges(next, edges);
  return out;
}

Graph g1() {
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {4, 1}, {4, 2}};
  return Graph::from_edges(5, edges);
}

cbgame::GameState make_state(std::shared_ptr<const Graph> g, std::optional<Vertex> start,
                             const std::vector<Edge>& connector, const std::vector<Edge>& breaker, int m, int b) {
  // One edge per turn; empty turns are legal.
  cbgame::GameState out(g, m, b, start);
  std::size_t ci = 0, bi = 0;
  while (ci < connector.size() || bi < breaker.size()) {
    cbgame::Move mv;
    if (out.to_move() == cbgame::Role::Connector) {
      if (ci < connector.size()) mv.claimed.push_back(connector[ci++]);
    } else if (bi < breaker.size()) {
      mv.claimed.push_back(breaker[bi++]);
    }
    out.apply(mv);
  }
  if (out.to_move() != cbgame::Role::Connector) out.apply(cbgame::Move{});
  return out;
}

}  // namespace cbtest
