#include "cbgame/breaker.hpp"

#include <algorithm>
#include <limits>

#include "cbgame/errors.hpp"
#include "cbgame/random.hpp"
#include "cbgame/verifier.hpp"

namespace cbgame {

BadSetDecomposition build_bad_set(const Graph& g, Vertex x, std::span<const Vertex> excluded) {
  g.check_vertex(x);
  const int n = g.num_vertices();
  const auto un = static_cast<std::size_t>(n);
  std::vector<char> blocked = vertex_mask(n, excluded);
  if (blocked[static_cast<std::size_t>(x)]) throw ParameterError("x must not be excluded");
  blocked[static_cast<std::size_t>(x)] = 1;

  BadSetDecomposition dec;
  dec.x = x;
  dec.level.assign(un, -1);
  dec.level[static_cast<std::size_t>(x)] = 0;

  std::vector<Vertex> layer;
  for (Vertex v : g.neighbors(x)) {
    if (!blocked[static_cast<std::size_t>(v)]) layer.push_back(v);
  }
  std::vector<int> count(un, 0);
  int index = 1;
  while (true) {
    for (Vertex v : layer) {
      dec.level[static_cast<std::size_t>(v)] = index;
      blocked[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<Vertex> touched;
    for (Vertex v : layer) {
      for (Vertex w : g.neighbors(v)) {
        if (blocked[static_cast<std::size_t>(w)]) continue;
        if (++count[static_cast<std::size_t>(w)] == 2) touched.push_back(w);
      }
    }
    dec.bad.insert(dec.bad.end(), layer.begin(), layer.end());
    dec.layers.push_back(std::move(layer));
    std::sort(touched.begin(), touched.end());
    if (touched.empty() || dec.layers.back().empty()) break;
    layer = std::move(touched);
    ++index;
  }
  std::sort(dec.bad.begin(), dec.bad.end());
  dec.r_x = static_cast<int>(dec.layers.size());
  return dec;
}

std::vector<Vertex> SuccessiveBadSets::cumulative(int j, int i) const {
  if (j < 1 || j > size()) throw ParameterError("candidate index out of range");
  std::vector<Vertex> out;
  for (int l = 0; l < j - 1; ++l) {
    const auto& bad = decs[static_cast<std::size_t>(l)].bad;
    out.insert(out.end(), bad.begin(), bad.end());
  }
  const auto& dec = decs[static_cast<std::size_t>(j - 1)];
  const int top = std::min(i, static_cast<int>(dec.layers.size()));
  for (int layer = 1; layer <= top; ++layer) {
    out.insert(out.end(), dec.layer(layer).begin(), dec.layer(layer).end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<int, int> SuccessiveBadSets::predecessor(int j, int i) const {
  if (i > 1) return {j, i - 1};
  if (j <= 1) return {0, 0};
  return {j - 1, r(j - 1)};
}

SuccessiveBadSets build_successive(const Graph& g, std::span<const Vertex> candidates) {
  SuccessiveBadSets out;
  for (Vertex x : candidates) {
    out.candidates.push_back(x);
    out.decs.push_back(build_bad_set(g, x));
  }
  return out;
}

std::optional<CandidateResult> find_candidate(const Graph& g, std::span<const Vertex> M, int t, std::uint64_t seed) {
  const int n = g.num_vertices();
  if (t < 1) throw ParameterError("candidate budget must be positive");
  if (n < t + 4) throw CapacityError("graph too small for " + std::to_string(t) + " candidates");
  auto in_m = vertex_mask(n, M);
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_m[static_cast<std::size_t>(v)]) pool.push_back(v);
  }
  Rng rng(seed);
  rng.shuffle(pool);
  pool.resize(std::min(pool.size(), static_cast<std::size_t>(t)));

  SuccessiveBadSets succ;
  for (Vertex x : pool) {
    succ.candidates.push_back(x);
    succ.decs.push_back(build_bad_set(g, x));
    if (check_B(g, succ.decs.back(), M).hard_hold()) {
      return CandidateResult{x, succ.decs.back(), std::move(succ)};
    }
  }
  return std::nullopt;
}

namespace {

bool is_violation(const GameState& state, const BadSetDecomposition& dec, Vertex v, Vertex w) {
  if (state.in_vc(v) || !state.in_vc(w)) return false;
  const int i = dec.level_of(v);
  if (i < 0) return false;
  const int lw = dec.level_of(w);
  return !(lw >= 0 && lw < i);
}

bool violation_edge(const GameState& state, const BadSetDecomposition& dec, EdgeId id) {
  if (!state.is_free(id)) return false;
  const Edge& e = state.graph().edge(id);
  return is_violation(state, dec, e.u, e.v) || is_violation(state, dec, e.v, e.u);
}

void push_unique(std::vector<Edge>& move, const Edge& e) {
  if (std::find(move.begin(), move.end(), e) == move.end()) move.push_back(e);
}

// Free edges at x, then at B_1, appended until the move holds `limit` edges.
void fill_near_target(const GameState& state, const BadSetDecomposition& dec, std::vector<Edge>& move,
                      std::size_t limit) {
  const Graph& g = state.graph();
  auto take_from = [&](Vertex v) {
    for (EdgeId id : g.incident_edges(v)) {
      if (move.size() >= limit) return;
      if (state.is_free(id)) push_unique(move, g.edge(id));
    }
  };
  take_from(dec.x);
  if (dec.layers.empty()) return;
  for (Vertex v : dec.layer(1)) {
    if (move.size() >= limit) return;
    take_from(v);
  }
}

}  // namespace

std::vector<Edge> q_violations(const GameState& state, const BadSetDecomposition& dec) {
  const Graph& g = state.graph();
  std::vector<Edge> out;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    if (violation_edge(state, dec, id)) out.push_back(g.edge(id));
  }
  return out;
}

BreakerMoveResult breaker_move(const GameState& state, const BadSetDecomposition& dec) {
  if (state.in_vc(dec.x)) throw ParameterError("target already reached by Connector");
  BreakerMoveResult out;
  const auto limit = static_cast<std::size_t>(std::max(state.b(), 0));
  auto violations = q_violations(state, dec);
  out.violations = static_cast<int>(violations.size());
  if (violations.size() > limit) {
    out.failure = true;
    violations.resize(limit);
  }
  out.move.claimed = std::move(violations);
  fill_near_target(state, dec, out.move.claimed, limit);
  const Graph& g = state.graph();
  for (EdgeId id = 0; id < g.num_edges() && out.move.claimed.size() < limit; ++id) {
    if (state.is_free(id)) push_unique(out.move.claimed, g.edge(id));
  }
  return out;
}

void PaperBreaker::start(const GameState& initial, Role role, std::uint64_t seed) {
  if (role != Role::Breaker) throw ParameterError("paper-breaker only plays Breaker");
  seed_ = seed;
  dec_.reset();
  verified_ = false;
  source_.clear();
  failures_ = 0;
  vc_seen_ = 0;
  pending_.clear();
  pending_mark_.assign(static_cast<std::size_t>(initial.graph().num_edges()), 0);
  cursor_ = 0;
  violations_claimed_ = 0;
  filler_claimed_ = 0;
}

void PaperBreaker::choose_target(const GameState& state) {
  const Graph& g = state.graph();
  const int n = g.num_vertices();
  const auto M = state.vc_sorted();

  try {
    if (auto found = find_candidate(g, M, config_.t, mix_seed(seed_, 0))) {
      dec_ = std::move(found->dec);
      verified_ = true;
      source_ = "find_candidate";
      return;
    }
  } catch (const CapacityError&) {
  }

  auto in_m = vertex_mask(n, M);
  std::vector<char> near_m = in_m;
  for (Vertex v : M) {
    for (Vertex w : g.neighbors(v)) near_m[static_cast<std::size_t>(w)] = 1;
  }

  std::vector<Vertex> pool;
  for (Vertex v = 0; v < n; ++v) {
    if (!near_m[static_cast<std::size_t>(v)]) pool.push_back(v);
  }
  Rng rng(mix_seed(seed_, 1));
  rng.shuffle(pool);
  int tried = 0;
  for (Vertex x : pool) {
    if (tried >= config_.extended_budget) break;
    ++tried;
    auto nx = g.neighbors(x);
    bool independent = true;
    for (std::size_t i = 0; i < nx.size() && independent; ++i) {
      for (Vertex w : g.neighbors(nx[i])) {
        if (std::binary_search(nx.begin(), nx.end(), w)) {
          independent = false;
          break;
        }
      }
    }
    if (!independent) continue;
    auto dec = build_bad_set(g, x);
    if (check_B(g, dec, M).hard_hold()) {
      dec_ = std::move(dec);
      verified_ = true;
      source_ = "extended";
      return;
    }
  }

  // Unverified: the lowest-degree vertex away from V_C.
  Vertex best = -1;
  for (int pass = 0; pass < 2 && best < 0; ++pass) {
    const auto& skip = pass == 0 ? near_m : in_m;
    for (Vertex v = 0; v < n; ++v) {
      if (skip[static_cast<std::size_t>(v)]) continue;
      if (best < 0 || g.degree(v) < g.degree(best)) best = v;
    }
  }
  if (best < 0) throw NoMoveError("no vertex left outside V_C");
  dec_ = build_bad_set(g, best);
  verified_ = false;
  source_ = "fallback";
}

void PaperBreaker::scan_new_vc(const GameState& state) {
  const Graph& g = state.graph();
  auto order = state.vc_order();
  for (; vc_seen_ < order.size(); ++vc_seen_) {
    const Vertex w = order[vc_seen_];
    auto nbrs = g.neighbors(w);
    auto ids = g.incident_edges(w);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const EdgeId id = ids[i];
      if (pending_mark_[static_cast<std::size_t>(id)]) continue;
      if (is_violation(state, *dec_, nbrs[i], w) && state.is_free(id)) {
        pending_mark_[static_cast<std::size_t>(id)] = 1;
        pending_.push_back(id);
      }
    }
  }
}

Decision PaperBreaker::decide(const GameState& state) {
  if (!dec_) choose_target(state);
  scan_new_vc(state);
  const Graph& g = state.graph();
  const auto limit = static_cast<std::size_t>(std::max(state.b(), 0));

  std::vector<EdgeId> live;
  for (EdgeId id : pending_) {
    if (violation_edge(state, *dec_, id)) {
      live.push_back(id);
    } else {
      pending_mark_[static_cast<std::size_t>(id)] = 0;
    }
  }
  std::sort(live.begin(), live.end());
  pending_ = live;

  Decision d;
  auto& move = d.move.claimed;
  if (!state.in_vc(dec_->x) && live.size() > limit) ++failures_;
  for (EdgeId id : live) {
    if (move.size() >= limit) break;
    move.push_back(g.edge(id));
  }
  violations_claimed_ += static_cast<long long>(move.size());
  const std::size_t before = move.size();
  if (!state.in_vc(dec_->x)) fill_near_target(state, *dec_, move, limit);
  // Edges behind the cursor are all claimed once this move lands.
  for (; move.size() < limit && cursor_ < g.num_edges(); ++cursor_) {
    if (state.is_free(cursor_)) push_unique(move, g.edge(cursor_));
  }
  filler_claimed_ += static_cast<long long>(move.size() - before);
  return d;
}

StrategyReport PaperBreaker::report() const {
  StrategyReport r;
  r.failure_flags = failures_;
  if (dec_) r.target = dec_->x;
  r.verified = verified_;
  r.source = source_;
  r.counters["violations_claimed"] = violations_claimed_;
  r.counters["filler_claimed"] = filler_claimed_;
  if (dec_) {
    r.counters["r_x"] = dec_->r_x;
    r.counters["bad_size"] = static_cast<long long>(dec_->bad.size());
  }
  return r;
}

}  // namespace cbgame
