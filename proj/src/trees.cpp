#include "cbgame/trees.hpp"

#include <algorithm>

#include "cbgame/errors.hpp"

namespace cbgame {

TreeEmbedding::TreeEmbedding(int levels, std::vector<Vertex> heap_nodes) : k(levels), nodes(std::move(heap_nodes)) {
  if (levels < 1 || levels > 20 || static_cast<int>(nodes.size()) != node_count(levels)) {
    throw ParameterError("tree node list does not match its level count");
  }
}

int TreeEmbedding::level_of_index(int h) const {
  int depth = 0;
  while ((1 << (depth + 1)) - 1 <= h) ++depth;
  return k - depth;
}

std::vector<Vertex> TreeEmbedding::leaves() const {
  const auto first = static_cast<std::size_t>((1 << (k - 1)) - 1);
  return {nodes.begin() + static_cast<std::ptrdiff_t>(first), nodes.end()};
}

std::vector<std::pair<Vertex, Vertex>> TreeEmbedding::arcs() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t h = 0; 2 * h + 2 < nodes.size(); ++h) {
    out.emplace_back(nodes[h], nodes[2 * h + 1]);
    out.emplace_back(nodes[h], nodes[2 * h + 2]);
  }
  return out;
}

TreeEmbedding TreeEmbedding::subtree(int h) const {
  std::vector<Vertex> out;
  std::vector<int> frontier{h};
  while (!frontier.empty() && frontier.front() < static_cast<int>(nodes.size())) {
    std::vector<int> next;
    for (int idx : frontier) {
      out.push_back(nodes[static_cast<std::size_t>(idx)]);
      next.push_back(2 * idx + 1);
      next.push_back(2 * idx + 2);
    }
    frontier = std::move(next);
  }
  return TreeEmbedding(level_of_index(h), std::move(out));
}

TreeEmbedding TreeEmbedding::join(Vertex root, const TreeEmbedding& left, const TreeEmbedding& right) {
  if (left.k != right.k) throw ParameterError("joined subtrees must have equal height");
  std::vector<Vertex> out{root};
  std::size_t width = 1;
  std::size_t offset = 0;
  for (int level = 0; level < left.k; ++level) {
    for (std::size_t i = 0; i < width; ++i) out.push_back(left.nodes[offset + i]);
    for (std::size_t i = 0; i < width; ++i) out.push_back(right.nodes[offset + i]);
    offset += width;
    width *= 2;
  }
  return TreeEmbedding(left.k + 1, std::move(out));
}

bool is_embedded(const Graph& g, const TreeEmbedding& t) {
  if (t.k < 1 || static_cast<int>(t.nodes.size()) != TreeEmbedding::node_count(t.k)) return false;
  std::vector<Vertex> sorted = t.nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (Vertex v : sorted) {
    if (!g.contains_vertex(v)) return false;
  }
  for (auto [u, w] : t.arcs()) {
    if (!g.has_edge(u, w)) return false;
  }
  return true;
}

bool is_good_tree(const TreeEmbedding& t, Vertex x, const GameState& state) {
  const Graph& g = state.graph();
  if (!is_embedded(g, t)) return false;
  if (std::find(t.nodes.begin(), t.nodes.end(), x) != t.nodes.end()) return false;
  for (auto [u, w] : t.arcs()) {
    const EdgeId id = *g.edge_id(u, w);
    if (state.owner(id) == Owner::Breaker && !state.in_vc(w)) return false;
  }
  for (Vertex leaf : t.leaves()) {
    auto id = g.edge_id(leaf, x);
    if (!id || state.owner(*id) == Owner::Breaker) return false;
  }
  return true;
}

}  // namespace cbgame
