#include "cbgame/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "cbgame/errors.hpp"
#include "cbgame/random.hpp"

namespace cbgame {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int a) {
    while (parent_[static_cast<std::size_t>(a)] != a) {
      auto& p = parent_[static_cast<std::size_t>(a)];
      p = parent_[static_cast<std::size_t>(p)];
      a = p;
    }
    return a;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent_[static_cast<std::size_t>(a)] = b;
    --components_;
  }

  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  int components_;
};

}  // namespace

Graph::Graph(int n) : n_(n), offsets_(static_cast<std::size_t>(std::max(n, 0)) + 1, 0) {
  if (n < 0) throw ParameterError("vertex count must be non-negative");
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u == e.v) throw ParameterError("self-loop at vertex " + std::to_string(e.u));
    if (!g.contains_vertex(e.u) || !g.contains_vertex(e.v)) {
      throw ParameterError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " out of range");
    }
    g.edges_.emplace_back(e.u, e.v);
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end());
  if (dup != g.edges_.end()) {
    throw ParameterError("duplicate edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));
  }

  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges_) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  for (int v = 0; v < n; ++v) {
    g.offsets_[static_cast<std::size_t>(v) + 1] = g.offsets_[static_cast<std::size_t>(v)] + degree[static_cast<std::size_t>(v)];
  }
  g.adjacency_.resize(g.edges_.size() * 2);
  g.adjacency_edges_.resize(g.edges_.size() * 2);
  std::vector<int> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted, so each list comes out sorted: for vertex w the
  // neighbours below w arrive first (as e.u), in increasing order, followed
  // by the neighbours above w (as e.v), also increasing.
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges_[static_cast<std::size_t>(id)];
    auto& fv = fill[static_cast<std::size_t>(e.v)];
    g.adjacency_[static_cast<std::size_t>(fv)] = e.u;
    g.adjacency_edges_[static_cast<std::size_t>(fv)] = id;
    ++fv;
  }
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges_[static_cast<std::size_t>(id)];
    auto& fu = fill[static_cast<std::size_t>(e.u)];
    g.adjacency_[static_cast<std::size_t>(fu)] = e.v;
    g.adjacency_edges_[static_cast<std::size_t>(fu)] = id;
    ++fu;
  }
  return g;
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  const auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
  const auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
  return std::span<const Vertex>(adjacency_).subspan(begin, end - begin);
}

std::span<const EdgeId> Graph::incident_edges(Vertex v) const {
  const auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
  const auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
  return std::span<const EdgeId>(adjacency_edges_).subspan(begin, end - begin);
}

int Graph::degree(Vertex v) const {
  return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
}

std::optional<EdgeId> Graph::edge_id(Vertex a, Vertex b) const {
  if (!contains_vertex(a) || !contains_vertex(b) || a == b) return std::nullopt;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nbrs = neighbors(a);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b);
  if (it == nbrs.end() || *it != b) return std::nullopt;
  return incident_edges(a)[static_cast<std::size_t>(it - nbrs.begin())];
}

void Graph::check_vertex(Vertex v) const {
  if (!contains_vertex(v)) {
    throw ParameterError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
  }
}

Graph gen_gnp(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability must lie in [0,1]");
  if (n < 0) throw ParameterError("vertex count must be non-negative");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(n, edges);
}

std::vector<char> vertex_mask(int n, std::span<const Vertex> vertices) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (Vertex v : vertices) {
    if (v < 0 || v >= n) throw ParameterError("vertex " + std::to_string(v) + " out of range");
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

int degree_into(const Graph& g, Vertex v, std::span<const Vertex> set) {
  g.check_vertex(v);
  auto mask = vertex_mask(g.num_vertices(), set);
  int count = 0;
  for (Vertex w : g.neighbors(v)) count += mask[static_cast<std::size_t>(w)] ? 1 : 0;
  return count;
}

std::vector<Edge> edges_between(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  auto in_a = vertex_mask(g.num_vertices(), a);
  auto in_b = vertex_mask(g.num_vertices(), b);
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    const bool ua = in_a[static_cast<std::size_t>(e.u)], va = in_a[static_cast<std::size_t>(e.v)];
    const bool ub = in_b[static_cast<std::size_t>(e.u)], vb = in_b[static_cast<std::size_t>(e.v)];
    if ((ua && vb) || (va && ub)) out.push_back(e);
  }
  return out;
}

std::vector<Edge> edges_within(const Graph& g, std::span<const Vertex> a) {
  auto in_a = vertex_mask(g.num_vertices(), a);
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (in_a[static_cast<std::size_t>(e.u)] && in_a[static_cast<std::size_t>(e.v)]) out.push_back(e);
  }
  return out;
}

std::vector<Vertex> neighborhood(const Graph& g, std::span<const Vertex> a) {
  std::vector<char> mark(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Vertex v : a) {
    g.check_vertex(v);
    for (Vertex w : g.neighbors(v)) mark[static_cast<std::size_t>(w)] = 1;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (mark[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

bool is_spanning_connected(const Graph& g, std::span<const Edge> subset) {
  if (g.num_vertices() <= 1) return true;
  UnionFind uf(g.num_vertices());
  for (const Edge& e : subset) {
    g.check_vertex(e.u);
    g.check_vertex(e.v);
    uf.unite(e.u, e.v);
  }
  return uf.components() == 1;
}

bool is_spanning_connected(const Graph& g, std::span<const EdgeId> subset) {
  if (g.num_vertices() <= 1) return true;
  UnionFind uf(g.num_vertices());
  for (EdgeId id : subset) uf.unite(g.edge(id).u, g.edge(id).v);
  return uf.components() == 1;
}

bool is_connected(const Graph& g) { return is_spanning_connected(g, g.edges()); }

std::optional<std::pair<Vertex, Vertex>> contains_Hn(const Graph& g) {
  // Both class vertices see every other vertex, so they are exactly the
  // vertices of degree n-1; any two of them form the pair.
  const int n = g.num_vertices();
  if (n < 3) return std::nullopt;
  std::optional<Vertex> first;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) != n - 1) continue;
    if (first) return std::make_pair(*first, v);
    first = v;
  }
  return std::nullopt;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::optional<int> n;
  std::vector<Edge> edges;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParameterError("edge list line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!n) {
      std::string tag;
      int count = -1;
      if (!(fields >> tag >> count) || tag != "n" || count < 0) fail("expected header `n <count>`");
      n = count;
      continue;
    }
    long long u = -1, v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) fail("expected `u v`");
    if (u == v) fail("self-loop");
    if (u < 0 || v < 0 || u >= *n || v >= *n) fail("vertex out of range");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (!n) throw ParameterError("edge list: missing header `n <count>`");
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw ParameterError("edge list: duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
  }
  return Graph::from_edges(*n, edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace cbgame
