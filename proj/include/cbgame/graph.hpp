#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cbgame {

using Vertex = int;
using EdgeId = int;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool touches(Vertex w) const { return u == w || v == w; }
  Vertex other(Vertex w) const { return u == w ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Edges are kept sorted lexicographically; an edge's id is its position in
/// that order. Neighbour lists are sorted and carry the incident edge ids in
/// a parallel array, so id lookups are a binary search.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  /// Throws ParameterError on loops, duplicates or out-of-range endpoints.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[static_cast<std::size_t>(id)]; }

  std::span<const Vertex> neighbors(Vertex v) const;
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const;
  int degree(Vertex v) const;

  bool has_edge(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }
  std::optional<EdgeId> edge_id(Vertex a, Vertex b) const;

  bool contains_vertex(Vertex v) const { return v >= 0 && v < n_; }
  /// Throws ParameterError when v is not a vertex.
  void check_vertex(Vertex v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::vector<EdgeId> adjacency_edges_;
};

/// Plain membership mask over edge ids.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int num_edges) : bits_(static_cast<std::size_t>(num_edges), 0) {}

  bool contains(EdgeId id) const { return bits_[static_cast<std::size_t>(id)] != 0; }
  void insert(EdgeId id) { bits_[static_cast<std::size_t>(id)] = 1; }
  void erase(EdgeId id) { bits_[static_cast<std::size_t>(id)] = 0; }
  int capacity() const { return static_cast<int>(bits_.size()); }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Erdős–Rényi G(n,p). One Bernoulli draw per pair, pairs visited as
/// (0,1),(0,2),...,(0,n-1),(1,2),... from a stream seeded with `seed`.
Graph gen_gnp(int n, double p, std::uint64_t seed);

/// |N_G(v) ∩ A|.
int degree_into(const Graph& g, Vertex v, std::span<const Vertex> set);

/// All edges with one endpoint in A and the other in B, each listed once.
std::vector<Edge> edges_between(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b);

/// Edges of G with both endpoints in A.
std::vector<Edge> edges_within(const Graph& g, std::span<const Vertex> a);

/// N_G(A) = union of the neighbourhoods of A (may intersect A).
std::vector<Vertex> neighborhood(const Graph& g, std::span<const Vertex> a);

/// True iff (V(g), subset) is connected on all n vertices.
bool is_spanning_connected(const Graph& g, std::span<const Edge> subset);
bool is_spanning_connected(const Graph& g, std::span<const EdgeId> subset);

/// True iff g itself is connected.
bool is_connected(const Graph& g);

/// Finds (u,v) with uv ∈ E and every other vertex adjacent to both, i.e. the
/// two-element colour class of a spanning K_{n-2,2} plus an edge.
std::optional<std::pair<Vertex, Vertex>> contains_Hn(const Graph& g);

/// Edge-list text format: `n <count>` then one `u v` line per edge.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

/// Boolean mask of length n with the given vertices set.
std::vector<char> vertex_mask(int n, std::span<const Vertex> vertices);

}  // namespace cbgame
