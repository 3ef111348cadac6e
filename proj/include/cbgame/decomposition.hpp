#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cbgame/graph.hpp"
#include "cbgame/trees.hpp"

namespace cbgame {

/// Cell labels (i,j,l) with 1 <= i <= k, 1 <= j <= 2^(k-i), 1 <= l <= 4,
/// numbered level by level, then by j, then by l.
struct CellIndex {
  int i = 1;
  int j = 1;
  int l = 1;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

int cell_count(int k);
int cell_slot(int k, const CellIndex& c);
CellIndex cell_at(int k, int slot);

/// alpha_i = 3 * 2^(i-1) - 2 for i = 1..k.
std::vector<long long> alpha_table(int k);
/// 1 / (9 * 2^(k-2) - 3), the density exponent matched to k levels.
double epsilon_for_levels(int k);
/// n^(1/3 + alpha_i eps) / ln^(2 alpha_i) n for i = 1..k.
std::vector<double> paper_size_targets(int n, int k, double eps);

struct Decomposition {
  Vertex x = -1;
  int k = 0;
  std::vector<std::vector<Vertex>> cells;  // by slot, sorted
  std::vector<std::vector<Vertex>> M;      // by slot, sorted
  std::vector<Edge> H;                     // sorted, deduplicated
  std::vector<int> targets;                // per level i = 1..k

  const std::vector<Vertex>& cell(int i, int j, int l) const {
    return cells[static_cast<std::size_t>(cell_slot(k, {i, j, l}))];
  }
  const std::vector<Vertex>& m_set(int i, int j, int l) const {
    return M[static_cast<std::size_t>(cell_slot(k, {i, j, l}))];
  }
  /// M_l: all M-sets with last index l.
  std::vector<Vertex> m_union(int l) const;
  /// L_i: all M-sets on level i; L_0 = {x}.
  std::vector<Vertex> level_union(int i) const;
  std::vector<Vertex> h_vertices() const;
  bool h_has(Vertex a, Vertex b) const;
};

/// Shuffles V minus x and `reserved` with the seed and deals `cell_size`
/// vertices to each cell. cell_size 0 means as many as fit.
std::vector<std::vector<Vertex>> random_partition(int n, Vertex x, int k, std::span<const Vertex> reserved,
                                                  int cell_size, std::uint64_t seed);

/// Level-by-level filter: M_(i,j,l) keeps the cell vertices with a neighbour
/// in both child sets M_(i-1,2j-1,l), M_(i-1,2j,l) (M_0 = {x}); a set above
/// its level's target is cut down to the target by removing uniformly random
/// vertices; H gathers the edges between each M-set and its two child sets.
/// Returns nullopt when some M-set ends empty. Throws ParameterError on a
/// malformed partition.
std::optional<Decomposition> decompose(const Graph& g, Vertex x, const std::vector<std::vector<Vertex>>& cells, int k,
                                       std::span<const int> size_targets, std::uint64_t seed);

/// Labelled embedding of the k-level tree rooted at v in M_(k,1,l): the node
/// at (i,j) is the lowest-index H-neighbour of its parent inside M_(i,j,l).
std::optional<TreeEmbedding> extract_tree(const Decomposition& dec, Vertex v, int l);

}  // namespace cbgame
