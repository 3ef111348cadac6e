#include "cbgame/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbgame/errors.hpp"
#include "cbgame/random.hpp"

namespace cbgame {

namespace {

int level_offset(int k, int i) {
  int offset = 0;
  for (int level = 1; level < i; ++level) offset += 4 * (1 << (k - level));
  return offset;
}

bool contains_sorted(const std::vector<Vertex>& v, Vertex x) { return std::binary_search(v.begin(), v.end(), x); }

}  // namespace

int cell_count(int k) { return 4 * ((1 << k) - 1); }

int cell_slot(int k, const CellIndex& c) {
  if (c.i < 1 || c.i > k || c.j < 1 || c.j > (1 << (k - c.i)) || c.l < 1 || c.l > 4) {
    throw ParameterError("cell index out of range");
  }
  return level_offset(k, c.i) + (c.j - 1) * 4 + (c.l - 1);
}

CellIndex cell_at(int k, int slot) {
  for (int i = 1; i <= k; ++i) {
    const int width = 4 * (1 << (k - i));
    const int offset = level_offset(k, i);
    if (slot < offset + width) {
      const int rel = slot - offset;
      return {i, rel / 4 + 1, rel % 4 + 1};
    }
  }
  throw ParameterError("cell slot out of range");
}

std::vector<long long> alpha_table(int k) {
  std::vector<long long> out;
  for (int i = 1; i <= k; ++i) out.push_back(3 * (1LL << (i - 1)) - 2);
  return out;
}

double epsilon_for_levels(int k) {
  if (k < 2) throw ParameterError("level count must be at least 2");
  return 1.0 / (9.0 * std::ldexp(1.0, k - 2) - 3.0);
}

std::vector<double> paper_size_targets(int n, int k, double eps) {
  std::vector<double> out;
  const double ln = std::log(static_cast<double>(n));
  for (long long a : alpha_table(k)) {
    const double alpha = static_cast<double>(a);
    out.push_back(std::pow(n, 1.0 / 3.0 + alpha * eps) / std::pow(ln, 2.0 * alpha));
  }
  return out;
}

std::vector<Vertex> Decomposition::m_union(int l) const {
  std::vector<Vertex> out;
  for (int slot = 0; slot < static_cast<int>(M.size()); ++slot) {
    if (cell_at(k, slot).l == l) out.insert(out.end(), M[static_cast<std::size_t>(slot)].begin(), M[static_cast<std::size_t>(slot)].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> Decomposition::level_union(int i) const {
  if (i == 0) return {x};
  std::vector<Vertex> out;
  for (int slot = 0; slot < static_cast<int>(M.size()); ++slot) {
    if (cell_at(k, slot).i == i) out.insert(out.end(), M[static_cast<std::size_t>(slot)].begin(), M[static_cast<std::size_t>(slot)].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> Decomposition::h_vertices() const {
  std::vector<Vertex> out{x};
  for (const auto& m : M) out.insert(out.end(), m.begin(), m.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool Decomposition::h_has(Vertex a, Vertex b) const { return std::binary_search(H.begin(), H.end(), Edge(a, b)); }

std::vector<std::vector<Vertex>> random_partition(int n, Vertex x, int k, std::span<const Vertex> reserved,
                                                  int cell_size, std::uint64_t seed) {
  auto skip = vertex_mask(n, reserved);
  if (x < 0 || x >= n) throw ParameterError("x out of range");
  skip[static_cast<std::size_t>(x)] = 1;
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < n; ++v) {
    if (!skip[static_cast<std::size_t>(v)]) pool.push_back(v);
  }
  Rng rng(seed);
  rng.shuffle(pool);
  const int cells = cell_count(k);
  if (cell_size <= 0) cell_size = static_cast<int>(pool.size()) / cells;
  if (cell_size < 1 || static_cast<long long>(cell_size) * cells > static_cast<long long>(pool.size())) {
    throw ParameterError("not enough vertices for " + std::to_string(cells) + " cells");
  }
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(cells));
  for (int c = 0; c < cells; ++c) {
    auto first = pool.begin() + static_cast<std::ptrdiff_t>(c) * cell_size;
    out[static_cast<std::size_t>(c)].assign(first, first + cell_size);
    std::sort(out[static_cast<std::size_t>(c)].begin(), out[static_cast<std::size_t>(c)].end());
  }
  return out;
}

std::optional<Decomposition> decompose(const Graph& g, Vertex x, const std::vector<std::vector<Vertex>>& cells, int k,
                                       std::span<const int> size_targets, std::uint64_t seed) {
  if (k < 1 || k > 12) throw ParameterError("level count out of range");
  g.check_vertex(x);
  if (static_cast<int>(cells.size()) != cell_count(k)) {
    throw ParameterError("partition has " + std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(cell_count(k)));
  }
  if (static_cast<int>(size_targets.size()) != k) throw ParameterError("need one size target per level");
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  Decomposition dec;
  dec.x = x;
  dec.k = k;
  dec.targets.assign(size_targets.begin(), size_targets.end());
  for (const auto& cell : cells) {
    std::vector<Vertex> sorted = cell;
    std::sort(sorted.begin(), sorted.end());
    for (Vertex v : sorted) {
      g.check_vertex(v);
      if (v == x) throw ParameterError("x must not lie in a cell");
      if (seen[static_cast<std::size_t>(v)]) throw ParameterError("cells overlap at vertex " + std::to_string(v));
      seen[static_cast<std::size_t>(v)] = 1;
    }
    dec.cells.push_back(std::move(sorted));
  }

  Rng rng(seed);
  dec.M.assign(dec.cells.size(), {});
  const std::vector<Vertex> root_set{x};
  bool empty = false;
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= (1 << (k - i)); ++j) {
      for (int l = 1; l <= 4; ++l) {
        const auto& left = i == 1 ? root_set : dec.m_set(i - 1, 2 * j - 1, l);
        const auto& right = i == 1 ? root_set : dec.m_set(i - 1, 2 * j, l);
        std::vector<Vertex> m;
        for (Vertex v : dec.cell(i, j, l)) {
          bool hit_left = false, hit_right = false;
          for (Vertex w : g.neighbors(v)) {
            hit_left = hit_left || contains_sorted(left, w);
            hit_right = hit_right || contains_sorted(right, w);
          }
          if (hit_left && hit_right) m.push_back(v);
        }
        const int target = size_targets[static_cast<std::size_t>(i - 1)];
        if (target > 0 && static_cast<int>(m.size()) >= target) {
          rng.shuffle(m);
          m.resize(static_cast<std::size_t>(target));
          std::sort(m.begin(), m.end());
        }
        for (Vertex v : m) {
          for (Vertex w : g.neighbors(v)) {
            if (contains_sorted(left, w) || contains_sorted(right, w)) dec.H.emplace_back(v, w);
          }
        }
        if (m.empty()) empty = true;
        dec.M[static_cast<std::size_t>(cell_slot(k, {i, j, l}))] = std::move(m);
      }
    }
  }
  if (empty) return std::nullopt;
  std::sort(dec.H.begin(), dec.H.end());
  dec.H.erase(std::unique(dec.H.begin(), dec.H.end()), dec.H.end());
  return dec;
}

std::optional<TreeEmbedding> extract_tree(const Decomposition& dec, Vertex v, int l) {
  const int k = dec.k;
  if (!contains_sorted(dec.m_set(k, 1, l), v)) return std::nullopt;
  std::vector<Vertex> heap(static_cast<std::size_t>(TreeEmbedding::node_count(k)), -1);
  heap[0] = v;
  for (int i = k; i >= 2; --i) {
    for (int j = 1; j <= (1 << (k - i)); ++j) {
      const Vertex parent = heap[static_cast<std::size_t>(TreeEmbedding::index_of(k, i, j))];
      for (int s = 0; s < 2; ++s) {
        const int cj = 2 * j - 1 + s;
        Vertex pick = -1;
        for (Vertex w : dec.m_set(i - 1, cj, l)) {
          if (dec.h_has(parent, w)) {
            pick = w;
            break;
          }
        }
        if (pick < 0) return std::nullopt;
        heap[static_cast<std::size_t>(TreeEmbedding::index_of(k, i - 1, cj))] = pick;
      }
    }
  }
  return TreeEmbedding(k, std::move(heap));
}

}  // namespace cbgame
