#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cbgame/breaker.hpp"
#include "cbgame/decomposition.hpp"
#include "cbgame/graph.hpp"
#include "cbgame/structures.hpp"
#include "cbgame/trees.hpp"

namespace cbgame {

enum class ClauseKind { Hard, Bound };

/// One checked property. A false verdict carries a witness that pins down
/// the violation (a vertex, an edge, a count).
struct Clause {
  std::string name;
  bool holds = true;
  ClauseKind kind = ClauseKind::Hard;
  std::optional<double> threshold;
  nlohmann::json witness;
};

struct PropertyReport {
  std::string family;
  std::vector<Clause> clauses;
  nlohmann::json params = nlohmann::json::object();

  const Clause* find(const std::string& name) const;
  bool holds(const std::string& name) const;
  bool all_hold() const;
  bool hard_hold() const;
  nlohmann::json to_json() const;
};

/// B1: B_1 = N(x) and B_1 spans no edge. B2: each v in B_i, i >= 2, has
/// exactly two neighbours in B_1 u ... u B_i. B3: every vertex outside B^x
/// and x has at most one neighbour in B^x. B4: B^x avoids M and N(M).
PropertyReport check_B(const Graph& g, const BadSetDecomposition& dec, std::span<const Vertex> M);

/// N^s = vertices outside `set` with at least s neighbours in it. Sorted.
std::vector<Vertex> n_s_set(const Graph& g, std::span<const Vertex> set, int s);

/// True when eps >= 7 ln ln n / ln n.
bool bad_set_regime(int n, double eps);

/// P1-P6 on successively built bad sets, for i up to min(r_{x_j}, ceil(1/eps)).
/// P2 and P5 are bounds; the report carries the regime flag in params.
PropertyReport check_P(const Graph& g, const SuccessiveBadSets& succ, double eps);

/// D1, D3, D5, D6 as hard clauses; D2 against the decomposition's own size
/// targets and D4 against n^((alpha_i - alpha_{i-1}) eps) as bounds.
PropertyReport check_D(const Graph& g, const Decomposition& dec, double eps);

/// T1-T4 for a tree per root in L_k.
PropertyReport check_T(const Decomposition& dec, const std::map<Vertex, TreeEmbedding>& trees);

/// S1-S4 plus z in N_{G\B}(A1) and vertex-disjointness of the four trees.
PropertyReport check_S(const Graph& g, const EdgeSet& B, std::span<const Vertex> M, std::span<const Vertex> A1,
                       Vertex x, const Stage2Structure& s);

/// Roots v whose tree uses e as a tree edge or as a leaf-x edge. Sorted.
std::vector<Vertex> compute_Se(const Decomposition& dec, const std::map<Vertex, TreeEmbedding>& trees, const Edge& e);

/// |S_e| <= n^(2/3 - eps) for every edge of H.
PropertyReport check_Se_bound(int n, const Decomposition& dec, const std::map<Vertex, TreeEmbedding>& trees,
                              double eps);

/// Vertices u of R' with more than `threshold` neighbours in Q. Sorted.
std::vector<Vertex> compute_BigQ(const Graph& g, std::span<const Vertex> Q, std::span<const Vertex> r_prime,
                                 double threshold);

/// (a) every v in R' has more than n^(1/3 + 2eps/3) neighbours in each
/// M_(k,1,l); (b) |N(A) n R'| > n^(2/3 + 2eps/3); (c) for the given Q,
/// |Big_Q| <= n^(2/3 + eps/2). All bounds.
PropertyReport check_claim_big(const Graph& g, const Decomposition& dec, std::span<const Vertex> A,
                               std::span<const Vertex> r_prime, double eps, std::span<const Vertex> Q);

/// Family "Hn": whether g has two adjacent vertices seeing all others.
PropertyReport check_Hn(const Graph& g);

}  // namespace cbgame
