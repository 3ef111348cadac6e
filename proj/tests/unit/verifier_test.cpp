#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cbgame/breaker.hpp"
#include "cbgame/decomposition.hpp"
#include "cbgame/errors.hpp"
#include "cbgame/random.hpp"
#include "cbgame/verifier.hpp"
#include "support.hpp"

using namespace cbgame;

namespace {

std::map<Vertex, TreeEmbedding> all_trees(const Decomposition& dec) {
  std::map<Vertex, TreeEmbedding> out;
  for (int l = 1; l <= 4; ++l) {
    for (Vertex v : dec.m_set(dec.k, 1, l)) {
      if (auto t = extract_tree(dec, v, l)) out.emplace(v, *t);
    }
  }
  return out;
}

Decomposition layered_decomposition(int k, int cell_size) {
  const auto inst = cbtest::layered_instance(k, cell_size);
  auto dec = decompose(inst.graph, inst.x, inst.cells, k, std::vector<int>(static_cast<std::size_t>(k), 0), 1);
  return *dec;
}

}  // namespace

TEST(CheckB, StarAndTriangle) {
  std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {3, 6}};
  const Graph g = Graph::from_edges(8, edges);
  const std::vector<Vertex> M{0, 1, 2};
  const auto rep = check_B(g, build_bad_set(g, 3), M);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_EQ(rep.family, "B");
}

TEST(CheckB, G1) {
  const Graph g = cbtest::g1();
  const auto rep = check_B(g, build_bad_set(g, 0), {});
  EXPECT_TRUE(rep.holds("B1"));
  EXPECT_TRUE(rep.holds("B2"));
  EXPECT_TRUE(rep.holds("B3"));
  EXPECT_TRUE(rep.holds("B4"));
  const std::vector<Vertex> M{4};
  EXPECT_FALSE(check_B(g, build_bad_set(g, 0), M).holds("B4"));
}

TEST(CheckB, TriangleWitness) {
  std::vector<Edge> tri{{0, 1}, {0, 2}, {1, 2}};
  const Graph g = Graph::from_edges(3, tri);
  const auto rep = check_B(g, build_bad_set(g, 0), {});
  EXPECT_FALSE(rep.holds("B1"));
  const Clause* c = rep.find("B1");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->witness["edge"], nlohmann::json::array({1, 2}));
  EXPECT_THROW(rep.holds("B9"), ParameterError);
}

TEST(CheckB, MatchesBruteForce) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(8));
    const Graph g = gen_gnp(n, 0.15 + 0.1 * static_cast<double>(rng.below(5)), rng.next());
    const Vertex x = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    const std::vector<Vertex> M{static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)))};
    const auto oracle = cbtest::bad_set_oracle(g, x);
    std::set<Vertex> bad;
    for (const auto& layer : oracle.layers) bad.insert(layer.begin(), layer.end());

    bool b1 = true;
    for (Vertex u : oracle.layers.front()) {
      for (Vertex v : oracle.layers.front()) b1 = b1 && !g.has_edge(u, v);
    }
    bool b2 = true;
    std::set<Vertex> upto;
    for (std::size_t i = 0; i < oracle.layers.size(); ++i) {
      upto.insert(oracle.layers[i].begin(), oracle.layers[i].end());
      if (i == 0) continue;
      for (Vertex v : oracle.layers[i]) {
        int d = 0;
        for (Vertex w : upto) d += g.has_edge(v, w) ? 1 : 0;
        b2 = b2 && d == 2;
      }
    }
    bool b3 = true;
    for (Vertex v = 0; v < n; ++v) {
      if (v == x || bad.count(v)) continue;
      int d = 0;
      for (Vertex w : bad) d += g.has_edge(v, w) ? 1 : 0;
      b3 = b3 && d <= 1;
    }
    bool b4 = true;
    for (Vertex v : bad) b4 = b4 && v != M[0] && !g.has_edge(v, M[0]);

    const auto rep = check_B(g, build_bad_set(g, x), M);
    ASSERT_EQ(rep.holds("B1"), b1) << "trial " << trial;
    ASSERT_EQ(rep.holds("B2"), b2) << "trial " << trial;
    ASSERT_EQ(rep.holds("B3"), b3) << "trial " << trial;
    ASSERT_EQ(rep.holds("B4"), b4) << "trial " << trial;
  }
}

TEST(NsSet, G1) {
  const Graph g = cbtest::g1();
  const std::vector<Vertex> abc{1, 2, 3};
  EXPECT_EQ(n_s_set(g, abc, 3), (std::vector<Vertex>{0}));
  EXPECT_EQ(n_s_set(g, abc, 2), (std::vector<Vertex>{0, 4}));
  EXPECT_EQ(n_s_set(g, abc, 0), (std::vector<Vertex>{0, 4}));
}

TEST(CheckP, Edgeless) {
  const Graph g(400);
  const std::vector<Vertex> cands{0, 1, 2};
  const auto rep = check_P(g, build_successive(g, cands), 0.25);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_THROW(check_P(g, build_successive(g, cands), 0.0), ParameterError);
}

TEST(CheckP, SharedNeighbourBreaksP1) {
  std::vector<Edge> edges{{0, 5}, {1, 5}};
  const Graph g = Graph::from_edges(20, edges);
  const std::vector<Vertex> cands{0, 1};
  EXPECT_FALSE(check_P(g, build_successive(g, cands), 0.3).holds("P1"));
}

TEST(CheckD, LayeredHolds) {
  const auto inst = cbtest::layered_instance(3, 2);
  const auto dec = layered_decomposition(3, 2);
  EXPECT_TRUE(check_D(inst.graph, dec, epsilon_for_levels(3)).hard_hold());
}

TEST(CheckD, LevelSkippingEdge) {
  const auto inst = cbtest::layered_instance(2, 1);
  auto dec = layered_decomposition(2, 1);
  // The level-2 singleton of cell (2,1,1) joined straight to x.
  const Vertex top = dec.m_set(2, 1, 1).front();
  std::vector<Edge> edges(inst.graph.edges().begin(), inst.graph.edges().end());
  edges.emplace_back(inst.x, top);
  const Graph g = Graph::from_edges(inst.graph.num_vertices(), edges);
  dec.H.emplace_back(inst.x, top);
  std::sort(dec.H.begin(), dec.H.end());
  const auto rep = check_D(g, dec, epsilon_for_levels(2));
  EXPECT_FALSE(rep.holds("D6"));
  EXPECT_TRUE(rep.holds("D3"));
}

TEST(CheckD, MissingChild) {
  const auto inst = cbtest::layered_instance(2, 1);
  auto dec = layered_decomposition(2, 1);
  dec.M[static_cast<std::size_t>(cell_slot(2, {1, 1, 1}))].clear();
  const auto rep = check_D(inst.graph, dec, epsilon_for_levels(2));
  EXPECT_FALSE(rep.holds("D3"));
  EXPECT_FALSE(rep.hard_hold());
}

TEST(CheckD, ForeignVertex) {
  const auto inst = cbtest::layered_instance(2, 2);
  auto dec = layered_decomposition(2, 2);
  auto& m = dec.M[0];
  m.push_back(dec.cells[1].front());
  std::sort(m.begin(), m.end());
  EXPECT_FALSE(check_D(inst.graph, dec, epsilon_for_levels(2)).holds("D1"));
}

TEST(CheckT, ExtractedTrees) {
  const auto dec = layered_decomposition(3, 1);
  const auto trees = all_trees(dec);
  EXPECT_EQ(trees.size(), 4u);
  EXPECT_TRUE(check_T(dec, trees).all_hold());
  auto broken = trees;
  broken.erase(broken.begin());
  EXPECT_FALSE(check_T(dec, broken).holds("T1"));
}

TEST(ComputeSe, SingletonCells) {
  const auto dec = layered_decomposition(2, 1);
  const auto trees = all_trees(dec);
  const Vertex root = dec.m_set(2, 1, 1).front();
  const Vertex child = dec.m_set(1, 1, 1).front();
  EXPECT_EQ(compute_Se(dec, trees, Edge(root, child)), (std::vector<Vertex>{root}));
  EXPECT_EQ(compute_Se(dec, trees, Edge(child, dec.x)), (std::vector<Vertex>{root}));
  EXPECT_TRUE(compute_Se(dec, trees, Edge(root, dec.x)).empty());
  EXPECT_TRUE(check_Se_bound(1000, dec, trees, 0.1).all_hold());
}

TEST(ComputeSe, SharedChildren) {
  // Two roots per level-2 cell share both children, so every tree edge below
  // them is used twice.
  const auto dec = layered_decomposition(2, 2);
  const auto trees = all_trees(dec);
  const Vertex child = dec.m_set(1, 1, 1).front();
  EXPECT_EQ(compute_Se(dec, trees, Edge(child, dec.x)).size(), 2u);
  const auto rep = check_Se_bound(2, dec, trees, 0.6);
  EXPECT_FALSE(rep.all_hold());
  EXPECT_EQ(rep.params["max_Se"], 2);
}

TEST(ComputeBigQ, Threshold) {
  const Graph g = cbtest::g1();
  const std::vector<Vertex> Q{1, 2}, R{0, 3, 4};
  EXPECT_EQ(compute_BigQ(g, Q, R, 1.5), (std::vector<Vertex>{0, 4}));
  EXPECT_TRUE(compute_BigQ(g, Q, R, 2.0).empty());
}

TEST(CheckHn, Examples) {
  std::vector<Edge> tri{{0, 1}, {0, 2}, {1, 2}};
  EXPECT_TRUE(check_Hn(Graph::from_edges(3, tri)).all_hold());
  std::vector<Edge> path{{0, 1}, {1, 2}, {2, 3}};
  const auto rep = check_Hn(Graph::from_edges(4, path));
  EXPECT_FALSE(rep.all_hold());
  EXPECT_TRUE(rep.find("contains_Hn")->witness.contains("pair"));
}

TEST(Report, Json) {
  std::vector<Edge> tri{{0, 1}, {0, 2}, {1, 2}};
  const Graph g = Graph::from_edges(3, tri);
  const auto j = check_B(g, build_bad_set(g, 0), {}).to_json();
  EXPECT_EQ(j["family"], "B");
  EXPECT_EQ(j["all_hold"], false);
  ASSERT_EQ(j["clauses"].size(), 4u);
  EXPECT_EQ(j["clauses"][0]["name"], "B1");
  EXPECT_EQ(j["clauses"][0]["kind"], "hard");
  EXPECT_TRUE(j["clauses"][0].contains("witness"));
  EXPECT_FALSE(j["clauses"][1].contains("witness"));
  EXPECT_EQ(j["params"]["x"], 0);
}

TEST(Report, WitnessRecheck) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = gen_gnp(9, 0.4, rng.next());
    const Vertex x = static_cast<Vertex>(rng.below(9));
    const auto rep = check_B(g, build_bad_set(g, x), {});
    const Clause* b3 = rep.find("B3");
    if (b3->holds) continue;
    const Vertex v = b3->witness["vertex"];
    const auto bad = build_bad_set(g, x).bad;
    EXPECT_EQ(degree_into(g, v, bad), b3->witness["degree"].get<int>());
    EXPECT_GT(degree_into(g, v, bad), 1);
  }
}
