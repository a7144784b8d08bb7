#include <gtest/gtest.h>

#include <random>

#include "hyperlet/hardlab.hpp"
#include "hyperlet/split.hpp"
#include "oracles.hpp"

using namespace hyperlet;

namespace {

Graph complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      e.emplace_back(i, j);
    }
  }
  return Graph(n, e);
}

Graph cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i) {
    e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  }
  return Graph(n, e);
}

Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<std::pair<Vertex, Vertex>> e;
  std::bernoulli_distribution coin(p);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (coin(rng)) {
        e.emplace_back(i, j);
      }
    }
  }
  return Graph(n, e);
}

}  // namespace

TEST(Reduction, K4Shape) {
  auto r = reduce_clique_to_ksh(complete(4), 4);
  EXPECT_EQ(r.block_size, 6u);
  EXPECT_EQ(r.k_prime, 30u);
  EXPECT_EQ(r.hypergraph.vertex_count(), 4u * 6 + 6);
  EXPECT_EQ(r.hypergraph.edge_count(), 6u);
  for (EdgeId e = 0; e < 6; ++e) {
    EXPECT_EQ(r.hypergraph.edge_size(e), 13u);
  }
  EXPECT_EQ(r.block_map[2].front(), 12u);
  EXPECT_EQ(r.edge_map[0].singleton, 24u);
}

TEST(Reduction, Degenerate) {
  auto r = reduce_clique_to_ksh(Graph(5, {}), 3);
  EXPECT_EQ(r.hypergraph.edge_count(), 0u);
  EXPECT_FALSE(decide_ksh_bruteforce(r.hypergraph, r.k_prime).found);
  EXPECT_THROW(reduce_clique_to_ksh(complete(3), 2), std::invalid_argument);
}

TEST(Ksh, Examples) {
  Hypergraph h(3, {{0, 1, 2}});
  EXPECT_FALSE(decide_ksh_bruteforce(h, 2).found);
  auto yes = decide_ksh_bruteforce(h, 3);
  EXPECT_TRUE(yes.found);
  EXPECT_EQ(yes.witness, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_TRUE(decide_ksh_bruteforce(h, 1).found);
  EXPECT_FALSE(decide_ksh_bruteforce(h, 4).found);

  EXPECT_FALSE(decide_ksh_bruteforce(reduce_clique_to_ksh(cycle(5), 3).hypergraph, 12).found);
  auto k4 = reduce_clique_to_ksh(complete(4), 3);
  auto hit = decide_ksh_bruteforce(k4.hypergraph, k4.k_prime);
  ASSERT_TRUE(hit.found);
  auto w = read_witness(k4, complete(4), hit.witness);
  EXPECT_TRUE(w.blocks_whole);
  EXPECT_TRUE(w.accounting);
  EXPECT_TRUE(w.is_clique);
  EXPECT_EQ(w.blocks.size(), 3u);
  EXPECT_EQ(w.edges.size(), 3u);
}

TEST(Ksh, MethodsAgree) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 3 + rng() % 8;
    Hypergraph h(n, oracle::random_edges(seed, n, 1 + rng() % 6, 4));
    for (std::size_t k = 1; k <= n; ++k) {
      auto a = decide_ksh_bruteforce(h, k, KshMethod::kSubsets);
      auto b = decide_ksh_bruteforce(h, k, KshMethod::kEdgeUnions);
      ASSERT_EQ(a.found, b.found) << seed << " " << k;
    }
  }
}

TEST(Ksh, BudgetAndArgs) {
  auto r = reduce_clique_to_ksh(complete(5), 3);
  EXPECT_THROW(decide_ksh_bruteforce(r.hypergraph, r.k_prime, KshMethod::kSubsets, 100),
               BudgetError);
  EXPECT_THROW(decide_ksh_bruteforce(r.hypergraph, 0), std::invalid_argument);
}

TEST(Reduction, AgreesWithCliqueSearch) {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 300; ++round) {
    auto g = random_graph(rng, 3 + rng() % 5, 0.5);
    auto r = reduce_clique_to_ksh(g, 3);
    auto res = decide_ksh_bruteforce(r.hypergraph, r.k_prime);
    ASSERT_EQ(res.found, has_clique(g, 3));
    if (res.found) {
      auto w = read_witness(r, g, res.witness);
      EXPECT_TRUE(w.blocks_whole && w.accounting && w.is_clique);
    }
  }
}

TEST(Reduction, SplitPutsEverythingLow) {
  auto r = reduce_clique_to_ksh(complete(5), 3);
  const std::size_t alpha = 9;  // k^2
  auto split = apply_split(r.hypergraph, alpha);
  EXPECT_EQ(split.upper.edge_count(), 0u);
  for (auto point : alpha_beta_curve(r.hypergraph)) {
    if (point.alpha == alpha) {
      EXPECT_EQ(point.beta, 0u);
    }
  }
}

TEST(Ov, Examples) {
  OVInstance yes{{{1, 0}, {0, 1}, {1, 1}}};
  auto a = solve_ov_via_nc(yes);
  EXPECT_TRUE(a.orthogonal_pair);
  ASSERT_TRUE(a.pair.has_value());
  EXPECT_EQ(*a.pair, (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(a.hypergraph.edge_count(), 2u);

  OVInstance no{{{1, 1}, {0, 1}, {1, 1}}};
  auto b = solve_ov_via_nc(no);
  EXPECT_FALSE(b.orthogonal_pair);
  EXPECT_EQ(b.neighbor_counts, (std::vector<std::size_t>{2, 2, 2}));

  // A zero vector is orthogonal to everything.
  EXPECT_TRUE(solve_ov_via_nc(OVInstance{{{0, 0}, {1, 1}}}).orthogonal_pair);
  EXPECT_THROW(solve_ov_via_nc(OVInstance{{{1, 0}, {1}}}), std::invalid_argument);
  EXPECT_THROW(solve_ov_via_nc(OVInstance{{{1, 0}}}), std::invalid_argument);
}

TEST(Ov, AgreesWithPairwise) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = 2 + rng() % 20;
    const std::size_t d = 1 + rng() % 12;
    std::bernoulli_distribution coin(0.3 + 0.5 * (rng() % 2));
    OVInstance inst;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint8_t> v(d);
      for (auto& x : v) {
        x = coin(rng);
      }
      inst.vectors.push_back(v);
    }
    auto r = solve_ov_via_nc(inst);
    ASSERT_EQ(r.orthogonal_pair, ov_pairwise(inst));
    if (r.pair) {
      const auto& x = inst.vectors[r.pair->first];
      const auto& y = inst.vectors[r.pair->second];
      for (std::size_t j = 0; j < d; ++j) {
        EXPECT_FALSE(x[j] && y[j]);
      }
    }
  }
}

TEST(StarCheck, BlowUpShape) {
  Hypergraph h(3, {{0, 1}, {1, 2}});
  auto b = blow_up(h, 2);
  EXPECT_EQ(b.vertex_count(), 6u);
  EXPECT_EQ(b.edge_count(), 2u);
  EXPECT_EQ(b.edge_size(0), 4u);
}

TEST(StarCheck, CountsIncludeCopies) {
  // Copies of v are adjacent to (v, 0) in the blow-up, so the star count is
  // (|N(v)| + 1)^(k-1) for non-isolated v.
  std::mt19937_64 rng(6);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 3 + rng() % 6;
    auto edges = oracle::random_edges(seed, n, 1 + rng() % 4, 3);
    Hypergraph h(n, edges);
    Graph g = gaifman(h);
    const unsigned k = 2 + rng() % 3;
    auto stars = blown_up_star_counts(h, k);
    for (Vertex v = 0; v < n; ++v) {
      Count expected = 0;
      if (h.degree(v) != 0) {
        expected = 1;
        for (unsigned i = 1; i < k; ++i) {
          expected *= g.neighbors(v).size() + 1;
        }
      }
      EXPECT_EQ(stars[v], expected) << "seed " << seed << " v " << v;
    }
  }
  Hypergraph pair(2, {{0, 1}});
  EXPECT_EQ(blown_up_star_counts(pair, 2)[0], Count{2});
}

TEST(Generators, Deterministic) {
  auto a = powerlaw_hypergraph(100, 80, 2.5, 10, 3);
  auto b = powerlaw_hypergraph(100, 80, 2.5, 10, 3);
  EXPECT_EQ(a.edge_lists(), b.edge_lists());
  EXPECT_EQ(a.edge_count(), 80u);
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    EXPECT_GE(a.edge_size(e), 2u);
    EXPECT_LE(a.edge_size(e), 10u);
  }
  EXPECT_NE(a.edge_lists(), powerlaw_hypergraph(100, 80, 2.5, 10, 4).edge_lists());
}

TEST(Generators, ControlledRespectsBeta) {
  ControlledParams p;
  p.n = 200;
  p.m = 150;
  p.alpha = 4;
  p.beta = 2;
  p.large_size = 12;
  auto h = controlled_hypergraph(p, 9);
  EXPECT_EQ(h.edge_count(), 150u);
  auto split = apply_split(h, 4);
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    EXPECT_LE(split.upper.degree(v), 2u);
  }
  EXPECT_LE(split.beta, 2u);
  EXPECT_EQ(controlled_hypergraph(p, 9).edge_lists(), h.edge_lists());
}
