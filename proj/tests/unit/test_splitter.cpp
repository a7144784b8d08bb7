#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hyperlet/split.hpp"
#include "oracles.hpp"

using namespace hyperlet;

namespace {

std::size_t upper_max_degree(const oracle::Edges& edges, std::size_t n, std::size_t alpha) {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges) {
    if (e.size() > alpha) {
      for (Vertex v : e) {
        ++deg[v];
      }
    }
  }
  return n == 0 ? 0 : *std::max_element(deg.begin(), deg.end());
}

}  // namespace

TEST(Curve, Toy) {
  auto curve = alpha_beta_curve(fixture::toy().graph);
  ASSERT_EQ(curve.size(), 4u);
  const std::size_t expected[4][2] = {{0, 3}, {2, 2}, {3, 1}, {5, 0}};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(curve[i].alpha, expected[i][0]);
    EXPECT_EQ(curve[i].beta, expected[i][1]);
  }
}

TEST(Curve, Edgeless) {
  auto curve = alpha_beta_curve(Hypergraph(3, {}));
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_EQ(curve[0].alpha, 0u);
  EXPECT_EQ(curve[0].beta, 0u);
}

TEST(Curve, MatchesDirectDegrees) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto edges = oracle::random_edges(seed, 50, 40, 12);
    Hypergraph h(50, edges);
    auto curve = alpha_beta_curve(h);
    EXPECT_EQ(curve.front().alpha, 0u);
    EXPECT_EQ(curve.front().beta, h.max_degree());
    EXPECT_EQ(curve.back().alpha, h.rank());
    EXPECT_EQ(curve.back().beta, 0u);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      EXPECT_EQ(curve[i].beta, upper_max_degree(edges, 50, curve[i].alpha));
      EXPECT_EQ(apply_split(h, curve[i].alpha).beta, curve[i].beta);
      if (i > 0) {
        EXPECT_LE(curve[i].beta, curve[i - 1].beta);
      }
    }
  }
}

TEST(ChooseSimple, Toy) {
  // alpha^2 * 4 + 2^beta * 8 at the curve points: 64, 48, 52, 108.
  auto h = fixture::toy().graph;
  const Count expected[4] = {64, 48, 52, 108};
  auto curve = alpha_beta_curve(h);
  for (int i = 0; i < 4; ++i) {
    auto c = simple_cost(h, curve[i]);
    EXPECT_EQ(c.lower_cost + c.upper_cost, expected[i]) << i;
  }
  auto choice = choose_split_simple(h);
  EXPECT_EQ(choice.split.alpha, 2u);
  EXPECT_EQ(choice.split.beta, 2u);
}

TEST(ChooseSimple, GraphAndSingleVertex) {
  Hypergraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  auto curve = alpha_beta_curve(path);
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_EQ(curve[1].alpha, 2u);
  EXPECT_EQ(curve[1].beta, 0u);
  auto single = choose_split_simple(Hypergraph(1, {}));
  EXPECT_EQ(single.split.alpha, 0u);
  EXPECT_EQ(single.split.beta, 0u);
  EXPECT_EQ(single.cost.lower_cost + single.cost.upper_cost, Count{1});
}

TEST(ChooseRefined, ToyHalf) {
  auto h = fixture::toy().graph;
  auto rows = refined_sweep(h, 0.5);
  ASSERT_EQ(rows.size(), 4u);
  const Count totals[4] = {27, 25, 30, 50};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i].cost.lower_cost + rows[i].cost.upper_cost, totals[i]);
  }
  auto choice = choose_split_refined(h, 0.5);
  EXPECT_EQ(choice.split.alpha, 2u);
  EXPECT_EQ(choice.split.beta, 2u);
}

TEST(ChooseRefined, GammaOneAndRange) {
  auto h = fixture::toy().graph;
  EXPECT_EQ(choose_split_refined(h, 1.0).split.alpha, 0u);
  EXPECT_THROW(choose_split_refined(h, 1.5), std::invalid_argument);
  EXPECT_THROW(choose_split_refined(h, -0.1), std::invalid_argument);
  EXPECT_DOUBLE_EQ(kDefaultGamma, 0.01);
}

TEST(ChooseRefined, MatchesRecomputation) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto edges = oracle::random_edges(seed, 40, 30, 10);
    Hypergraph h(40, edges);
    for (double gamma : {0.0, 0.01, 0.5, 1.0}) {
      auto rows = refined_sweep(h, gamma);
      std::size_t best = 0;
      long double best_cost = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        Count lower = 0;
        Count upper = 0;
        std::vector<std::size_t> deg(40, 0);
        for (const auto& e : edges) {
          if (e.size() <= rows[i].alpha) {
            lower += e.size() * e.size();
          } else {
            for (Vertex v : e) {
              ++deg[v];
            }
          }
        }
        for (std::size_t d : deg) {
          upper += Count{1} << d;
        }
        EXPECT_EQ(rows[i].cost.lower_cost, lower);
        EXPECT_EQ(rows[i].cost.upper_cost, upper);
        const long double w = gamma * to_long_double(lower) + (1 - gamma) * to_long_double(upper);
        if (i == 0 || w < best_cost) {
          best = i;
          best_cost = w;
        }
      }
      EXPECT_EQ(choose_split_refined(h, gamma).split.alpha, rows[best].alpha);
    }
  }
}

TEST(ApplySplit, ToyAlphaFour) {
  auto toy = fixture::toy();
  auto s = apply_split(toy.graph, 4);
  EXPECT_EQ(s.lower.edge_count(), 3u);
  EXPECT_EQ(s.upper.edge_count(), 1u);
  EXPECT_EQ(s.beta, 1u);
  EXPECT_EQ(s.upper.edge_size(0), 5u);
  EXPECT_EQ(s.upper_origin[0], 3u);
  auto all = apply_split(toy.graph, 9);
  EXPECT_EQ(all.upper.edge_count(), 0u);
  EXPECT_EQ(all.beta, 0u);
  auto none = apply_split(toy.graph, 0);
  EXPECT_EQ(none.lower.edge_count(), 0u);
  EXPECT_EQ(none.beta, 3u);
}

TEST(ApplySplit, Adjacency) {
  auto toy = fixture::toy();
  auto s = apply_split(toy.graph, 4);
  const Vertex a = toy.id_of("a"), b = toy.id_of("b"), c = toy.id_of("c"), d = toy.id_of("d");
  EXPECT_TRUE(s.lower_adjacent(a, b));
  EXPECT_FALSE(s.lower_adjacent(a, c));
  EXPECT_TRUE(s.upper_adjacent(a, c));
  EXPECT_FALSE(s.upper_adjacent(a, d));
  EXPECT_FALSE(s.upper_adjacent(a, a));
  EXPECT_EQ(s.shared_upper_edges(a, b), 1u);
}

TEST(SplitCost, CapsHugeExponent) {
  // 70 parallel-ish large edges through vertex 0 give an upper degree of 70.
  std::vector<std::vector<Vertex>> edges;
  for (Vertex i = 0; i < 70; ++i) {
    edges.push_back({0, 1 + i, 71 + i});
  }
  Hypergraph h(141, edges);
  auto rows = refined_sweep(h, 0.5);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].cost.capped);
  EXPECT_FALSE(rows[1].cost.capped);
  EXPECT_EQ(choose_split_refined(h, 0.5).split.alpha, 3u);
}
