#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/io.hpp"
#include "oracles.hpp"

using namespace hyperlet;

namespace {

std::vector<std::uint32_t> masks(const Hypergraphlet& hg) { return hg.edges; }

std::vector<Vertex> ids(const LabeledHypergraph& lh, std::initializer_list<const char*> tokens) {
  std::vector<Vertex> out;
  for (const char* t : tokens) {
    out.push_back(lh.id_of(t));
  }
  return out;
}

}  // namespace

TEST(Parse, ToyStats) {
  auto toy = fixture::toy();
  const Hypergraph& h = toy.graph;
  EXPECT_EQ(h.vertex_count(), 8u);
  EXPECT_EQ(h.edge_count(), 4u);
  EXPECT_EQ(h.rank(), 5u);
  EXPECT_EQ(h.max_degree(), 3u);
  EXPECT_EQ(h.size(), 20u);
  EXPECT_EQ(toy.tokens[7], "#7");
}

TEST(Parse, MinimalNoHeader) {
  auto lh = parse_hypergraph_string("0 1\n");
  EXPECT_EQ(lh.graph.vertex_count(), 2u);
  EXPECT_EQ(lh.graph.edge_count(), 1u);
  EXPECT_EQ(lh.graph.rank(), 2u);
  EXPECT_EQ(lh.graph.max_degree(), 1u);
}

TEST(Parse, Rejects) {
  EXPECT_THROW(parse_hypergraph_string("0 0 1\n"), ParseError);
  EXPECT_THROW(parse_hypergraph_string("0 1\n   \n"), ParseError);
  EXPECT_THROW(parse_hypergraph_string("# vertices x\n0 1\n"), ParseError);
  EXPECT_THROW(parse_hypergraph_string("# vertices 2\n0 1 2\n"), ParseError);
  try {
    parse_hypergraph_string("0 1\n1 2 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parse, CommentsBlankLinesAndDedupe) {
  auto lh = parse_hypergraph_string("% comment\n0 1\n\n1 0\n2 1\n");
  EXPECT_EQ(lh.graph.edge_count(), 2u);
  ParseOptions keep;
  keep.dedupe_edges = false;
  EXPECT_EQ(parse_hypergraph_string("0 1\n1 0\n", keep).graph.edge_count(), 2u);
}

TEST(Parse, NumericHeaderKeepsIds) {
  auto lh = parse_hypergraph_string("# vertices 5\n4 2\n");
  EXPECT_EQ(lh.graph.vertex_count(), 5u);
  EXPECT_EQ(std::vector<Vertex>(lh.graph.edge(0).begin(), lh.graph.edge(0).end()),
            (std::vector<Vertex>{2, 4}));
}

TEST(Parse, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Hypergraph h(15, oracle::random_edges(seed, 15, 12, 6));
    std::ostringstream os;
    write_hypergraph(os, h);
    std::istringstream is(os.str());
    ParseOptions keep;
    keep.dedupe_edges = false;
    EXPECT_EQ(parse_hypergraph(is, keep).graph, h);
  }
  auto toy = fixture::toy();
  std::ostringstream os;
  write_hypergraph(os, toy);
  auto again = parse_hypergraph_string(os.str());
  EXPECT_EQ(again.graph, toy.graph);
  EXPECT_EQ(again.tokens, toy.tokens);
}

TEST(Gaifman, Toy) {
  auto toy = fixture::toy();
  Graph g = gaifman(toy.graph);
  EXPECT_EQ(g.edge_count(), 13u);
  EXPECT_EQ(g.degree(toy.id_of("#7")), 0u);
  EXPECT_TRUE(g.adjacent(toy.id_of("d"), toy.id_of("g")));
  EXPECT_FALSE(g.adjacent(toy.id_of("d"), toy.id_of("a")));
}

TEST(Gaifman, SmallCases) {
  Hypergraph tri(3, {{0, 1, 2}});
  EXPECT_EQ(gaifman(tri).edge_count(), 3u);
  Hypergraph none(4, {});
  EXPECT_EQ(gaifman(none).edge_count(), 0u);
}

TEST(Gaifman, MatchesOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto edges = oracle::random_edges(seed, 12, 10, 5);
    Graph g = gaifman(Hypergraph(12, edges));
    auto a = oracle::primal_matrix(12, edges);
    for (Vertex u = 0; u < 12; ++u) {
      for (Vertex v = 0; v < 12; ++v) {
        EXPECT_EQ(g.adjacent(u, v), a[u][v]);
      }
    }
  }
}

TEST(Induced, Examples) {
  auto toy = fixture::toy();
  // Local index follows ascending ids: a=0, b=1, c=6 -> bits 0,1,2.
  auto abc = induced_sub(toy.graph, ids(toy, {"a", "b", "c"}));
  EXPECT_EQ(masks(abc), (std::vector<std::uint32_t>{0b010, 0b011, 0b111}));
  auto abe = induced_sub(toy.graph, ids(toy, {"a", "b", "e"}));
  EXPECT_EQ(masks(abe), (std::vector<std::uint32_t>{0b011, 0b110, 0b111}));
  Hypergraph h(3, {{0, 1}, {0, 1, 2}});
  std::vector<Vertex> xy{0, 1};
  EXPECT_EQ(masks(induced_sub(h, xy)), (std::vector<std::uint32_t>{0b11}));
  std::vector<Vertex> bad{0, 9};
  EXPECT_THROW(induced_sub(h, bad), std::invalid_argument);
}

TEST(Induced, MatchesOracle) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto edges = oracle::random_edges(seed, 10, 8, 6);
    Hypergraph h(10, edges);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Vertex> u;
      for (Vertex v = 0; v < 10; ++v) {
        if (rng() % 3 == 0) {
          u.push_back(v);
        }
      }
      if (u.empty()) {
        continue;
      }
      auto hg = induced_sub(h, u);
      std::set<std::vector<Vertex>> got;
      for (auto m : hg.edges) {
        std::vector<Vertex> e;
        for (unsigned j = 0; j < hg.order; ++j) {
          if (m >> j & 1u) {
            e.push_back(u[j]);
          }
        }
        got.insert(e);
      }
      EXPECT_EQ(got, oracle::induced_edges(edges, u));
    }
  }
}

TEST(Section, Examples) {
  auto toy = fixture::toy();
  auto abe = section_sub(toy.graph, ids(toy, {"a", "b", "e"}));
  EXPECT_EQ(masks(abe), (std::vector<std::uint32_t>{0b011, 0b110}));
  Hypergraph h(3, {{0, 1, 2}});
  std::vector<Vertex> two{0, 1};
  EXPECT_TRUE(section_sub(h, two).edges.empty());
  std::vector<Vertex> all{0, 1, 2};
  EXPECT_EQ(section_sub(h, all).edges.size(), 1u);
}

TEST(Connectivity, Examples) {
  auto toy = fixture::toy();
  EXPECT_TRUE(is_connected_induced(toy.graph, ids(toy, {"a", "b", "c"})));
  std::vector<Vertex> cdh{toy.id_of("c"), toy.id_of("d"), toy.id_of("#7")};
  EXPECT_FALSE(is_connected_induced(toy.graph, cdh));
  std::vector<Vertex> one{3};
  EXPECT_TRUE(is_connected_induced(toy.graph, one));
}

TEST(Connectivity, EquivalentToPrimalRestriction) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto edges = oracle::random_edges(seed, 10, 6, 4);
    Hypergraph h(10, edges);
    for (unsigned k = 1; k <= 4; ++k) {
      auto conn = oracle::connected_subsets(10, edges, k);
      std::set<std::vector<Vertex>> expected(conn.begin(), conn.end());
      for (std::uint32_t mask = 1; mask < (1u << 10); ++mask) {
        if (static_cast<unsigned>(__builtin_popcount(mask)) != k) {
          continue;
        }
        std::vector<Vertex> u;
        for (Vertex v = 0; v < 10; ++v) {
          if (mask >> v & 1u) {
            u.push_back(v);
          }
        }
        EXPECT_EQ(is_connected_induced(h, u), expected.count(u) == 1);
      }
    }
  }
}

TEST(Connectivity, GaifmanOfInducedIsRestriction) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto edges = oracle::random_edges(seed, 9, 7, 5);
    Hypergraph h(9, edges);
    Graph g = gaifman(h);
    std::vector<Vertex> u{0, 2, 3, 5, 8};
    auto rows = gaifman_rows(induced_sub(h, u));
    for (unsigned i = 0; i < u.size(); ++i) {
      for (unsigned j = 0; j < u.size(); ++j) {
        EXPECT_EQ((rows[i] >> j & 1u) != 0, i != j && g.adjacent(u[i], u[j]));
      }
    }
  }
}

TEST(Hypergraphlet, SerializeRoundTrip) {
  auto toy = fixture::toy();
  auto hg = induced_sub(toy.graph, ids(toy, {"a", "b", "c", "e", "g"}));
  auto text = serialize(hg);
  auto back = deserialize_hypergraphlet(text);
  EXPECT_EQ(back.order, hg.order);
  EXPECT_EQ(back.edges, hg.edges);
}

TEST(HypergraphModel, RejectsBadEdges) {
  EXPECT_THROW(Hypergraph(3, {{}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(3, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(3, {{0, 3}}), std::invalid_argument);
}

TEST(HypergraphModel, IncidenceIsInverse) {
  auto edges = oracle::random_edges(9, 20, 30, 7);
  Hypergraph h(20, edges);
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    for (Vertex v : h.edge(e)) {
      auto inc = h.incidence(v);
      EXPECT_TRUE(std::binary_search(inc.begin(), inc.end(), e));
    }
  }
  std::size_t total = 0;
  for (Vertex v = 0; v < 20; ++v) {
    total += h.degree(v);
  }
  EXPECT_EQ(total + 20, h.size());
}
