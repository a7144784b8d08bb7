#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hyperlet {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/**
 * Immutable hypergraph on dense vertex ids 0..n-1.
 *
 * Edges and incidence lists are both stored CSR-style. Every edge is a sorted
 * list of distinct vertex ids, and incidence(v) is the sorted list of edge
 * indices containing v, i.e. the type E(v).
 */
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Validates and sorts each edge. Throws std::invalid_argument on empty
  /// edges, repeated vertices or out-of-range ids.
  Hypergraph(std::size_t vertex_count, std::vector<std::vector<Vertex>> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edge_offsets_.empty() ? 0 : edge_offsets_.size() - 1; }

  std::span<const Vertex> edge(EdgeId e) const {
    return {edge_vertices_.data() + edge_offsets_[e], edge_offsets_[e + 1] - edge_offsets_[e]};
  }
  std::size_t edge_size(EdgeId e) const { return edge_offsets_[e + 1] - edge_offsets_[e]; }

  std::span<const EdgeId> incidence(Vertex v) const {
    return {incidence_edges_.data() + incidence_offsets_[v],
            incidence_offsets_[v + 1] - incidence_offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return incidence_offsets_[v + 1] - incidence_offsets_[v]; }

  std::size_t rank() const { return rank_; }
  std::size_t max_degree() const { return max_degree_; }
  /// |V| + sum of edge sizes.
  std::size_t size() const { return vertex_count_ + edge_vertices_.size(); }

  std::vector<std::vector<Vertex>> edge_lists() const;

  bool operator==(const Hypergraph& other) const = default;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::size_t> edge_offsets_{0};
  std::vector<Vertex> edge_vertices_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<EdgeId> incidence_edges_;
  std::size_t rank_ = 0;
  std::size_t max_degree_ = 0;
};

/// Simple undirected graph with sorted, deduplicated adjacency lists.
class Graph {
 public:
  Graph() = default;
  /// Builds from an arbitrary edge list; drops self-loops and duplicates.
  Graph(std::size_t vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges);
  /// Adopts already-sorted, symmetric, deduplicated CSR arrays.
  Graph(std::vector<std::size_t> offsets, std::vector<Vertex> neighbors);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  std::vector<std::pair<Vertex, Vertex>> edge_pairs() const;

  bool operator==(const Graph& other) const = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
};

/**
 * A small hypergraph on local vertices 0..order-1 with edges encoded as
 * bitmasks. Edges are kept sorted ascending and unique (set semantics).
 */
struct Hypergraphlet {
  unsigned order = 0;
  std::vector<std::uint32_t> edges;
  std::vector<Vertex> vertex_map;

  bool operator==(const Hypergraphlet& other) const = default;
};

inline constexpr unsigned kMaxHypergraphletOrder = 32;

/// Gaifman (primal) graph: u ~ v iff some edge contains both.
Graph gaifman(const Hypergraph& h);

/// H|_U with truncated edges {e ∩ U : e ∩ U nonempty}. Local index i
/// corresponds to the i-th smallest id of U.
Hypergraphlet induced_sub(const Hypergraph& h, std::span<const Vertex> subset);

/// H<U>: only the edges entirely contained in U.
Hypergraphlet section_sub(const Hypergraph& h, std::span<const Vertex> subset);

/// Whether H|_U is connected; equivalently Gaif(H)[U] is connected.
bool is_connected_induced(const Hypergraph& h, std::span<const Vertex> subset);

/// Connectivity of the Gaifman graph of a hypergraphlet.
bool is_connected(const Hypergraphlet& hg);

/// Adjacency bitmask rows of Gaif(hg).
std::vector<std::uint32_t> gaifman_rows(const Hypergraphlet& hg);

/// Text form: order on the first line, then one hex bitmask per edge.
std::string serialize(const Hypergraphlet& hg);
Hypergraphlet deserialize_hypergraphlet(const std::string& text);

}  // namespace hyperlet
