#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperlet/count.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/split.hpp"

namespace hyperlet {

using WeightVector = std::vector<Count>;

/// eta(v) = sum of w over the graph neighborhood of v.
WeightVector nw_naive(const Graph& g, std::span<const Count> w);

inline constexpr std::size_t kDefaultDegreeCap = 20;

class DegreeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Inclusion-exclusion neighbor weights on a hypergraph of bounded degree.
 *
 * Every nonempty X ⊆ E(v) is a sorted tuple of edge ids; tuples are interned
 * once in a trie so each round only clears and refills a flat table t[X],
 * t[X] = w(∩X). Then eta(v) = Σ_{X≠∅} (-1)^{|X|+1} t[X] - w(v) when E(v) is
 * nonempty, else 0.
 */
class InclusionExclusionNW {
 public:
  explicit InclusionExclusionNW(const Hypergraph& h, std::size_t degree_cap = kDefaultDegreeCap);

  WeightVector compute(std::span<const Count> w, unsigned threads = 1) const;

  std::size_t table_size() const { return node_count_; }

 private:
  std::size_t vertex_count_;
  std::vector<std::size_t> offsets_;  // per-vertex start into slots_
  std::vector<std::uint32_t> slots_;  // slot of subset mask m of E(v) at offsets_[v] + m - 1
  std::size_t node_count_ = 0;
};

WeightVector nw_ie(const Hypergraph& h, std::span<const Count> w,
                   std::size_t degree_cap = kDefaultDegreeCap);

/// Neighbor sums of one weight vector: the exact eta and its two halves.
struct NeighborSums {
  WeightVector eta;
  WeightVector low;
  WeightVector high;
};

/**
 * Neighbor weights on H from an alpha-split: eta_low on Gaif(H_low) by
 * enumeration, eta_high on H_high by inclusion-exclusion, minus w(u) for
 * every u that is a neighbor through both parts. The doubly-adjacent pairs
 * are found once per split (sorted-type intersection) and reused.
 */
class SplitNeighborWeights {
 public:
  SplitNeighborWeights(const AlphaSplit& split, std::size_t degree_cap = kDefaultDegreeCap);

  NeighborSums compute(std::span<const Count> w, unsigned threads = 1) const;

 private:
  const AlphaSplit* split_;
  InclusionExclusionNW upper_;
  std::vector<std::size_t> overlap_offsets_;
  std::vector<Vertex> overlap_;
};

NeighborSums combined_neighbor_weight(const AlphaSplit& split, std::span<const Count> w,
                                      std::size_t degree_cap = kDefaultDegreeCap);

/// Runs fn(begin, end) over [0, n) split into contiguous chunks.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn);

}  // namespace hyperlet

#include "hyperlet/detail/parallel.hpp"
