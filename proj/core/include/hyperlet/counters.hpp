#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "hyperlet/count.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/neighbor_weight.hpp"
#include "hyperlet/split.hpp"
#include "hyperlet/treelet.hpp"

namespace hyperlet {

using ColorSet = std::uint32_t;

struct Coloring {
  unsigned k = 0;
  std::vector<std::uint8_t> colors;
  std::uint64_t seed = 0;

  bool operator==(const Coloring& other) const = default;
};

/// i.i.d. uniform colors in [0, k), deterministic in the seed.
Coloring random_coloring(std::size_t vertex_count, unsigned k, std::uint64_t seed);

/// Rank of every color subset among subsets of the same size (ascending mask order).
class SubsetIndex {
 public:
  explicit SubsetIndex(unsigned k);
  unsigned k() const { return k_; }
  std::size_t rank(ColorSet s) const { return rank_[s]; }
  const std::vector<ColorSet>& of_size(unsigned h) const { return by_size_[h]; }
  ColorSet full() const { return (ColorSet{1} << k_) - 1; }

 private:
  unsigned k_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::vector<ColorSet>> by_size_;
};

struct BuildOptions {
  unsigned threads = 1;
  std::size_t degree_cap = kDefaultDegreeCap;
  /// Refuse the naive projection above this many adjacency entries.
  std::size_t max_projection_entries = std::size_t{1} << 31;
  /// Keep per-(T2,S2) neighbor sums for the sampler.
  bool keep_neighbor_sums = true;
};

/**
 * All counters C(T, S, v) for treelets of order <= k, plus, for every treelet
 * of order < k used as a subtree, the neighbor sums of C(T2, S2, .) split into
 * the lower-part and upper-part halves.
 *
 * Rows are dense per (treelet, color set): index rank(S) * n + v.
 */
class CounterSet {
 public:
  CounterSet(std::shared_ptr<const TreeletCatalog> catalog, Coloring coloring, std::size_t n);

  unsigned k() const { return coloring_.k; }
  std::size_t vertex_count() const { return n_; }
  const Coloring& coloring() const { return coloring_; }
  const TreeletCatalog& catalog() const { return *catalog_; }
  std::shared_ptr<const TreeletCatalog> catalog_ptr() const { return catalog_; }
  const SubsetIndex& subsets() const { return subsets_; }

  std::span<const Count> row(TreeletId t, ColorSet s) const;
  std::span<Count> row(TreeletId t, ColorSet s);
  Count at(TreeletId t, ColorSet s, Vertex v) const { return row(t, s)[v]; }

  bool has_neighbor_sums() const { return !eta_.empty(); }
  std::span<const Count> eta(TreeletId t, ColorSet s) const;
  std::span<const Count> eta_low(TreeletId t, ColorSet s) const;
  std::span<const Count> eta_high(TreeletId t, ColorSet s) const;

  /// W = sum over order-k treelets T and vertices v of C(T, [k], v).
  Count total() const;

  /// alpha recorded in the table header; ~0 marks the naive projection.
  std::size_t alpha = 0;

  /// Dense tables only (neighbor sums are not compared).
  bool same_counts(const CounterSet& other) const;

 private:
  friend class CounterBuilder;
  friend CounterSet load_counters(std::istream&);

  std::shared_ptr<const TreeletCatalog> catalog_;
  Coloring coloring_;
  std::size_t n_;
  SubsetIndex subsets_;
  std::vector<std::vector<Count>> counts_;
  std::vector<std::vector<Count>> eta_;
  std::vector<std::vector<Count>> eta_low_;
  std::vector<std::vector<Count>> eta_high_;
};

inline constexpr std::size_t kNaiveAlpha = ~std::size_t{0};

/// Split-aware build: lower neighbor sums by enumeration on Gaif(H_low),
/// upper ones by inclusion-exclusion, with overlap correction.
CounterSet build_counters(const Hypergraph& h, const AlphaSplit& split, unsigned k,
                          const Coloring& coloring, const BuildOptions& options = {});

/// Baseline build on the full Gaifman projection.
CounterSet build_counters_naive(const Hypergraph& h, unsigned k, const Coloring& coloring,
                                const BuildOptions& options = {});

/// Recomputes the retained neighbor sums of a loaded table against a split.
void attach_neighbor_sums(CounterSet& counters, const AlphaSplit& split,
                          const BuildOptions& options = {});

/// Binary table: magic, version, k, alpha, seed, n, catalog digest, colors,
/// then each (treelet, color set) row as little-endian 128-bit words.
void save_counters(std::ostream& out, const CounterSet& counters);
CounterSet load_counters(std::istream& in);

}  // namespace hyperlet
