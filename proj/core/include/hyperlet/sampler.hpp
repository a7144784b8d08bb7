#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperlet/alias.hpp"
#include "hyperlet/canon.hpp"
#include "hyperlet/counters.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/random.hpp"
#include "hyperlet/split.hpp"

namespace hyperlet {

class NoColorfulOccurrences : public std::runtime_error {
 public:
  NoColorfulOccurrences() : std::runtime_error("no colorful occurrences") {}
};

struct NeighborDraw {
  ColorSet rest_colors = 0;  // S1, kept by the root side
  ColorSet sub_colors = 0;   // S2, carried by the neighbor
  Vertex u = 0;
};

/**
 * Samplers over a built CounterSet. Holds references: the counter table
 * (with neighbor sums) and the split must outlive it.
 *
 * Tables: the root table over (T, v) with weight C(T, [k], v); and for each
 * (T2, S2) with nonzero weight, one table per vertex over N_low(v), one per
 * upper edge over its members, and one per vertex over E_high(v) weighted
 * by edge totals. Color partitions are drawn on demand; their support has
 * at most C(k-1, |T1|-1) entries.
 */
class Generators {
 public:
  /// Throws NoColorfulOccurrences when W = 0.
  Generators(const CounterSet& counters, const AlphaSplit& split);

  const CounterSet& counters() const { return *cs_; }
  const AlphaSplit& split() const { return *split_; }
  unsigned k() const { return cs_->k(); }
  Count root_weight() const { return root_weight_; }

  std::pair<TreeletId, Vertex> draw_root(Rng& rng) const;

  /// (S1, S2) for C(T, S, v) proportional to C(T1, S1, v) * eta(T2, S2, v).
  std::pair<ColorSet, ColorSet> draw_partition(TreeletId t, ColorSet s, Vertex v,
                                               Rng& rng) const;

  /// u in N(v) with probability C(T2, S2, u) / sum over N(v); two-branch
  /// rejection over the lower neighbors and the upper edges of v.
  Vertex draw_neighbor(TreeletId t2, ColorSet s2, Vertex v, Rng& rng) const;

  /// Partition draw followed by draw_neighbor for the sub-treelet of T.
  NeighborDraw sample_neigh(TreeletId t, ColorSet s, Vertex v, Rng& rng) const;

  std::size_t table_entries() const { return pool_.entry_count(); }

 private:
  struct Family {
    std::vector<AliasPool::TableId> lower;         // per vertex
    std::vector<AliasPool::TableId> edge_members;  // per upper edge
    std::vector<AliasPool::TableId> vertex_edges;  // per vertex
  };

  const Family* family(TreeletId t2, ColorSet s2) const;

  const CounterSet* cs_;
  const AlphaSplit* split_;
  AliasPool pool_;
  AliasPool::TableId root_table_ = AliasPool::kNone;
  Count root_weight_ = 0;
  std::vector<TreeletId> top_treelets_;
  std::vector<std::size_t> family_offset_;  // per treelet, into families_
  std::vector<Family> families_;
  std::vector<std::uint8_t> family_present_;
};

struct SampleOutcome {
  std::vector<Vertex> vertices;  // sorted
  std::vector<std::pair<Vertex, Vertex>> tree_edges;
  Count sigma = 0;
  Hypergraphlet hypergraphlet;
  HypergraphletKey key;
};

/// A colorful k-treelet copy; P(vertex set U) is proportional to sigma(U).
/// Fills vertices and tree_edges only.
SampleOutcome sample_treelet(const Generators& gen, Rng& rng);

/// H|_U from the two parts by per-vertex incidence intersection.
Hypergraphlet extract_hypergraphlet(const AlphaSplit& split, std::span<const Vertex> subset);

/**
 * Same result through subset counters: N[X] = #lower edges containing X for
 * every X of size <= k inside a lower edge, so N*(X, U), the number of lower
 * edges with e ∩ U = X, follows by Möbius inversion over subsets of U. Upper
 * edges come from the union of the types of U.
 */
class SubsetExtractor {
 public:
  SubsetExtractor(const AlphaSplit& split, unsigned k,
                  std::uint64_t budget = kDefaultEnumerationBudget);
  Hypergraphlet extract(std::span<const Vertex> subset) const;

 private:
  struct TupleHash {
    std::size_t operator()(const std::vector<Vertex>& t) const;
  };
  const AlphaSplit* split_;
  unsigned k_;
  std::unordered_map<std::vector<Vertex>, std::uint32_t, TupleHash> containing_;
};

/// Adjacency rows of Gaif(H) restricted to U (sorted), from the split.
std::vector<std::uint32_t> local_adjacency(const AlphaSplit& split, std::span<const Vertex> subset);

/// Kirchhoff: determinant of a Laplacian minor, fraction-free. Throws
/// std::invalid_argument if the graph is disconnected.
Count spanning_tree_count(std::span<const std::uint32_t> rows);

struct EstimateOptions {
  std::uint64_t samples = 1;
  unsigned threads = 1;
  bool uniform = false;
  bool ie_extract = false;
  bool keep_log = false;
};

struct TypeEstimate {
  HypergraphletKey key;
  std::uint64_t samples = 0;                 // accepted samples of this type
  std::map<Count, std::uint64_t> sigma_hist; // sigma -> draws, exact
  long double inv_sigma_sum = 0;
  long double colorful_estimate = 0;
  long double relative_frequency = 0;
  long double total_estimate = 0;  // colorful_estimate / p_k
};

struct LogEntry {
  HypergraphletKey key;
  Count sigma = 0;
  bool accepted = true;
};

struct EstimateResult {
  unsigned k = 0;
  Count root_weight = 0;
  std::uint64_t samples = 0;  // K
  std::uint64_t draws = 0;    // raw treelet draws (== K in weighted mode)
  bool uniform = false;
  long double colorful_probability = 0;  // k! / k^k
  std::vector<TypeEstimate> types;       // ascending key
  std::vector<LogEntry> log;
};

/// k! / k^k.
long double colorful_probability(unsigned k);

/**
 * Weighted mode: every draw adds 1/sigma to its type; c_i = W/(k K) * sum.
 * Uniform mode: a draw is kept with probability 1/sigma until K are kept;
 * c_i = W/(k D) * kept_i over D raw draws. Worker t uses sampling stream t.
 */
EstimateResult estimate_counts(const Generators& gen, const EstimateOptions& options,
                               std::uint64_t seed);

/// The estimate for a table with W = 0: no types, zero draws.
EstimateResult empty_estimate(unsigned k, const EstimateOptions& options);

}  // namespace hyperlet
