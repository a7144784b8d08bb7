#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperlet/budget.hpp"
#include "hyperlet/count.hpp"
#include "hyperlet/counters.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/treelet.hpp"

namespace hyperlet {

/**
 * Canonical form of a hypergraphlet: the order and the lexicographically
 * smallest ascending edge-mask sequence over all relabelings that list
 * vertices in ascending order of their invariant (degree, sorted edge sizes).
 */
struct HypergraphletKey {
  unsigned order = 0;
  std::vector<std::uint32_t> edges;

  auto operator<=>(const HypergraphletKey&) const = default;
  bool operator==(const HypergraphletKey&) const = default;
};

struct HypergraphletKeyHash {
  std::size_t operator()(const HypergraphletKey& key) const;
};

/// "order:mask.mask..." with hex masks, e.g. "3:3.6".
std::string to_string(const HypergraphletKey& key);
HypergraphletKey parse_key(const std::string& text);

inline constexpr unsigned kMaxKeyOrder = 8;

/// Throws std::invalid_argument above kMaxKeyOrder.
HypergraphletKey canonical_key(const Hypergraphlet& hg);

/// Memoizes canonical_key on the raw (order, masks) form. Not thread-safe;
/// use one per worker.
class KeyCache {
 public:
  const HypergraphletKey& get(const Hypergraphlet& hg);
  std::size_t size() const { return cache_.size(); }

 private:
  std::unordered_map<HypergraphletKey, HypergraphletKey, HypergraphletKeyHash> cache_;
};

using CountTable = std::map<HypergraphletKey, Count>;

inline constexpr std::uint64_t kDefaultEnumerationBudget = 200'000'000;

/// Visits every connected k-subset of g exactly once (sorted ascending), by
/// extension-set growth from the smallest member. Throws BudgetError after
/// `budget` sets.
void for_each_connected_set(const Graph& g, unsigned k, std::uint64_t budget,
                            const std::function<void(std::span<const Vertex>)>& visit);

/// #ind(H, H_i) for every realized connected k-vertex type.
CountTable exact_counts(const Hypergraph& h, unsigned k,
                        std::uint64_t budget = kDefaultEnumerationBudget);

/// As exact_counts, restricted to sets whose k colors are pairwise distinct.
CountTable exact_colorful_counts(const Hypergraph& h, const Coloring& coloring, unsigned k,
                                 std::uint64_t budget = kDefaultEnumerationBudget);

/// Trees of Gaif(H) isomorphic to `treelet`, rooted at v, whose vertex colors
/// are exactly `colors` (one vertex per color). Exhaustive; n <= 20.
Count brute_rooted_colorful_treelets(const Hypergraph& h, const Coloring& coloring,
                                     const Treelet& treelet, ColorSet colors, Vertex v);

/// Spanning trees of the graph with adjacency rows `rows` (bit j of rows[i]
/// set iff i ~ j), by filtering all (order - 1)-edge subsets. order <= 8.
Count brute_spanning_trees(std::span<const std::uint32_t> rows);

}  // namespace hyperlet
