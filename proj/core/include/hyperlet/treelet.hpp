#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hyperlet {

using TreeletId = std::uint32_t;

/**
 * A rooted unlabeled tree. `code` is the canonical parenthesis string: each
 * node is "(" + its children's codes sorted lexicographically + ")".
 *
 * `parent` is the tree laid out in preorder of the canonical ordering, with
 * node 0 the root (parent[0] is unused).
 */
struct Treelet {
  unsigned order = 0;
  std::string code;
  std::vector<unsigned> parent;

  // Canonical decomposition (order >= 2): `sub` is the root-child subtree
  // with the smallest code, `rest` is the tree minus that subtree, and
  // `multiplicity` counts the root children whose subtree has that code.
  TreeletId rest = 0;
  TreeletId sub = 0;
  unsigned multiplicity = 0;
};

/// Canonical code of a rooted tree given as a parent array (root has parent
/// equal to itself or any value; only entries 1..n-1 matter when root is 0).
std::string canonical_code(const std::vector<std::vector<unsigned>>& children, unsigned root);

/// Canonical code of the tree given by an undirected edge list, rooted at `root`.
std::string rooted_code(unsigned order, const std::vector<std::pair<unsigned, unsigned>>& edges,
                        unsigned root);

/// Attaches `sub` as a new child of the root of `rest` and canonicalizes.
std::string merge_codes(const std::string& rest, const std::string& sub);

/// Children codes of the root, in canonical (sorted) order.
std::vector<std::string> root_child_codes(const std::string& code);

/**
 * All rooted treelets of order 1..k, sorted by (order, code), together with
 * their canonical decompositions. Immutable once built.
 */
class TreeletCatalog {
 public:
  inline static constexpr unsigned kMaxOrder = 16;

  explicit TreeletCatalog(unsigned k);

  unsigned max_order() const { return k_; }
  std::size_t size() const { return treelets_.size(); }
  const Treelet& operator[](TreeletId id) const { return treelets_[id]; }
  const std::vector<Treelet>& treelets() const { return treelets_; }

  /// Ids of treelets with the given order, contiguous and ascending.
  std::vector<TreeletId> of_order(unsigned order) const;
  TreeletId single_vertex() const { return 0; }
  /// Lookup by canonical code; throws std::out_of_range.
  TreeletId find(const std::string& code) const;

  /// One canonical code per line; used to version table files.
  std::string dump() const;
  std::uint64_t digest() const;

 private:
  unsigned k_;
  std::vector<Treelet> treelets_;
  std::vector<std::size_t> order_begin_;
};

/// The star K_{1,h-1} rooted at its center, and the path rooted at an end.
std::string star_code(unsigned order);
std::string path_code(unsigned order);

}  // namespace hyperlet
