#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperlet/budget.hpp"
#include "hyperlet/count.hpp"
#include "hyperlet/hypergraph.hpp"

namespace hyperlet {

/**
 * Clique to k-SH gadget. With b = C(k,2): vertex v of G becomes the block
 * Q_v = {v*b, ..., v*b + b - 1}; edge e = {u,v} (in Graph::edge_pairs order)
 * becomes the singleton c_e = n*b + e and the hyperedge Q_u ∪ Q_v ∪ {c_e}.
 * Target size k' = (k+1) * b.
 */
struct CliqueReduction {
  struct EdgeImage {
    Vertex u = 0;
    Vertex v = 0;
    Vertex singleton = 0;
    EdgeId hyperedge = 0;
  };

  Hypergraph hypergraph;
  unsigned k = 0;
  std::size_t k_prime = 0;
  std::size_t block_size = 0;
  std::vector<std::vector<Vertex>> block_map;  // per graph vertex
  std::vector<EdgeImage> edge_map;             // per graph edge
};

/// Throws std::invalid_argument for k < 3.
CliqueReduction reduce_clique_to_ksh(const Graph& g, unsigned k);

enum class KshMethod {
  kAuto,        // edge unions; subsets if that overruns and C(n,k) fits
  kSubsets,     // every k-subset, section connectivity check
  kEdgeUnions,  // connected unions of edges grown one edge at a time
};

struct KshResult {
  bool found = false;
  std::vector<Vertex> witness;  // sorted, when found
  std::uint64_t examined = 0;
};

inline constexpr std::uint64_t kDefaultKshBudget = 10'000'000;

/// Is there U with |U| = k and H<U> connected? Throws BudgetError past the
/// budget (candidate subsets, or distinct unions for the edge-union search).
KshResult decide_ksh_bruteforce(const Hypergraph& h, std::size_t k,
                                KshMethod method = KshMethod::kAuto,
                                std::uint64_t budget = kDefaultKshBudget);

/// Blocks fully inside a witness (T) and singletons inside it (S).
struct CliqueWitness {
  std::vector<Vertex> blocks;
  std::vector<std::size_t> edges;
  bool blocks_whole = true;   // every block met is contained entirely
  bool accounting = false;    // |T| * b + |S| == k'
  bool is_clique = false;     // |T| == k and T is a clique of G
};

CliqueWitness read_witness(const CliqueReduction& r, const Graph& g,
                           const std::vector<Vertex>& witness);

bool has_clique(const Graph& g, unsigned k);

struct OVInstance {
  std::vector<std::vector<std::uint8_t>> vectors;
  std::size_t dimension() const { return vectors.empty() ? 0 : vectors.front().size(); }
};

struct OVResult {
  bool orthogonal_pair = false;
  Hypergraph hypergraph;
  std::vector<std::size_t> neighbor_counts;
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // when found
};

/// Vertices = vectors, one edge per dimension over the vectors with a 1 there.
/// YES iff some |N(v)| < n - 1. Throws std::invalid_argument on ragged input
/// or n < 2.
OVResult solve_ov_via_nc(const OVInstance& inst);

/// O(n^2 d) reference.
bool ov_pairwise(const OVInstance& inst);

/// V x [k] with (v, c) -> v*k + c and every edge replaced by all its copies.
Hypergraph blow_up(const Hypergraph& h, unsigned k);

/// C(K_{1,k-1}, [k], (v, 0)) on blow_up(h, k) with (v, c) colored c, for
/// every v of h, from a split build of the counters.
std::vector<Count> blown_up_star_counts(const Hypergraph& h, unsigned k);

/// Edge sizes s >= 2 with P(s) proportional to s^-exponent (capped at
/// max_size), members uniform without replacement; duplicate edges redrawn.
Hypergraph powerlaw_hypergraph(std::size_t n, std::size_t m, double exponent,
                               std::size_t max_size, std::uint64_t seed);

/**
 * Small edges (fraction small_fraction of m) with sizes uniform in
 * [2, alpha]; the rest have size large_size > alpha and draw members only
 * among vertices whose upper degree is still below beta.
 */
struct ControlledParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t alpha = 4;
  std::size_t beta = 2;
  std::size_t large_size = 16;
  double small_fraction = 0.9;
};
Hypergraph controlled_hypergraph(const ControlledParams& params, std::uint64_t seed);

}  // namespace hyperlet
