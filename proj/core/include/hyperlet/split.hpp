#pragma once

#include <cstddef>
#include <vector>

#include "hyperlet/count.hpp"
#include "hyperlet/hypergraph.hpp"

namespace hyperlet {

/**
 * The alpha-split of a hypergraph: edges of size <= alpha go to `lower`,
 * the others to `upper`. Both parts keep the full vertex set.
 *
 * `lower_graph` is the Gaifman projection of the lower part, giving sorted
 * N_low(v). The sorted types E_high(v) are `upper.incidence(v)`; edge ids in
 * both parts are local to the part. `lower_origin`/`upper_origin` map them
 * back to edge ids of the source hypergraph.
 */
struct AlphaSplit {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  Hypergraph lower;
  Hypergraph upper;
  Graph lower_graph;
  std::vector<EdgeId> lower_origin;
  std::vector<EdgeId> upper_origin;

  std::size_t vertex_count() const { return lower.vertex_count(); }

  /// u in N_low(v), by binary search.
  bool lower_adjacent(Vertex u, Vertex v) const;
  /// |E_high(u) ∩ E_high(v)|, by sorted merge.
  std::size_t shared_upper_edges(Vertex u, Vertex v) const;
  bool upper_adjacent(Vertex u, Vertex v) const;
};

/// Cost model for one threshold. 2^d terms with d > 63 mark the cost capped.
struct SplitCost {
  Count lower_cost = 0;  // sum over lower edges of |e|^2
  Count upper_cost = 0;  // sum over vertices of 2^{d_high(v)}
  bool capped = false;
  long double weighted = 0;
};

struct CurvePoint {
  std::size_t alpha = 0;
  std::size_t beta = 0;
};

inline constexpr double kDefaultGamma = 0.01;

/// One (alpha, beta) pair per threshold in {0} ∪ {distinct edge sizes},
/// computed by the degree-decrement max-heap sweep.
std::vector<CurvePoint> alpha_beta_curve(const Hypergraph& h);

AlphaSplit apply_split(const Hypergraph& h, std::size_t alpha);

/// alpha^2 |E| + 2^beta |V|, the coarse objective.
SplitCost simple_cost(const Hypergraph& h, const CurvePoint& point);

/// Exact lower/upper costs at one threshold, recomputed from scratch.
SplitCost threshold_cost(const Hypergraph& h, std::size_t alpha, double gamma);

struct SplitChoice {
  AlphaSplit split;
  SplitCost cost;
};

/// Minimizes alpha^2 |E| + 2^beta |V| over the curve; ties go to smaller alpha.
SplitChoice choose_split_simple(const Hypergraph& h);

/// One row of the refined sweep: a threshold and its costs.
struct ThresholdRow {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  SplitCost cost;
};

/// Counting-sort sweep over (vertex, size, position) incidence triples,
/// from the largest threshold down. Rows are returned in ascending alpha.
std::vector<ThresholdRow> refined_sweep(const Hypergraph& h, double gamma);

/// Minimizes gamma * lower + (1 - gamma) * upper. Throws on gamma outside [0,1].
SplitChoice choose_split_refined(const Hypergraph& h, double gamma = kDefaultGamma);

}  // namespace hyperlet
