#include "hyperlet/split.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace hyperlet {

namespace {

constexpr std::size_t kMaxExactExponent = 63;

void finish_weighted(SplitCost& cost, long double upper_ld, double gamma) {
  cost.weighted = static_cast<long double>(gamma) * to_long_double(cost.lower_cost) +
                  (1.0L - static_cast<long double>(gamma)) * upper_ld;
}

// Capped rows lose to any uncapped row; otherwise compare weighted costs and
// break ties toward the smaller threshold (rows arrive in ascending alpha).
template <typename Row, typename CostOf>
std::size_t argmin_rows(const std::vector<Row>& rows, CostOf cost_of) {
  bool any_uncapped = false;
  for (const auto& r : rows) {
    any_uncapped |= !cost_of(r).capped;
  }
  std::size_t best = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SplitCost& c = cost_of(rows[i]);
    if (any_uncapped && c.capped) {
      continue;
    }
    if (best == rows.size() || c.weighted < cost_of(rows[best]).weighted) {
      best = i;
    }
  }
  return best;
}

}  // namespace

bool AlphaSplit::lower_adjacent(Vertex u, Vertex v) const { return lower_graph.adjacent(u, v); }

std::size_t AlphaSplit::shared_upper_edges(Vertex u, Vertex v) const {
  auto a = upper.incidence(u);
  auto b = upper.incidence(v);
  std::size_t shared = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

bool AlphaSplit::upper_adjacent(Vertex u, Vertex v) const {
  if (u == v) {
    return false;
  }
  auto a = upper.incidence(u);
  auto b = upper.incidence(v);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

std::vector<CurvePoint> alpha_beta_curve(const Hypergraph& h) {
  std::vector<CurvePoint> curve;
  curve.push_back({0, h.max_degree()});
  if (h.edge_count() == 0) {
    return curve;
  }

  std::vector<EdgeId> order(h.edge_count());
  for (EdgeId e = 0; e < order.size(); ++e) {
    order[e] = e;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return h.edge_size(a) < h.edge_size(b); });

  std::vector<std::size_t> degree(h.vertex_count());
  using Entry = std::pair<std::size_t, Vertex>;
  std::priority_queue<Entry> heap;
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    degree[v] = h.degree(v);
    heap.emplace(degree[v], v);
  }

  std::size_t i = 0;
  while (i < order.size()) {
    const std::size_t size = h.edge_size(order[i]);
    for (; i < order.size() && h.edge_size(order[i]) == size; ++i) {
      for (Vertex v : h.edge(order[i])) {
        --degree[v];
        heap.emplace(degree[v], v);
      }
    }
    // Lazy deletion: discard entries whose degree is stale.
    while (!heap.empty() && heap.top().first != degree[heap.top().second]) {
      heap.pop();
    }
    curve.push_back({size, heap.empty() ? 0 : heap.top().first});
  }
  return curve;
}

AlphaSplit apply_split(const Hypergraph& h, std::size_t alpha) {
  AlphaSplit split;
  split.alpha = alpha;
  std::vector<std::vector<Vertex>> lower_edges;
  std::vector<std::vector<Vertex>> upper_edges;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    auto members = h.edge(e);
    if (members.size() <= alpha) {
      lower_edges.emplace_back(members.begin(), members.end());
      split.lower_origin.push_back(e);
    } else {
      upper_edges.emplace_back(members.begin(), members.end());
      split.upper_origin.push_back(e);
    }
  }
  split.lower = Hypergraph(h.vertex_count(), std::move(lower_edges));
  split.upper = Hypergraph(h.vertex_count(), std::move(upper_edges));
  split.lower_graph = gaifman(split.lower);
  split.beta = split.upper.max_degree();
  return split;
}

SplitCost simple_cost(const Hypergraph& h, const CurvePoint& point) {
  SplitCost cost;
  const Count alpha = point.alpha;
  cost.lower_cost = checked_mul(checked_mul(alpha, alpha), h.edge_count());
  long double upper_ld = std::ldexp(static_cast<long double>(h.vertex_count()),
                                    static_cast<int>(point.beta));
  if (point.beta > kMaxExactExponent) {
    cost.capped = true;
  } else {
    cost.upper_cost = checked_mul(Count{1} << point.beta, h.vertex_count());
  }
  cost.weighted = to_long_double(cost.lower_cost) + upper_ld;
  return cost;
}

SplitCost threshold_cost(const Hypergraph& h, std::size_t alpha, double gamma) {
  SplitCost cost;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const Count s = h.edge_size(e);
    if (s <= alpha) {
      cost.lower_cost = checked_add(cost.lower_cost, s * s);
    }
  }
  long double upper_ld = 0;
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    std::size_t d = 0;
    for (EdgeId e : h.incidence(v)) {
      d += h.edge_size(e) > alpha ? 1 : 0;
    }
    upper_ld += std::ldexp(1.0L, static_cast<int>(d));
    if (d > kMaxExactExponent) {
      cost.capped = true;
    } else {
      cost.upper_cost = checked_add(cost.upper_cost, Count{1} << d);
    }
  }
  finish_weighted(cost, upper_ld, gamma);
  return cost;
}

SplitChoice choose_split_simple(const Hypergraph& h) {
  const auto curve = alpha_beta_curve(h);
  std::vector<SplitCost> costs;
  costs.reserve(curve.size());
  for (const auto& p : curve) {
    costs.push_back(simple_cost(h, p));
  }
  const std::size_t best = argmin_rows(costs, [](const SplitCost& c) -> const SplitCost& { return c; });
  return {apply_split(h, curve[best].alpha), costs[best]};
}

std::vector<ThresholdRow> refined_sweep(const Hypergraph& h, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
  const std::size_t n = h.vertex_count();
  const std::size_t m = h.edge_count();
  const std::size_t rank = h.rank();

  // Edges bucketed by size, largest first (counting sort).
  std::vector<std::size_t> size_count(rank + 2, 0);
  for (EdgeId e = 0; e < m; ++e) {
    ++size_count[h.edge_size(e)];
  }
  std::vector<EdgeId> by_size_desc;
  by_size_desc.reserve(m);
  {
    std::vector<std::size_t> start(rank + 2, 0);
    for (std::size_t s = rank; s >= 1; --s) {
      start[s - 1] = start[s] + size_count[s];
    }
    // start[s] now counts edges strictly larger than s.
    by_size_desc.resize(m);
    std::vector<std::size_t> cursor(rank + 1);
    for (std::size_t s = 1; s <= rank; ++s) {
      cursor[s] = start[s];
    }
    for (EdgeId e = 0; e < m; ++e) {
      by_size_desc[cursor[h.edge_size(e)]++] = e;
    }
  }

  // I_v: incident edges in non-increasing size; the position of each
  // incidence is its index in I_v.
  std::vector<std::size_t> fill(n, 0);
  struct Triple {
    Vertex v;
    std::size_t size;
    std::size_t pos;
  };
  std::vector<Triple> triples;
  triples.reserve(h.size() - n);
  for (EdgeId e : by_size_desc) {
    for (Vertex v : h.edge(e)) {
      triples.push_back({v, h.edge_size(e), fill[v]++});
    }
  }
  // Sort by size descending, then position descending: counting sort on
  // position (descending) followed by a stable counting sort on size.
  {
    const std::size_t max_pos = h.max_degree();
    std::vector<std::size_t> bucket(max_pos + 2, 0);
    for (const auto& t : triples) {
      ++bucket[max_pos - t.pos + 1];
    }
    for (std::size_t i = 1; i < bucket.size(); ++i) {
      bucket[i] += bucket[i - 1];
    }
    std::vector<Triple> tmp(triples.size());
    for (const auto& t : triples) {
      tmp[bucket[max_pos - t.pos]++] = t;
    }
    std::vector<std::size_t> sb(rank + 2, 0);
    for (const auto& t : tmp) {
      ++sb[rank - t.size + 1];
    }
    for (std::size_t i = 1; i < sb.size(); ++i) {
      sb[i] += sb[i - 1];
    }
    for (const auto& t : tmp) {
      triples[sb[rank - t.size]++] = t;
    }
  }

  Count lower = 0;
  for (EdgeId e = 0; e < m; ++e) {
    const Count s = h.edge_size(e);
    lower = checked_add(lower, s * s);
  }
  std::vector<std::size_t> degree(n, 0);
  Count upper = n;
  long double upper_ld = static_cast<long double>(n);
  std::size_t capped_vertices = 0;
  std::size_t beta = 0;

  auto emit = [&](std::size_t alpha) {
    ThresholdRow row;
    row.alpha = alpha;
    row.beta = beta;
    row.cost.lower_cost = lower;
    row.cost.upper_cost = upper;
    row.cost.capped = capped_vertices > 0;
    finish_weighted(row.cost, upper_ld, gamma);
    return row;
  };

  std::vector<ThresholdRow> rows;
  std::size_t i = 0;
  while (i < triples.size()) {
    const std::size_t size = triples[i].size;
    rows.push_back(emit(size));
    // Drop to the next smaller threshold: every edge of this size moves up.
    lower = checked_sub(lower, checked_mul(size_count[size], Count{size} * size));
    for (; i < triples.size() && triples[i].size == size; ++i) {
      const auto& t = triples[i];
      const std::size_t new_degree = t.pos + 1;
      if (new_degree <= degree[t.v]) {
        continue;  // not the first triple of v in this block
      }
      const std::size_t old_degree = degree[t.v];
      degree[t.v] = new_degree;
      upper_ld += std::ldexp(1.0L, static_cast<int>(new_degree)) -
                  std::ldexp(1.0L, static_cast<int>(old_degree));
      if (old_degree > kMaxExactExponent) {
        --capped_vertices;
      } else {
        upper -= Count{1} << old_degree;
      }
      if (new_degree > kMaxExactExponent) {
        ++capped_vertices;
      } else {
        upper = checked_add(upper, Count{1} << new_degree);
      }
      beta = std::max(beta, new_degree);
    }
  }
  rows.push_back(emit(0));
  std::reverse(rows.begin(), rows.end());
  return rows;
}

SplitChoice choose_split_refined(const Hypergraph& h, double gamma) {
  const auto rows = refined_sweep(h, gamma);
  const std::size_t best =
      argmin_rows(rows, [](const ThresholdRow& r) -> const SplitCost& { return r.cost; });
  AlphaSplit split = apply_split(h, rows[best].alpha);
  return {std::move(split), rows[best].cost};
}

}  // namespace hyperlet
