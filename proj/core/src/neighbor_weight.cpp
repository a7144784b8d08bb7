#include "hyperlet/neighbor_weight.hpp"

#include <bit>
#include <string>
#include <unordered_map>

namespace hyperlet {

WeightVector nw_naive(const Graph& g, std::span<const Count> w) {
  WeightVector eta(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    Count sum = 0;
    for (Vertex u : g.neighbors(v)) {
      sum = checked_add(sum, w[u], "neighbor weight");
    }
    eta[v] = sum;
  }
  return eta;
}

InclusionExclusionNW::InclusionExclusionNW(const Hypergraph& h, std::size_t degree_cap)
    : vertex_count_(h.vertex_count()) {
  if (h.max_degree() > degree_cap) {
    throw DegreeCapError("upper-part degree " + std::to_string(h.max_degree()) +
                         " exceeds the inclusion-exclusion cap " + std::to_string(degree_cap) +
                         "; choose a larger alpha so fewer edges fall in the upper part");
  }
  offsets_.assign(vertex_count_ + 1, 0);
  for (Vertex v = 0; v < vertex_count_; ++v) {
    const std::size_t d = h.degree(v);
    offsets_[v + 1] = offsets_[v] + (d == 0 ? 0 : (std::size_t{1} << d) - 1);
  }
  slots_.resize(offsets_.back());

  // Trie over sorted edge tuples: child of (node, edge) keyed as one 64-bit
  // word. Node 0 is the empty tuple.
  std::unordered_map<std::uint64_t, std::uint32_t> children;
  children.reserve(offsets_.back());
  std::uint32_t next_node = 1;
  std::vector<std::uint32_t> node_of_mask;
  for (Vertex v = 0; v < vertex_count_; ++v) {
    auto type = h.incidence(v);
    const std::size_t d = type.size();
    if (d == 0) {
      continue;
    }
    node_of_mask.assign(std::size_t{1} << d, 0);
    for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
      const unsigned top = 31u - static_cast<unsigned>(std::countl_zero(mask));
      const std::uint32_t prefix = node_of_mask[mask & ~(1u << top)];
      const std::uint64_t key = (std::uint64_t{prefix} << 32) | type[top];
      auto [it, inserted] = children.try_emplace(key, next_node);
      if (inserted) {
        ++next_node;
      }
      node_of_mask[mask] = it->second;
      slots_[offsets_[v] + mask - 1] = it->second;
    }
  }
  node_count_ = next_node;
}

WeightVector InclusionExclusionNW::compute(std::span<const Count> w, unsigned threads) const {
  std::vector<Count> table(node_count_, 0);
  for (Vertex v = 0; v < vertex_count_; ++v) {
    if (w[v] == 0) {
      continue;
    }
    for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
      auto& cell = table[slots_[i]];
      cell = checked_add(cell, w[v], "inclusion-exclusion table");
    }
  }
  WeightVector eta(vertex_count_, 0);
  parallel_for(vertex_count_, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const std::size_t count = offsets_[v + 1] - offsets_[v];
      if (count == 0) {
        continue;
      }
      // Positive and negative terms are summed separately so every partial
      // result stays unsigned and overflow-checked.
      Count plus = 0;
      Count minus = 0;
      for (std::uint32_t mask = 1; mask <= count; ++mask) {
        const Count t = table[slots_[offsets_[v] + mask - 1]];
        if (std::popcount(mask) % 2 == 1) {
          plus = checked_add(plus, t, "inclusion-exclusion sum");
        } else {
          minus = checked_add(minus, t, "inclusion-exclusion sum");
        }
      }
      eta[v] = checked_sub(checked_sub(plus, minus, "inclusion-exclusion sum"), w[v],
                           "inclusion-exclusion sum");
    }
  });
  return eta;
}

WeightVector nw_ie(const Hypergraph& h, std::span<const Count> w, std::size_t degree_cap) {
  return InclusionExclusionNW(h, degree_cap).compute(w);
}

SplitNeighborWeights::SplitNeighborWeights(const AlphaSplit& split, std::size_t degree_cap)
    : split_(&split), upper_(split.upper, degree_cap) {
  const std::size_t n = split.vertex_count();
  overlap_offsets_.assign(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (split.upper.degree(v) != 0) {
      for (Vertex u : split.lower_graph.neighbors(v)) {
        if (split.upper_adjacent(u, v)) {
          overlap_.push_back(u);
        }
      }
    }
    overlap_offsets_[v + 1] = overlap_.size();
  }
}

NeighborSums SplitNeighborWeights::compute(std::span<const Count> w, unsigned threads) const {
  NeighborSums out;
  out.high = upper_.compute(w, threads);
  const auto& g = split_->lower_graph;
  const std::size_t n = g.vertex_count();
  out.low.assign(n, 0);
  out.eta.assign(n, 0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      Count low = 0;
      for (Vertex u : g.neighbors(static_cast<Vertex>(v))) {
        low = checked_add(low, w[u], "neighbor weight");
      }
      out.low[v] = low;
      Count eta = checked_add(low, out.high[v], "neighbor weight");
      for (std::size_t i = overlap_offsets_[v]; i < overlap_offsets_[v + 1]; ++i) {
        eta = checked_sub(eta, w[overlap_[i]], "overlap correction");
      }
      out.eta[v] = eta;
    }
  });
  return out;
}

NeighborSums combined_neighbor_weight(const AlphaSplit& split, std::span<const Count> w,
                                      std::size_t degree_cap) {
  return SplitNeighborWeights(split, degree_cap).compute(w);
}

}  // namespace hyperlet
