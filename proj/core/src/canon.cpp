#include "hyperlet/canon.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hyperlet {

std::size_t HypergraphletKeyHash::operator()(const HypergraphletKey& key) const {
  std::uint64_t h = 0xcbf29ce484222325ull ^ key.order;
  for (std::uint32_t m : key.edges) {
    h = (h ^ m) * 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

std::string to_string(const HypergraphletKey& key) {
  std::ostringstream os;
  os << key.order << ':' << std::hex;
  for (std::size_t i = 0; i < key.edges.size(); ++i) {
    if (i != 0) {
      os << '.';
    }
    os << key.edges[i];
  }
  return os.str();
}

HypergraphletKey parse_key(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0) {
    throw std::invalid_argument("malformed hypergraphlet key: " + text);
  }
  HypergraphletKey key;
  try {
    std::size_t used = 0;
    key.order = static_cast<unsigned>(std::stoul(text.substr(0, colon), &used));
    if (used != colon) {
      throw std::invalid_argument("order");
    }
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto dot = rest.find('.', pos);
      if (dot == std::string::npos) {
        dot = rest.size();
      }
      const std::string part = rest.substr(pos, dot - pos);
      key.edges.push_back(static_cast<std::uint32_t>(std::stoul(part, &used, 16)));
      if (used != part.size()) {
        throw std::invalid_argument("mask");
      }
      pos = dot + 1;
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed hypergraphlet key: " + text);
  }
  return key;
}

namespace {

// Rank vertices by an isomorphism-invariant label: start from the edge
// sizes through each vertex and refine with the ranks of co-members until
// the partition stops splitting.
std::vector<unsigned> invariant_ranks(unsigned order, const std::vector<std::uint32_t>& edges) {
  using Label = std::vector<std::vector<unsigned>>;
  std::vector<Label> labels(order);
  for (unsigned v = 0; v < order; ++v) {
    std::vector<unsigned> sizes;
    for (std::uint32_t e : edges) {
      if (e >> v & 1u) {
        sizes.push_back(static_cast<unsigned>(std::popcount(e)));
      }
    }
    std::sort(sizes.begin(), sizes.end());
    labels[v] = {{static_cast<unsigned>(sizes.size())}, sizes};
  }
  auto rank_of = [&](const std::vector<Label>& lab) {
    std::vector<Label> distinct = lab;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<unsigned> ranks(order);
    for (unsigned v = 0; v < order; ++v) {
      ranks[v] = static_cast<unsigned>(
          std::lower_bound(distinct.begin(), distinct.end(), lab[v]) - distinct.begin());
    }
    return std::pair{ranks, distinct.size()};
  };
  auto [ranks, classes] = rank_of(labels);
  for (;;) {
    for (unsigned v = 0; v < order; ++v) {
      Label lab{{ranks[v]}};
      for (std::uint32_t e : edges) {
        if (e >> v & 1u) {
          std::vector<unsigned> sig;
          for (unsigned u = 0; u < order; ++u) {
            if (u != v && (e >> u & 1u)) {
              sig.push_back(ranks[u]);
            }
          }
          std::sort(sig.begin(), sig.end());
          lab.push_back(std::move(sig));
        }
      }
      std::sort(lab.begin() + 1, lab.end());
      labels[v] = std::move(lab);
    }
    auto [next, next_classes] = rank_of(labels);
    ranks = std::move(next);
    if (next_classes == classes) {
      break;
    }
    classes = next_classes;
  }
  return ranks;
}

}  // namespace

HypergraphletKey canonical_key(const Hypergraphlet& hg) {
  if (hg.order > kMaxKeyOrder) {
    throw std::invalid_argument("canonical keys support at most " + std::to_string(kMaxKeyOrder) +
                                " vertices");
  }
  const unsigned k = hg.order;
  const std::vector<unsigned> rank = invariant_ranks(k, hg.edges);

  // Vertices in ascending rank; labels are positions in this list, and only
  // reorderings inside a block of equal rank are tried.
  std::vector<unsigned> slots(k);
  std::iota(slots.begin(), slots.end(), 0u);
  std::sort(slots.begin(), slots.end(),
            [&](unsigned a, unsigned b) { return std::tie(rank[a], a) < std::tie(rank[b], b); });
  std::vector<std::pair<unsigned, unsigned>> blocks;  // [begin, end)
  for (unsigned i = 0; i < k;) {
    unsigned j = i;
    while (j < k && rank[slots[j]] == rank[slots[i]]) {
      ++j;
    }
    blocks.emplace_back(i, j);
    i = j;
  }

  HypergraphletKey best;
  best.order = k;
  bool have = false;
  std::vector<unsigned> label(k);
  std::vector<std::uint32_t> mapped(hg.edges.size());
  for (;;) {
    for (unsigned p = 0; p < k; ++p) {
      label[slots[p]] = p;
    }
    for (std::size_t i = 0; i < hg.edges.size(); ++i) {
      std::uint32_t m = 0;
      for (std::uint32_t e = hg.edges[i]; e != 0; e &= e - 1) {
        m |= 1u << label[std::countr_zero(e)];
      }
      mapped[i] = m;
    }
    std::sort(mapped.begin(), mapped.end());
    if (!have || mapped < best.edges) {
      best.edges = mapped;
      have = true;
    }
    // Odometer over the per-block permutations.
    std::size_t b = blocks.size();
    while (b > 0) {
      --b;
      auto [lo, hi] = blocks[b];
      if (std::next_permutation(slots.begin() + lo, slots.begin() + hi)) {
        break;
      }
      if (b == 0) {
        return best;
      }
    }
    if (blocks.empty()) {
      return best;
    }
  }
}

const HypergraphletKey& KeyCache::get(const Hypergraphlet& hg) {
  HypergraphletKey raw{hg.order, hg.edges};
  auto it = cache_.find(raw);
  if (it == cache_.end()) {
    HypergraphletKey key = canonical_key(hg);
    it = cache_.emplace(std::move(raw), std::move(key)).first;
  }
  return it->second;
}

namespace {

class ConnectedSetEnumerator {
 public:
  ConnectedSetEnumerator(const Graph& g, unsigned k, std::uint64_t budget,
                         const std::function<void(std::span<const Vertex>)>& visit)
      : g_(g), k_(k), budget_(budget), visit_(visit), blocked_(g.vertex_count(), 0) {}

  void run() {
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      sub_.assign(1, v);
      mark(v, 1);
      std::vector<Vertex> ext;
      for (Vertex u : g_.neighbors(v)) {
        if (u > v) {
          ext.push_back(u);
        }
      }
      extend(std::move(ext), v);
      mark(v, -1);
    }
  }

 private:
  void mark(Vertex w, int delta) {
    blocked_[w] += delta;
    for (Vertex u : g_.neighbors(w)) {
      blocked_[u] += delta;
    }
  }

  void extend(std::vector<Vertex> ext, Vertex root) {
    if (sub_.size() == k_) {
      if (++visited_ > budget_) {
        throw BudgetError("more than " + std::to_string(budget_) +
                          " connected vertex sets; raise HM_BUDGET to continue");
      }
      sorted_ = sub_;
      std::sort(sorted_.begin(), sorted_.end());
      visit_(sorted_);
      return;
    }
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (Vertex u : g_.neighbors(w)) {
        if (u > root && blocked_[u] == 0) {
          next.push_back(u);
        }
      }
      sub_.push_back(w);
      mark(w, 1);
      extend(std::move(next), root);
      mark(w, -1);
      sub_.pop_back();
    }
  }

  const Graph& g_;
  unsigned k_;
  std::uint64_t budget_;
  const std::function<void(std::span<const Vertex>)>& visit_;
  std::vector<int> blocked_;
  std::vector<Vertex> sub_;
  std::vector<Vertex> sorted_;
  std::uint64_t visited_ = 0;
};

CountTable count_types(const Hypergraph& h, unsigned k, std::uint64_t budget,
                       const std::vector<std::uint8_t>* colors) {
  if (k < 1 || k > kMaxKeyOrder) {
    throw std::invalid_argument("exact counting needs 1 <= k <= " + std::to_string(kMaxKeyOrder));
  }
  const Graph g = gaifman(h);
  KeyCache cache;
  CountTable table;
  for_each_connected_set(g, k, budget, [&](std::span<const Vertex> u) {
    if (colors != nullptr) {
      std::uint32_t seen = 0;
      for (Vertex x : u) {
        seen |= 1u << (*colors)[x];
      }
      if (static_cast<unsigned>(std::popcount(seen)) != k) {
        return;
      }
    }
    auto& slot = table[cache.get(induced_sub(h, u))];
    slot = checked_add(slot, 1, "exact count");
  });
  return table;
}

unsigned find_root(std::vector<unsigned>& parent, unsigned x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Visits every (size)-subset of [0, n) as a bitmask.
template <typename Fn>
void for_each_subset_of_size(unsigned n, unsigned size, Fn&& fn) {
  if (size > n) {
    return;
  }
  if (size == 0) {
    fn(std::uint64_t{0});
    return;
  }
  std::uint64_t s = (std::uint64_t{1} << size) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (s < limit) {
    fn(s);
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

bool is_spanning_tree(unsigned order, const std::vector<std::pair<unsigned, unsigned>>& edges,
                      std::uint64_t chosen) {
  std::vector<unsigned> parent(order);
  std::iota(parent.begin(), parent.end(), 0u);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (chosen >> i & 1u) {
      const unsigned a = find_root(parent, edges[i].first);
      const unsigned b = find_root(parent, edges[i].second);
      if (a == b) {
        return false;
      }
      parent[a] = b;
    }
  }
  return true;
}

}  // namespace

void for_each_connected_set(const Graph& g, unsigned k, std::uint64_t budget,
                            const std::function<void(std::span<const Vertex>)>& visit) {
  if (k == 0) {
    return;
  }
  ConnectedSetEnumerator(g, k, budget, visit).run();
}

CountTable exact_counts(const Hypergraph& h, unsigned k, std::uint64_t budget) {
  return count_types(h, k, budget, nullptr);
}

CountTable exact_colorful_counts(const Hypergraph& h, const Coloring& coloring, unsigned k,
                                 std::uint64_t budget) {
  if (coloring.colors.size() != h.vertex_count()) {
    throw std::invalid_argument("coloring length differs from the vertex count");
  }
  return count_types(h, k, budget, &coloring.colors);
}

Count brute_rooted_colorful_treelets(const Hypergraph& h, const Coloring& coloring,
                                     const Treelet& treelet, ColorSet colors, Vertex v) {
  if (h.vertex_count() > 20) {
    throw BudgetError("brute-force treelet enumeration is limited to 20 vertices");
  }
  const unsigned order = treelet.order;
  if (static_cast<unsigned>(std::popcount(colors)) != order ||
      (colors >> coloring.colors[v] & 1u) == 0) {
    return 0;
  }
  const std::size_t n = h.vertex_count();
  std::vector<std::uint32_t> adj(n, 0);
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    for (Vertex a : h.edge(e)) {
      for (Vertex b : h.edge(e)) {
        if (a != b) {
          adj[a] |= 1u << b;
        }
      }
    }
  }

  Count total = 0;
  for (std::uint32_t set = 0; set < (1u << n); ++set) {
    if ((set >> v & 1u) == 0 || static_cast<unsigned>(std::popcount(set)) != order) {
      continue;
    }
    std::uint32_t seen = 0;
    for (std::uint32_t s = set; s != 0; s &= s - 1) {
      seen |= 1u << coloring.colors[std::countr_zero(s)];
    }
    if (seen != colors) {
      continue;
    }
    // Local indices with v first.
    std::vector<Vertex> members{v};
    for (std::uint32_t s = set & ~(1u << v); s != 0; s &= s - 1) {
      members.push_back(static_cast<Vertex>(std::countr_zero(s)));
    }
    std::vector<std::pair<unsigned, unsigned>> edges;
    for (unsigned i = 0; i < order; ++i) {
      for (unsigned j = i + 1; j < order; ++j) {
        if (adj[members[i]] >> members[j] & 1u) {
          edges.emplace_back(i, j);
        }
      }
    }
    for_each_subset_of_size(static_cast<unsigned>(edges.size()), order - 1, [&](std::uint64_t pick) {
      if (!is_spanning_tree(order, edges, pick)) {
        return;
      }
      std::vector<std::pair<unsigned, unsigned>> tree;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (pick >> i & 1u) {
          tree.push_back(edges[i]);
        }
      }
      if (rooted_code(order, tree, 0) == treelet.code) {
        ++total;
      }
    });
  }
  return total;
}

Count brute_spanning_trees(std::span<const std::uint32_t> rows) {
  const unsigned order = static_cast<unsigned>(rows.size());
  if (order > 8) {
    throw std::invalid_argument("brute-force spanning trees support at most 8 vertices");
  }
  if (order <= 1) {
    return 1;
  }
  std::vector<std::pair<unsigned, unsigned>> edges;
  for (unsigned i = 0; i < order; ++i) {
    for (unsigned j = i + 1; j < order; ++j) {
      if (rows[i] >> j & 1u) {
        edges.emplace_back(i, j);
      }
    }
  }
  Count total = 0;
  for_each_subset_of_size(static_cast<unsigned>(edges.size()), order - 1, [&](std::uint64_t pick) {
    if (is_spanning_tree(order, edges, pick)) {
      ++total;
    }
  });
  return total;
}

}  // namespace hyperlet
