#include "hyperlet/hardlab.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "hyperlet/counters.hpp"
#include "hyperlet/neighbor_weight.hpp"
#include "hyperlet/random.hpp"
#include "hyperlet/split.hpp"
#include "hyperlet/treelet.hpp"

namespace hyperlet {

CliqueReduction reduce_clique_to_ksh(const Graph& g, unsigned k) {
  if (k < 3) {
    throw std::invalid_argument("clique reduction needs k >= 3; smaller k is trivial");
  }
  CliqueReduction r;
  r.k = k;
  r.block_size = std::size_t{k} * (k - 1) / 2;
  r.k_prime = (k + 1) * r.block_size;
  const std::size_t n = g.vertex_count();
  const auto pairs = g.edge_pairs();
  r.block_map.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < r.block_size; ++i) {
      r.block_map[v].push_back(static_cast<Vertex>(v * r.block_size + i));
    }
  }
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    const auto [u, v] = pairs[e];
    CliqueReduction::EdgeImage img;
    img.u = u;
    img.v = v;
    img.singleton = static_cast<Vertex>(n * r.block_size + e);
    img.hyperedge = static_cast<EdgeId>(e);
    std::vector<Vertex> members = r.block_map[u];
    members.insert(members.end(), r.block_map[v].begin(), r.block_map[v].end());
    members.push_back(img.singleton);
    edges.push_back(std::move(members));
    r.edge_map.push_back(img);
  }
  r.hypergraph = Hypergraph(n * r.block_size + pairs.size(), std::move(edges));
  return r;
}

namespace {

long double binomial(std::size_t n, std::size_t k) {
  if (k > n) {
    return 0;
  }
  long double b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    b = b * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  }
  return b;
}

KshResult ksh_subsets(const Hypergraph& h, std::size_t k, std::uint64_t budget) {
  const std::size_t n = h.vertex_count();
  if (binomial(n, k) > static_cast<long double>(budget)) {
    throw BudgetError("C(" + std::to_string(n) + ", " + std::to_string(k) +
                      ") candidate sets exceed the budget; raise HM_BUDGET");
  }
  KshResult out;
  std::vector<Vertex> u(k);
  for (std::size_t i = 0; i < k; ++i) {
    u[i] = static_cast<Vertex>(i);
  }
  for (;;) {
    ++out.examined;
    if (is_connected(section_sub(h, u))) {
      out.found = true;
      out.witness = u;
      return out;
    }
    std::size_t i = k;
    while (i > 0 && u[i - 1] == n - k + i - 1) {
      --i;
    }
    if (i == 0) {
      return out;
    }
    ++u[i - 1];
    for (std::size_t j = i; j < k; ++j) {
      u[j] = u[j - 1] + 1;
    }
  }
}

// A connected section H<U> with |U| >= 2 is the union of the edges inside U,
// so it suffices to grow unions of pairwise-chained edges.
KshResult ksh_edge_unions(const Hypergraph& h, std::size_t k, std::uint64_t budget) {
  KshResult out;
  std::set<std::vector<Vertex>> seen;
  std::vector<std::vector<Vertex>> stack;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    if (h.edge_size(e) <= k) {
      auto members = h.edge(e);
      std::vector<Vertex> u(members.begin(), members.end());
      if (seen.insert(u).second) {
        stack.push_back(std::move(u));
      }
    }
  }
  std::vector<Vertex> grown;
  while (!stack.empty()) {
    std::vector<Vertex> u = std::move(stack.back());
    stack.pop_back();
    if (++out.examined > budget) {
      throw BudgetError("edge-union search exceeds the budget; raise HM_BUDGET");
    }
    if (u.size() == k) {
      out.found = true;
      out.witness = std::move(u);
      return out;
    }
    for (Vertex x : u) {
      for (EdgeId e : h.incidence(x)) {
        auto members = h.edge(e);
        grown.clear();
        std::set_union(u.begin(), u.end(), members.begin(), members.end(),
                       std::back_inserter(grown));
        if (grown.size() > u.size() && grown.size() <= k && seen.insert(grown).second) {
          stack.push_back(grown);
        }
      }
    }
  }
  return out;
}

}  // namespace

KshResult decide_ksh_bruteforce(const Hypergraph& h, std::size_t k, KshMethod method,
                                std::uint64_t budget) {
  if (k < 1) {
    throw std::invalid_argument("k must be at least 1");
  }
  if (k > h.vertex_count()) {
    return {};
  }
  if (k == 1) {
    return {true, {0}, 1};
  }
  if (method == KshMethod::kAuto) {
    // Unions are usually far fewer than k-subsets; subsets only as a fallback.
    try {
      return ksh_edge_unions(h, k, budget);
    } catch (const BudgetError&) {
      if (binomial(h.vertex_count(), k) > static_cast<long double>(budget)) {
        throw;
      }
    }
    method = KshMethod::kSubsets;
  }
  return method == KshMethod::kSubsets ? ksh_subsets(h, k, budget)
                                       : ksh_edge_unions(h, k, budget);
}

CliqueWitness read_witness(const CliqueReduction& r, const Graph& g,
                           const std::vector<Vertex>& witness) {
  CliqueWitness w;
  std::unordered_set<Vertex> in(witness.begin(), witness.end());
  for (Vertex v = 0; v < r.block_map.size(); ++v) {
    std::size_t met = 0;
    for (Vertex x : r.block_map[v]) {
      met += in.count(x);
    }
    if (met == r.block_size) {
      w.blocks.push_back(v);
    } else if (met != 0) {
      w.blocks_whole = false;
    }
  }
  for (std::size_t e = 0; e < r.edge_map.size(); ++e) {
    if (in.count(r.edge_map[e].singleton) != 0) {
      w.edges.push_back(e);
    }
  }
  w.accounting = witness.size() == r.k_prime &&
                 w.blocks.size() * r.block_size + w.edges.size() == r.k_prime;
  w.is_clique = w.blocks.size() == r.k;
  for (std::size_t i = 0; i < w.blocks.size() && w.is_clique; ++i) {
    for (std::size_t j = i + 1; j < w.blocks.size(); ++j) {
      if (!g.adjacent(w.blocks[i], w.blocks[j])) {
        w.is_clique = false;
        break;
      }
    }
  }
  return w;
}

namespace {

bool extend_clique(const Graph& g, std::vector<Vertex>& chosen, Vertex from, unsigned k) {
  if (chosen.size() == k) {
    return true;
  }
  for (Vertex v = from; v < g.vertex_count(); ++v) {
    bool ok = true;
    for (Vertex c : chosen) {
      if (!g.adjacent(c, v)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      chosen.push_back(v);
      if (extend_clique(g, chosen, v + 1, k)) {
        return true;
      }
      chosen.pop_back();
    }
  }
  return false;
}

void check_ov(const OVInstance& inst) {
  if (inst.vectors.size() < 2) {
    throw std::invalid_argument("OV needs at least two vectors");
  }
  for (const auto& v : inst.vectors) {
    if (v.size() != inst.dimension()) {
      throw std::invalid_argument("OV vectors have different dimensions");
    }
  }
}

}  // namespace

bool has_clique(const Graph& g, unsigned k) {
  std::vector<Vertex> chosen;
  return extend_clique(g, chosen, 0, k);
}

OVResult solve_ov_via_nc(const OVInstance& inst) {
  check_ov(inst);
  const std::size_t n = inst.vectors.size();
  const std::size_t d = inst.dimension();
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t l = 0; l < d; ++l) {
    std::vector<Vertex> e;
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.vectors[i][l] != 0) {
        e.push_back(static_cast<Vertex>(i));
      }
    }
    if (!e.empty()) {
      edges.push_back(std::move(e));
    }
  }
  OVResult out;
  out.hypergraph = Hypergraph(n, std::move(edges));
  const std::vector<Count> ones(n, 1);
  const WeightVector eta = out.hypergraph.max_degree() <= kDefaultDegreeCap
                               ? nw_ie(out.hypergraph, ones)
                               : nw_naive(gaifman(out.hypergraph), ones);
  out.neighbor_counts.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    out.neighbor_counts[v] = static_cast<std::size_t>(eta[v]);
  }
  for (std::size_t v = 0; v < n && !out.orthogonal_pair; ++v) {
    if (out.neighbor_counts[v] + 1 >= n) {
      continue;
    }
    out.orthogonal_pair = true;
    for (std::size_t u = 0; u < n; ++u) {
      bool dot = u == v;
      for (std::size_t l = 0; l < d && !dot; ++l) {
        dot = inst.vectors[u][l] != 0 && inst.vectors[v][l] != 0;
      }
      if (!dot) {
        out.pair = std::minmax(u, v);
        break;
      }
    }
  }
  return out;
}

bool ov_pairwise(const OVInstance& inst) {
  check_ov(inst);
  const std::size_t n = inst.vectors.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool dot = false;
      for (std::size_t l = 0; l < inst.dimension() && !dot; ++l) {
        dot = inst.vectors[i][l] != 0 && inst.vectors[j][l] != 0;
      }
      if (!dot) {
        return true;
      }
    }
  }
  return false;
}

Hypergraph blow_up(const Hypergraph& h, unsigned k) {
  std::vector<std::vector<Vertex>> edges;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    std::vector<Vertex> members;
    for (Vertex v : h.edge(e)) {
      for (unsigned c = 0; c < k; ++c) {
        members.push_back(static_cast<Vertex>(v * k + c));
      }
    }
    edges.push_back(std::move(members));
  }
  return Hypergraph(h.vertex_count() * k, std::move(edges));
}

std::vector<Count> blown_up_star_counts(const Hypergraph& h, unsigned k) {
  const Hypergraph big = blow_up(h, k);
  Coloring coloring;
  coloring.k = k;
  coloring.colors.resize(big.vertex_count());
  for (std::size_t x = 0; x < big.vertex_count(); ++x) {
    coloring.colors[x] = static_cast<std::uint8_t>(x % k);
  }
  const AlphaSplit split = choose_split_simple(big).split;
  BuildOptions options;
  options.keep_neighbor_sums = false;
  const CounterSet cs = build_counters(big, split, k, coloring, options);
  const TreeletId star = cs.catalog().find(star_code(k));
  const auto row = cs.row(star, cs.subsets().full());
  std::vector<Count> out(h.vertex_count());
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    out[v] = row[v * k];
  }
  return out;
}

namespace {

std::vector<Vertex> distinct_sample(Rng& rng, std::size_t population, std::size_t size) {
  // Floyd's algorithm.
  std::unordered_set<std::size_t> chosen;
  std::vector<Vertex> out;
  for (std::size_t j = population - size; j < population; ++j) {
    const std::size_t t = uniform_below(rng, std::uint64_t{j + 1});
    const std::size_t pick = chosen.count(t) != 0 ? j : t;
    chosen.insert(pick);
    out.push_back(static_cast<Vertex>(pick));
  }
  std::sort(out.begin(), out.end());
  return out;
}

constexpr int kRedrawAttempts = 1000;

}  // namespace

Hypergraph powerlaw_hypergraph(std::size_t n, std::size_t m, double exponent,
                               std::size_t max_size, std::uint64_t seed) {
  max_size = std::min(max_size, n);
  if (n < 2 || max_size < 2) {
    throw std::invalid_argument("power-law generator needs n >= 2 and max_size >= 2");
  }
  std::vector<double> cumulative;
  double run = 0;
  for (std::size_t s = 2; s <= max_size; ++s) {
    run += std::pow(static_cast<double>(s), -exponent);
    cumulative.push_back(run);
  }
  Rng rng = make_rng(seed, Stream::kGenerator);
  std::set<std::vector<Vertex>> seen;
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t i = 0; i < m; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == kRedrawAttempts) {
        throw std::invalid_argument("cannot draw enough distinct edges");
      }
      const double r = uniform_unit(rng) * run;
      const std::size_t idx = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
      const std::size_t size = 2 + std::min(idx, cumulative.size() - 1);
      auto e = distinct_sample(rng, n, size);
      if (seen.insert(e).second) {
        edges.push_back(std::move(e));
        break;
      }
    }
  }
  return Hypergraph(n, std::move(edges));
}

Hypergraph controlled_hypergraph(const ControlledParams& p, std::uint64_t seed) {
  if (p.alpha < 2 || p.large_size <= p.alpha || p.large_size > p.n || p.small_fraction < 0 ||
      p.small_fraction > 1) {
    throw std::invalid_argument("controlled generator needs 2 <= alpha < large_size <= n");
  }
  Rng rng = make_rng(seed, Stream::kGenerator, 1);
  const std::size_t small =
      static_cast<std::size_t>(std::llround(p.small_fraction * static_cast<double>(p.m)));
  std::vector<std::vector<Vertex>> edges;
  std::set<std::vector<Vertex>> seen;
  for (std::size_t i = 0; i < small; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == kRedrawAttempts) {
        throw std::invalid_argument("cannot draw enough distinct small edges");
      }
      const std::size_t size = 2 + uniform_below(rng, std::uint64_t{p.alpha - 1});
      auto e = distinct_sample(rng, p.n, size);
      if (seen.insert(e).second) {
        edges.push_back(std::move(e));
        break;
      }
    }
  }
  std::vector<std::size_t> upper_degree(p.n, 0);
  for (std::size_t i = small; i < p.m; ++i) {
    std::vector<Vertex> eligible;
    for (Vertex v = 0; v < p.n; ++v) {
      if (upper_degree[v] < p.beta) {
        eligible.push_back(v);
      }
    }
    if (eligible.size() < p.large_size) {
      throw std::invalid_argument("upper degree bound leaves too few vertices for large edges");
    }
    std::vector<Vertex> e;
    for (Vertex idx : distinct_sample(rng, eligible.size(), p.large_size)) {
      e.push_back(eligible[idx]);
      ++upper_degree[eligible[idx]];
    }
    std::sort(e.begin(), e.end());
    edges.push_back(std::move(e));
  }
  return Hypergraph(p.n, std::move(edges));
}

}  // namespace hyperlet
