#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace oracle {

std::vector<std::vector<bool>> primal_matrix(std::size_t n, const Edges& edges) {
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (const auto& e : edges) {
    for (Vertex x : e) {
      for (Vertex y : e) {
        if (x != y) {
          a[x][y] = true;
        }
      }
    }
  }
  return a;
}

std::vector<Count> neighbor_sums(std::size_t n, const Edges& edges, const std::vector<Count>& w) {
  const auto a = primal_matrix(n, edges);
  std::vector<Count> out(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      if (a[v][u]) {
        out[v] += w[u];
      }
    }
  }
  return out;
}

namespace {

std::string shape(const std::vector<std::vector<unsigned>>& kids, unsigned v) {
  std::vector<std::string> parts;
  for (unsigned c : kids[v]) {
    parts.push_back(shape(kids, c));
  }
  std::sort(parts.begin(), parts.end());
  std::string s = "[";
  for (auto& p : parts) {
    s += p;
  }
  return s + "]";
}

}  // namespace

std::size_t rooted_tree_shapes(unsigned order) {
  std::set<std::string> seen;
  std::vector<unsigned> parent(order, 0);
  auto rec = [&](auto&& self, unsigned i) -> void {
    if (i >= order) {
      std::vector<std::vector<unsigned>> kids(order);
      for (unsigned j = 1; j < order; ++j) {
        kids[parent[j]].push_back(j);
      }
      seen.insert(shape(kids, 0));
      return;
    }
    for (unsigned p = 0; p < i; ++p) {
      parent[i] = p;
      self(self, i + 1);
    }
  };
  rec(rec, 1);
  return seen.size();
}

std::set<std::vector<Vertex>> induced_edges(const Edges& edges, const std::vector<Vertex>& u) {
  std::set<std::vector<Vertex>> out;
  for (const auto& e : edges) {
    std::vector<Vertex> cut;
    for (Vertex x : u) {
      if (std::find(e.begin(), e.end(), x) != e.end()) {
        cut.push_back(x);
      }
    }
    std::sort(cut.begin(), cut.end());
    if (!cut.empty()) {
      out.insert(cut);
    }
  }
  return out;
}

namespace {

bool connected_on(const std::vector<std::vector<bool>>& a, const std::vector<Vertex>& u) {
  if (u.empty()) {
    return false;
  }
  std::vector<bool> seen(u.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (!seen[j] && a[u[i]][u[j]]) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == u.size();
}

}  // namespace

std::vector<std::vector<Vertex>> connected_subsets(std::size_t n, const Edges& edges, unsigned k) {
  const auto a = primal_matrix(n, edges);
  std::vector<std::vector<Vertex>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) != k) {
      continue;
    }
    std::vector<Vertex> u;
    for (Vertex v = 0; v < n; ++v) {
      if (mask >> v & 1u) {
        u.push_back(v);
      }
    }
    if (connected_on(a, u)) {
      out.push_back(u);
    }
  }
  return out;
}

bool isomorphic(unsigned k, const std::set<std::vector<Vertex>>& a,
                const std::set<std::vector<Vertex>>& b) {
  if (a.size() != b.size()) {
    return false;
  }
  std::vector<Vertex> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  do {
    std::set<std::vector<Vertex>> mapped;
    for (const auto& e : a) {
      std::vector<Vertex> m;
      for (Vertex x : e) {
        m.push_back(perm[x]);
      }
      std::sort(m.begin(), m.end());
      mapped.insert(m);
    }
    if (mapped == b) {
      return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<std::uint64_t> class_sizes(std::size_t n, const Edges& edges, unsigned k,
                                       const std::vector<std::uint8_t>* colors) {
  std::vector<std::set<std::vector<Vertex>>> reps;
  std::vector<std::uint64_t> sizes;
  for (const auto& u : connected_subsets(n, edges, k)) {
    if (colors != nullptr) {
      std::set<std::uint8_t> cs;
      for (Vertex x : u) {
        cs.insert((*colors)[x]);
      }
      if (cs.size() != k) {
        continue;
      }
    }
    // Relabel to 0..k-1.
    std::set<std::vector<Vertex>> local;
    for (auto e : induced_edges(edges, u)) {
      for (auto& x : e) {
        x = static_cast<Vertex>(std::find(u.begin(), u.end(), x) - u.begin());
      }
      std::sort(e.begin(), e.end());
      local.insert(e);
    }
    bool placed = false;
    for (std::size_t i = 0; i < reps.size() && !placed; ++i) {
      if (isomorphic(k, local, reps[i])) {
        ++sizes[i];
        placed = true;
      }
    }
    if (!placed) {
      reps.push_back(local);
      sizes.push_back(1);
    }
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

Edges random_edges(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t max_size) {
  std::mt19937_64 rng(seed);
  Edges edges;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t size = 1 + rng() % std::min(max_size, n);
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0u);
    for (std::size_t j = 0; j < size; ++j) {
      std::swap(all[j], all[j + rng() % (n - j)]);
    }
    std::vector<Vertex> e(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(e.begin(), e.end());
    edges.push_back(e);
  }
  return edges;
}

}  // namespace oracle
