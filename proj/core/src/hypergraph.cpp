#include "hyperlet/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace hyperlet {

Hypergraph::Hypergraph(std::size_t vertex_count, std::vector<std::vector<Vertex>> edges)
    : vertex_count_(vertex_count) {
  std::vector<std::size_t> degree(vertex_count, 0);
  edge_offsets_.reserve(edges.size() + 1);
  for (std::size_t j = 0; j < edges.size(); ++j) {
    auto& e = edges[j];
    if (e.empty()) {
      throw std::invalid_argument("edge " + std::to_string(j) + " is empty");
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw std::invalid_argument("edge " + std::to_string(j) + " repeats a vertex");
    }
    if (e.back() >= vertex_count) {
      throw std::invalid_argument("edge " + std::to_string(j) + " has vertex id out of range");
    }
    for (Vertex v : e) {
      ++degree[v];
    }
    edge_vertices_.insert(edge_vertices_.end(), e.begin(), e.end());
    edge_offsets_.push_back(edge_vertices_.size());
    rank_ = std::max(rank_, e.size());
  }

  incidence_offsets_.assign(vertex_count + 1, 0);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    incidence_offsets_[v + 1] = incidence_offsets_[v] + degree[v];
    max_degree_ = std::max(max_degree_, degree[v]);
  }
  incidence_edges_.resize(edge_vertices_.size());
  std::vector<std::size_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  // Edge ids are visited in increasing order, so each incidence list comes out sorted.
  for (EdgeId j = 0; j < edges.size(); ++j) {
    for (Vertex v : edge(j)) {
      incidence_edges_[cursor[v]++] = j;
    }
  }
}

std::vector<std::vector<Vertex>> Hypergraph::edge_lists() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(edge_count());
  for (EdgeId j = 0; j < edge_count(); ++j) {
    auto e = edge(j);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

Graph::Graph(std::size_t vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::vector<Vertex>> adj(vertex_count);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("graph edge endpoint out of range");
    }
    if (u == v) {
      continue;
    }
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  offsets_.assign(vertex_count + 1, 0);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto& list = adj[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    offsets_[v + 1] = offsets_[v] + list.size();
  }
  neighbors_.reserve(offsets_.back());
  for (auto& list : adj) {
    neighbors_.insert(neighbors_.end(), list.begin(), list.end());
  }
}

Graph::Graph(std::vector<std::size_t> offsets, std::vector<Vertex> neighbors)
    : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {
  if (offsets_.empty() || offsets_.back() != neighbors_.size()) {
    throw std::invalid_argument("inconsistent CSR arrays");
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto list = neighbors(v);
  return std::binary_search(list.begin(), list.end(), u);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edge_pairs() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < vertex_count(); ++v) {
    for (Vertex u : neighbors(v)) {
      if (v < u) {
        out.emplace_back(v, u);
      }
    }
  }
  return out;
}

Graph gaifman(const Hypergraph& h) {
  const std::size_t n = h.vertex_count();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<Vertex> neighbors;
  // Per-vertex marker sweep over incident edges; avoids materializing the
  // sum |e|^2 pair list before deduplication.
  std::vector<Vertex> mark(n, static_cast<Vertex>(-1));
  std::vector<Vertex> scratch;
  for (Vertex v = 0; v < n; ++v) {
    scratch.clear();
    mark[v] = v;
    for (EdgeId e : h.incidence(v)) {
      for (Vertex u : h.edge(e)) {
        if (mark[u] != v) {
          mark[u] = v;
          scratch.push_back(u);
        }
      }
    }
    std::sort(scratch.begin(), scratch.end());
    neighbors.insert(neighbors.end(), scratch.begin(), scratch.end());
    offsets[v + 1] = neighbors.size();
  }
  return Graph(std::move(offsets), std::move(neighbors));
}

namespace {

std::vector<Vertex> sorted_subset(const Hypergraph& h, std::span<const Vertex> subset) {
  if (subset.empty()) {
    throw std::invalid_argument("vertex subset must be nonempty");
  }
  if (subset.size() > kMaxHypergraphletOrder) {
    throw std::invalid_argument("vertex subset larger than 32");
  }
  std::vector<Vertex> u(subset.begin(), subset.end());
  std::sort(u.begin(), u.end());
  if (std::adjacent_find(u.begin(), u.end()) != u.end()) {
    throw std::invalid_argument("vertex subset repeats a vertex");
  }
  if (u.back() >= h.vertex_count()) {
    throw std::invalid_argument("vertex id out of range");
  }
  return u;
}

void finish(Hypergraphlet& hg) {
  std::sort(hg.edges.begin(), hg.edges.end());
  hg.edges.erase(std::unique(hg.edges.begin(), hg.edges.end()), hg.edges.end());
}

}  // namespace

Hypergraphlet induced_sub(const Hypergraph& h, std::span<const Vertex> subset) {
  Hypergraphlet out;
  out.vertex_map = sorted_subset(h, subset);
  out.order = static_cast<unsigned>(out.vertex_map.size());
  const auto& u = out.vertex_map;
  // Each edge touching U is reached through the incidence list of its
  // smallest U-member; membership of the other members is by binary search.
  for (unsigned i = 0; i < u.size(); ++i) {
    for (EdgeId e : h.incidence(u[i])) {
      auto members = h.edge(e);
      std::uint32_t mask = 0;
      bool first = true;
      for (unsigned j = 0; j < u.size(); ++j) {
        if (std::binary_search(members.begin(), members.end(), u[j])) {
          if (j < i) {
            first = false;
            break;
          }
          mask |= 1u << j;
        }
      }
      if (first) {
        out.edges.push_back(mask);
      }
    }
  }
  finish(out);
  return out;
}

Hypergraphlet section_sub(const Hypergraph& h, std::span<const Vertex> subset) {
  Hypergraphlet out;
  out.vertex_map = sorted_subset(h, subset);
  out.order = static_cast<unsigned>(out.vertex_map.size());
  const auto& u = out.vertex_map;
  for (unsigned i = 0; i < u.size(); ++i) {
    for (EdgeId e : h.incidence(u[i])) {
      auto members = h.edge(e);
      if (members.front() != u[i] || members.size() > u.size()) {
        continue;  // visited from its smallest vertex only
      }
      std::uint32_t mask = 0;
      bool inside = true;
      for (Vertex x : members) {
        auto it = std::lower_bound(u.begin(), u.end(), x);
        if (it == u.end() || *it != x) {
          inside = false;
          break;
        }
        mask |= 1u << (it - u.begin());
      }
      if (inside) {
        out.edges.push_back(mask);
      }
    }
  }
  finish(out);
  return out;
}

std::vector<std::uint32_t> gaifman_rows(const Hypergraphlet& hg) {
  std::vector<std::uint32_t> rows(hg.order, 0);
  for (std::uint32_t mask : hg.edges) {
    for (unsigned i = 0; i < hg.order; ++i) {
      if (mask >> i & 1u) {
        rows[i] |= mask & ~(1u << i);
      }
    }
  }
  return rows;
}

bool is_connected(const Hypergraphlet& hg) {
  if (hg.order == 0) {
    return false;
  }
  const auto rows = gaifman_rows(hg);
  const std::uint32_t all = hg.order == 32 ? ~0u : (1u << hg.order) - 1;
  std::uint32_t seen = 1u;
  std::uint32_t frontier = 1u;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) {
      next |= rows[std::countr_zero(f)];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return (seen & all) == all;
}

bool is_connected_induced(const Hypergraph& h, std::span<const Vertex> subset) {
  return is_connected(induced_sub(h, subset));
}

std::string serialize(const Hypergraphlet& hg) {
  std::ostringstream os;
  os << hg.order << '\n';
  os << std::hex;
  for (std::uint32_t mask : hg.edges) {
    os << mask << '\n';
  }
  return os.str();
}

Hypergraphlet deserialize_hypergraphlet(const std::string& text) {
  std::istringstream is(text);
  Hypergraphlet hg;
  if (!(is >> hg.order) || hg.order > kMaxHypergraphletOrder) {
    throw std::invalid_argument("bad hypergraphlet order");
  }
  std::uint32_t mask;
  while (is >> std::hex >> mask) {
    if (mask == 0 || (hg.order < 32 && (mask >> hg.order) != 0)) {
      throw std::invalid_argument("hypergraphlet edge mask out of range");
    }
    hg.edges.push_back(mask);
  }
  finish(hg);
  hg.vertex_map.resize(hg.order);
  for (unsigned i = 0; i < hg.order; ++i) {
    hg.vertex_map[i] = i;
  }
  return hg;
}

}  // namespace hyperlet
