#include "hyperlet/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace hyperlet {

namespace {

std::optional<std::uint64_t> as_integer(const std::string& token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) {
    out.push_back(tok);
  }
  return out;
}

}  // namespace

Vertex LabeledHypergraph::id_of(const std::string& token) const {
  auto it = std::find(tokens.begin(), tokens.end(), token);
  if (it == tokens.end()) {
    throw std::out_of_range("unknown vertex token: " + token);
  }
  return static_cast<Vertex>(it - tokens.begin());
}

LabeledHypergraph parse_hypergraph(std::istream& in, const ParseOptions& options) {
  std::optional<std::size_t> header_n;
  std::vector<std::vector<std::string>> raw_edges;
  std::vector<std::size_t> raw_lines;

  std::string line;
  std::size_t lineno = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      throw ParseError(lineno, "empty edge (whitespace-only line)");
    }
    if (line[first] == '%') {
      continue;
    }
    if (line[first] == '#') {
      auto parts = split_ws(line.substr(first + 1));
      if (parts.size() == 2 && parts[0] == "vertices" && !seen_content && !header_n) {
        auto n = as_integer(parts[1]);
        if (!n) {
          throw ParseError(lineno, "bad vertex count in header");
        }
        header_n = static_cast<std::size_t>(*n);
        continue;
      }
      throw ParseError(lineno, "unexpected '#' line (only a leading `# vertices <n>` header is allowed)");
    }
    seen_content = true;
    auto tokens = split_ws(line);
    std::vector<std::string> sorted = tokens;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(lineno, "edge repeats a vertex token");
    }
    raw_edges.push_back(std::move(tokens));
    raw_lines.push_back(lineno);
  }

  LabeledHypergraph out;
  bool numeric = header_n.has_value();
  if (numeric) {
    for (const auto& e : raw_edges) {
      for (const auto& t : e) {
        auto v = as_integer(t);
        if (!v || *v >= *header_n) {
          numeric = false;
          break;
        }
      }
      if (!numeric) {
        break;
      }
    }
  }

  std::vector<std::vector<Vertex>> edges;
  edges.reserve(raw_edges.size());
  if (numeric) {
    out.tokens.resize(*header_n);
    for (std::size_t v = 0; v < *header_n; ++v) {
      out.tokens[v] = std::to_string(v);
    }
    for (const auto& e : raw_edges) {
      std::vector<Vertex> ids;
      for (const auto& t : e) {
        ids.push_back(static_cast<Vertex>(*as_integer(t)));
      }
      edges.push_back(std::move(ids));
    }
  } else {
    std::unordered_map<std::string, Vertex> ids;
    for (const auto& e : raw_edges) {
      std::vector<Vertex> edge;
      for (const auto& t : e) {
        auto [it, inserted] = ids.try_emplace(t, static_cast<Vertex>(out.tokens.size()));
        if (inserted) {
          out.tokens.push_back(t);
        }
        edge.push_back(it->second);
      }
      edges.push_back(std::move(edge));
    }
    if (header_n) {
      if (out.tokens.size() > *header_n) {
        throw ParseError(1, "header declares " + std::to_string(*header_n) + " vertices but " +
                                std::to_string(out.tokens.size()) + " distinct tokens appear");
      }
      for (std::size_t v = out.tokens.size(); v < *header_n; ++v) {
        out.tokens.push_back("#" + std::to_string(v));
      }
    }
  }

  if (options.dedupe_edges) {
    std::set<std::vector<Vertex>> seen;
    std::vector<std::vector<Vertex>> unique;
    for (auto& e : edges) {
      auto key = e;
      std::sort(key.begin(), key.end());
      if (seen.insert(std::move(key)).second) {
        unique.push_back(std::move(e));
      }
    }
    edges = std::move(unique);
  }

  out.graph = Hypergraph(out.tokens.size(), std::move(edges));
  return out;
}

LabeledHypergraph parse_hypergraph_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return parse_hypergraph(in, options);
}

LabeledHypergraph parse_hypergraph_string(const std::string& text, const ParseOptions& options) {
  std::istringstream in(text);
  return parse_hypergraph(in, options);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << "# vertices " << h.vertex_count() << '\n';
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    bool first = true;
    for (Vertex v : h.edge(e)) {
      out << (first ? "" : " ") << v;
      first = false;
    }
    out << '\n';
  }
}

void write_hypergraph(std::ostream& out, const LabeledHypergraph& h) {
  out << "# vertices " << h.graph.vertex_count() << '\n';
  for (EdgeId e = 0; e < h.graph.edge_count(); ++e) {
    bool first = true;
    for (Vertex v : h.graph.edge(e)) {
      out << (first ? "" : " ") << h.tokens[v];
      first = false;
    }
    out << '\n';
  }
}

void write_token_map(std::ostream& out, const LabeledHypergraph& h) {
  for (std::size_t v = 0; v < h.tokens.size(); ++v) {
    out << v << '\t' << h.tokens[v] << '\n';
  }
}

Graph parse_graph(std::istream& in) {
  std::unordered_map<std::string, Vertex> ids;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::string line;
  std::size_t lineno = 0;
  auto id = [&](const std::string& t) {
    auto [it, inserted] = ids.try_emplace(t, static_cast<Vertex>(ids.size()));
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto parts = split_ws(line);
    if (parts.empty() || parts[0][0] == '%' || parts[0][0] == '#') {
      continue;
    }
    if (parts.size() == 1) {
      id(parts[0]);
      continue;
    }
    if (parts.size() != 2) {
      throw ParseError(lineno, "graph edge lines need exactly two tokens");
    }
    if (parts[0] == parts[1]) {
      throw ParseError(lineno, "self-loop");
    }
    Vertex u = id(parts[0]);
    Vertex v = id(parts[1]);
    edges.emplace_back(u, v);
  }
  return Graph(ids.size(), edges);
}

}  // namespace hyperlet
