#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperlet/hypergraph.hpp"

namespace hyperlet {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseOptions {
  bool dedupe_edges = true;
};

/// A parsed hypergraph plus the original token of every dense id.
struct LabeledHypergraph {
  Hypergraph graph;
  std::vector<std::string> tokens;

  Vertex id_of(const std::string& token) const;
};

/**
 * Edge-list format: optional first line `# vertices <n>`, then one hyperedge
 * per nonempty line as whitespace-separated tokens; lines starting with `%`
 * are comments.
 *
 * Tokens are densified in first-appearance order. When the header is present
 * and every token is a decimal integer below n, the integers are used as ids
 * directly; otherwise the remaining ids up to n are isolated vertices whose
 * token is `#<id>`.
 */
LabeledHypergraph parse_hypergraph(std::istream& in, const ParseOptions& options = {});
LabeledHypergraph parse_hypergraph_file(const std::string& path, const ParseOptions& options = {});
LabeledHypergraph parse_hypergraph_string(const std::string& text,
                                          const ParseOptions& options = {});

/// Writes the header and one line per edge using vertex ids.
void write_hypergraph(std::ostream& out, const Hypergraph& h);
/// Writes the header and one line per edge using the stored tokens.
void write_hypergraph(std::ostream& out, const LabeledHypergraph& h);
/// Tab-separated `id\ttoken` lines.
void write_token_map(std::ostream& out, const LabeledHypergraph& h);

/// Plain graph edge list: one `u v` pair per line, `%`/`#` comments.
/// Vertex tokens are densified like hypergraph tokens.
Graph parse_graph(std::istream& in);

}  // namespace hyperlet
