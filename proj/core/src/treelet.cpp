#include "hyperlet/treelet.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace hyperlet {

std::string canonical_code(const std::vector<std::vector<unsigned>>& children, unsigned root) {
  std::vector<std::string> codes;
  codes.reserve(children[root].size());
  for (unsigned c : children[root]) {
    codes.push_back(canonical_code(children, c));
  }
  std::sort(codes.begin(), codes.end());
  std::string out = "(";
  for (const auto& c : codes) {
    out += c;
  }
  out += ')';
  return out;
}

std::string rooted_code(unsigned order, const std::vector<std::pair<unsigned, unsigned>>& edges,
                        unsigned root) {
  std::vector<std::vector<unsigned>> adj(order);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<unsigned>> children(order);
  std::vector<bool> seen(order, false);
  std::vector<unsigned> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    unsigned x = stack.back();
    stack.pop_back();
    for (unsigned y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        children[x].push_back(y);
        stack.push_back(y);
      }
    }
  }
  return canonical_code(children, root);
}

std::vector<std::string> root_child_codes(const std::string& code) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 1;
  for (std::size_t i = 1; i + 1 < code.size(); ++i) {
    depth += code[i] == '(' ? 1 : -1;
    if (depth == 0) {
      out.push_back(code.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  return out;
}

std::string merge_codes(const std::string& rest, const std::string& sub) {
  auto children = root_child_codes(rest);
  children.push_back(sub);
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const auto& c : children) {
    out += c;
  }
  out += ')';
  return out;
}

namespace {

unsigned code_order(const std::string& code) {
  return static_cast<unsigned>(std::count(code.begin(), code.end(), '('));
}

std::vector<unsigned> parent_array(const std::string& code) {
  std::vector<unsigned> parent;
  std::vector<unsigned> path;
  for (char c : code) {
    if (c == '(') {
      parent.push_back(path.empty() ? 0 : path.back());
      path.push_back(static_cast<unsigned>(parent.size() - 1));
    } else {
      path.pop_back();
    }
  }
  return parent;
}

}  // namespace

TreeletCatalog::TreeletCatalog(unsigned k) : k_(k) {
  if (k < 1 || k > kMaxOrder) {
    throw std::invalid_argument("treelet order must be in [1, 16]");
  }
  std::vector<std::vector<std::string>> by_order(k + 1);
  by_order[1] = {"()"};
  for (unsigned h = 2; h <= k; ++h) {
    std::set<std::string> found;
    for (unsigned a = 1; a < h; ++a) {
      for (const auto& rest : by_order[a]) {
        for (const auto& sub : by_order[h - a]) {
          found.insert(merge_codes(rest, sub));
        }
      }
    }
    by_order[h].assign(found.begin(), found.end());
  }

  order_begin_.assign(k + 2, 0);
  for (unsigned h = 1; h <= k; ++h) {
    order_begin_[h] = treelets_.size();
    for (const auto& code : by_order[h]) {
      Treelet t;
      t.order = h;
      t.code = code;
      t.parent = parent_array(code);
      treelets_.push_back(std::move(t));
    }
  }
  order_begin_[k + 1] = treelets_.size();

  for (auto& t : treelets_) {
    if (t.order < 2) {
      continue;
    }
    auto children = root_child_codes(t.code);
    const std::string& sub = children.front();
    t.multiplicity = static_cast<unsigned>(std::count(children.begin(), children.end(), sub));
    std::string rest = "(";
    for (std::size_t i = 1; i < children.size(); ++i) {
      rest += children[i];
    }
    rest += ')';
    t.sub = find(sub);
    t.rest = find(rest);
  }
}

std::vector<TreeletId> TreeletCatalog::of_order(unsigned order) const {
  std::vector<TreeletId> out;
  if (order < 1 || order > k_) {
    return out;
  }
  for (std::size_t i = order_begin_[order]; i < order_begin_[order + 1]; ++i) {
    out.push_back(static_cast<TreeletId>(i));
  }
  return out;
}

TreeletId TreeletCatalog::find(const std::string& code) const {
  const unsigned h = code_order(code);
  if (h < 1 || h > k_) {
    throw std::out_of_range("treelet code out of catalog range: " + code);
  }
  auto first = treelets_.begin() + static_cast<std::ptrdiff_t>(order_begin_[h]);
  auto last = treelets_.begin() + static_cast<std::ptrdiff_t>(order_begin_[h + 1]);
  auto it = std::lower_bound(first, last, code,
                             [](const Treelet& t, const std::string& c) { return t.code < c; });
  if (it == last || it->code != code) {
    throw std::out_of_range("treelet code not in catalog: " + code);
  }
  return static_cast<TreeletId>(it - treelets_.begin());
}

std::string TreeletCatalog::dump() const {
  std::string out;
  for (const auto& t : treelets_) {
    out += t.code;
    out += '\n';
  }
  return out;
}

std::uint64_t TreeletCatalog::digest() const {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : dump()) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string star_code(unsigned order) {
  std::string out = "(";
  for (unsigned i = 1; i < order; ++i) {
    out += "()";
  }
  return out + ")";
}

std::string path_code(unsigned order) {
  return std::string(order, '(') + std::string(order, ')');
}

}  // namespace hyperlet
