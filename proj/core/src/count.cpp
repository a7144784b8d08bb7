#include "hyperlet/count.hpp"

#include <algorithm>

namespace hyperlet {

std::string to_string(Count value) {
  if (value == 0) {
    return "0";
  }
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Count parse_count(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("empty count literal");
  }
  Count out = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("bad count literal: " + std::string(text));
    }
    out = checked_add(checked_mul(out, 10, "count literal"), static_cast<Count>(c - '0'),
                      "count literal");
  }
  return out;
}

}  // namespace hyperlet
