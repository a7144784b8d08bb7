#pragma once

#include <string>

#include "hyperlet/io.hpp"

namespace fixture {

inline std::string data_path(const std::string& name) {
  return std::string(HYPERLET_TEST_DATA) + "/" + name;
}

inline hyperlet::LabeledHypergraph toy() { return hyperlet::parse_hypergraph_file(data_path("toy.hg")); }

}  // namespace fixture
