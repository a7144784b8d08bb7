#pragma once

#include <stdexcept>

namespace hyperlet::cli {

/// Bad flag values detected after parsing; exits with code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperlet::cli
