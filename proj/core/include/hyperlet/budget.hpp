#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hyperlet {

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration cap: HM_BUDGET when set to a positive integer, else `fallback`.
inline std::uint64_t enumeration_budget(std::uint64_t fallback) {
  const char* env = std::getenv("HM_BUDGET");
  if (env == nullptr || *env == '\0') {
    return fallback;
  }
  // stoull accepts a sign and wraps negatives, so insist on digits.
  const bool digits = *env >= '0' && *env <= '9';
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(env, &used);
    if (digits && used == std::string(env).size() && value > 0) {
      return value;
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("HM_BUDGET must be a positive integer");
}

}  // namespace hyperlet
