#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperlet {

// Treelet counts grow combinatorially and routinely pass 2^64 on dense
// inputs, so every counter is a 128-bit unsigned integer with checked
// arithmetic. Wrapping is never acceptable.
using Count = unsigned __int128;

class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Count checked_add(Count a, Count b, const char* what = "counter") {
  Count out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError(std::string("128-bit overflow in ") + what);
  }
  return out;
}

inline Count checked_mul(Count a, Count b, const char* what = "counter") {
  Count out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError(std::string("128-bit overflow in ") + what);
  }
  return out;
}

inline Count checked_sub(Count a, Count b, const char* what = "counter") {
  if (b > a) {
    throw OverflowError(std::string("negative result in ") + what);
  }
  return a - b;
}

std::string to_string(Count value);
Count parse_count(std::string_view text);

inline long double to_long_double(Count value) {
  const auto hi = static_cast<std::uint64_t>(value >> 64);
  const auto lo = static_cast<std::uint64_t>(value);
  return static_cast<long double>(hi) * 18446744073709551616.0L + static_cast<long double>(lo);
}

}  // namespace hyperlet
