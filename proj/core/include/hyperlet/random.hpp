#pragma once

#include <cstdint>
#include <random>

#include "hyperlet/count.hpp"

namespace hyperlet {

using Rng = std::mt19937_64;

// Stream tags for deriving independent generators from one user seed.
enum class Stream : std::uint64_t {
  kColoring = 1,
  kSampling = 2,
  kGenerator = 3,
  kCorpus = 4,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seed for stream `stream`, sub-stream `index` of the user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream))) + index);
}

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Rng(derive_seed(seed, stream, index));
}

/// Uniform integer in [0, bound), bound > 0. Rejection sampling, so the
/// stream is the same on every standard library.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform 128-bit integer in [0, bound), bound > 0.
inline Count uniform_below(Rng& rng, Count bound) {
  if ((bound >> 64) == 0) {
    return uniform_below(rng, static_cast<std::uint64_t>(bound));
  }
  const Count all = ~Count{0};
  const Count limit = all - (all % bound);
  Count x;
  do {
    x = (Count{rng()} << 64) | Count{rng()};
  } while (x >= limit);
  return x % bound;
}

/// Uniform double in [0, 1).
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace hyperlet
