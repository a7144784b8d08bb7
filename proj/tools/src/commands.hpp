#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyperlet::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;     // negative verdict (ksh, ov)
inline constexpr int kExitError = 1;  // module error, with a diagnostic
inline constexpr int kExitUsage = 2;

struct Config {
  std::vector<std::string> inputs;
  unsigned k = 3;
  std::string alpha = "auto";  // auto | naive | integer
  double gamma = 0.01;
  std::uint64_t seed = 1;
  unsigned runs = 1;
  std::uint64_t samples = 10000;
  unsigned threads = 1;
  bool uniform = false;
  bool ie_extract = false;
  bool no_dedupe = false;
  bool colorful = false;
  std::string out;
  std::string meta;
  std::string log;
  std::string table;
  std::string token_map;
  std::string lower_out;
  std::string upper_out;
  std::string method = "auto";

  // gen-synthetic and bench
  std::string model = "powerlaw";
  std::size_t n = 1000;
  std::size_t m = 500;
  double exponent = 3.0;
  std::size_t max_size = 20;
  std::size_t gen_alpha = 4;
  std::size_t gen_beta = 2;
  std::size_t large_size = 16;
  double small_fraction = 0.9;
  std::vector<std::size_t> sizes{500, 1000, 2000, 4000};
  unsigned reps = 1;
};

int cmd_stats(const Config& c);
int cmd_curve(const Config& c);
int cmd_split(const Config& c);
int cmd_build(const Config& c);
int cmd_sample(const Config& c);
int cmd_count(const Config& c);
int cmd_exact(const Config& c);
int cmd_reduce_clique(const Config& c);
int cmd_ksh(const Config& c);
int cmd_ov(const Config& c);
int cmd_gen_synthetic(const Config& c);
int cmd_bench(const Config& c);

}  // namespace hyperlet::cli
