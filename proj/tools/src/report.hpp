#pragma once

#include <fstream>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hyperlet/count.hpp"
#include "hyperlet/sampler.hpp"

namespace hyperlet::cli {

/// stdout for "" or "-", else a truncated file. Throws std::runtime_error.
class Output {
 public:
  explicit Output(const std::string& path);
  std::ostream& stream() { return file_ ? *file_ : *stdout_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stdout_ = nullptr;
};

/// Shortest-stable text for a long double: "%.17Lg".
std::string format_real(long double x);

struct CsvRow {
  std::string key;
  std::uint64_t samples = 0;
  long double inv_sigma_sum = 0;
  long double colorful_estimate = 0;
  long double relative_frequency = 0;
};

inline constexpr const char* kEstimateHeader =
    "key,samples,inv_sigma_sum,colorful_estimate,relative_frequency";

void write_estimate_csv(std::ostream& out, const std::vector<CsvRow>& rows);

}  // namespace hyperlet::cli
