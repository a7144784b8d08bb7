#include "report.hpp"

#include <cstdio>
#include <iostream>
#include <stdexcept>

namespace hyperlet::cli {

Output::Output(const std::string& path) {
  if (path.empty() || path == "-") {
    stdout_ = &std::cout;
    return;
  }
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*file_) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
}

std::string format_real(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

void write_estimate_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kEstimateHeader << '\n';
  for (const auto& r : rows) {
    out << r.key << ',' << r.samples << ',' << format_real(r.inv_sigma_sum) << ','
        << format_real(r.colorful_estimate) << ',' << format_real(r.relative_frequency) << '\n';
  }
}

}  // namespace hyperlet::cli
