#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace loggap::cli {

/// Shortest round-trip decimal form of x ("nan", "inf", "-inf" for
/// non-finite values). Independent of locale and stream state.
std::string format_number(double x);
std::string format_number(std::int64_t x);
std::string format_number(std::uint64_t x);

/// Minimal CSV emitter: comma separated, '.' decimal point, LF endings.
/// Lines starting with '#' carry run metadata and precede the header.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void meta(std::string_view key, std::string_view value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace loggap::cli
