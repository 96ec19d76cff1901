#include "cli/base_spec.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace loggap::cli {

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (text.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
    throw UsageError(std::string(what) + ": not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text, std::string_view what) {
  long long value = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw UsageError(std::string(what) + ": not an integer: '" + std::string(text) + "'");
  }
  return value;
}

LogBase parse_base(std::string_view spec) {
  try {
    if (spec == "e") return LogBase::transcendental(std::numbers::e);
    if (spec == "pi") return LogBase::transcendental(std::numbers::pi);
    if (spec.starts_with("int:")) {
      return LogBase::integer(parse_integer(spec.substr(4), "base"));
    }
    if (spec.starts_with("root:")) {
      const std::string_view rest = spec.substr(5);
      const auto colon = rest.find(':');
      if (colon == std::string_view::npos) {
        throw UsageError("base: expected root:<m>:<r>, got '" + std::string(spec) + "'");
      }
      const long long m = parse_integer(rest.substr(0, colon), "base radicand");
      const long long r = parse_integer(rest.substr(colon + 1), "base root index");
      if (r < 1 || r > 1000000) throw UsageError("base: root index out of range");
      return LogBase::integer_root(m, static_cast<int>(r));
    }
    return LogBase::transcendental(parse_double(spec, "base"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("base '") + std::string(spec) + "': " + e.what());
  }
}

}  // namespace loggap::cli
