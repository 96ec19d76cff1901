#pragma once

#include <cstdint>
#include <string>

namespace loggap {

enum class BaseKind { Transcendental, Integer, IntegerRoot };

/// A logarithm base b > 1 together with its arithmetic class.
///
/// The class decides which limit law applies. Transcendence cannot be tested
/// numerically, so a Transcendental base is whatever the caller declares as
/// one. Integer and IntegerRoot bases carry (m, r) with b = m^(1/r); an
/// Integer base is stored with r = 1.
class LogBase {
 public:
  static LogBase transcendental(double b);
  static LogBase integer(std::int64_t b);
  /// b = m^(1/r). Requires r >= 2 and m^(1/p) irrational for every prime p | r.
  static LogBase integer_root(std::int64_t m, int r);

  BaseKind kind() const { return kind_; }
  double value() const { return b_; }
  double log_value() const { return log_b_; }
  /// q = 1/b, the nome of the associated q-Pochhammer symbols.
  double q() const { return 1.0 / b_; }
  /// Radicand m (Integer: m = b). Zero for transcendental bases.
  std::int64_t radicand() const { return m_; }
  /// Root index r (Integer: 1). Zero for transcendental bases.
  int root_index() const { return r_; }

  bool has_collisions() const { return kind_ != BaseKind::Transcendental; }

  /// Human-readable form matching the command-line syntax: "2.718...",
  /// "int:10", "root:10:2".
  std::string describe() const;

 private:
  LogBase(BaseKind kind, double b, double log_b, std::int64_t m, int r)
      : kind_(kind), b_(b), log_b_(log_b), m_(m), r_(r) {}

  BaseKind kind_;
  double b_;
  double log_b_;
  std::int64_t m_;
  int r_;
};

/// True when m is a perfect p-th power of an integer.
bool is_perfect_power(std::int64_t m, int p);

}  // namespace loggap
