#include "loggap/log_base.hpp"

#include <cmath>
#include <sstream>

#include "loggap/error.hpp"

namespace loggap {

namespace {

bool checked_pow_equals(std::int64_t base, int p, std::int64_t target) {
  if (base <= 0) return false;
  std::int64_t acc = 1;
  for (int i = 0; i < p; ++i) {
    if (acc > target / base) return false;
    acc *= base;
  }
  return acc == target;
}

}  // namespace

bool is_perfect_power(std::int64_t m, int p) {
  if (p <= 1) return true;
  const auto guess = static_cast<std::int64_t>(
      std::llround(std::pow(static_cast<double>(m), 1.0 / p)));
  for (std::int64_t c = guess - 1; c <= guess + 1; ++c) {
    if (checked_pow_equals(c, p, m)) return true;
  }
  return false;
}

LogBase LogBase::transcendental(double b) {
  if (!(b > 1.0) || !std::isfinite(b)) {
    throw DomainError("logarithm base must be a finite real > 1");
  }
  return LogBase(BaseKind::Transcendental, b, std::log(b), 0, 0);
}

LogBase LogBase::integer(std::int64_t b) {
  if (b < 2) throw DomainError("integer base must be >= 2");
  const double bd = static_cast<double>(b);
  return LogBase(BaseKind::Integer, bd, std::log(bd), b, 1);
}

LogBase LogBase::integer_root(std::int64_t m, int r) {
  if (m < 2) throw DomainError("root base radicand must be >= 2");
  if (r < 1) throw DomainError("root index must be >= 1");
  if (r == 1) {
    throw DomainError("root index r = 1 is an integer base; use LogBase::integer");
  }
  int rest = r;
  for (int p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    if (is_perfect_power(m, p)) {
      std::ostringstream msg;
      msg << "root base " << m << "^(1/" << r << ") is degenerate: " << m
          << " is a perfect " << p << "-th power";
      throw DomainError(msg.str());
    }
  }
  const double log_b = std::log(static_cast<double>(m)) / r;
  return LogBase(BaseKind::IntegerRoot, std::exp(log_b), log_b, m, r);
}

std::string LogBase::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case BaseKind::Transcendental:
      out.precision(17);
      out << b_;
      break;
    case BaseKind::Integer:
      out << "int:" << m_;
      break;
    case BaseKind::IntegerRoot:
      out << "root:" << m_ << ':' << r_;
      break;
  }
  return out.str();
}

}  // namespace loggap
