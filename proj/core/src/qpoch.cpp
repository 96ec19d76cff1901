#include "loggap/qpoch.hpp"

#include <algorithm>
#include <cmath>

#include "loggap/error.hpp"

namespace loggap {

namespace {

void check_nome(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("q-Pochhammer: q must lie in (0, 1)");
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1e-3)) {
    throw DomainError("q-Pochhammer: truncation eps must lie in (0, 1e-3]");
  }
}

// Upper limit on factors; q this close to 1 is outside any base we support.
constexpr std::size_t kMaxTerms = std::size_t{1} << 26;

std::size_t terms_for(double scale, double q, double eps) {
  if (scale <= 0.0) return 1;
  const double bound = std::log(eps * (1.0 - q) / scale) / std::log(q);
  if (bound <= 1.0) return 1;
  const auto j = static_cast<std::size_t>(std::ceil(bound));
  if (j > kMaxTerms) throw DomainError("q-Pochhammer: q too close to 1 for truncation");
  return j;
}

// Jet of prod_{n=0}^{count-1} (1 - a q^n) with the n = 0 factor kept
// symbolic:
//   value = (1 - a) P
//   d1    = -P [1 + (1 - a) S1]
//   d2    =  P [2 S1 + (1 - a)(S1^2 - S2)]
// where P = prod_{n>=1} (1 - a q^n), S1 = sum_{n>=1} q^n/(1 - a q^n) and
// S2 = sum_{n>=1} (q^n/(1 - a q^n))^2.
QPochJet factored_jet(double a, double q, std::size_t count) {
  if (count == 0) return {1.0, 0.0, 0.0};
  double prod = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double qn = 1.0;
  for (std::size_t n = 1; n < count; ++n) {
    qn *= q;
    const double factor = 1.0 - a * qn;
    prod *= factor;
    const double t = qn / factor;
    s1 += t;
    s2 += t * t;
  }
  const double one_minus_a = 1.0 - a;
  return {one_minus_a * prod, -prod * (1.0 + one_minus_a * s1),
          prod * (2.0 * s1 + one_minus_a * (s1 * s1 - s2))};
}

void check_derivative_domain(double a, double q) {
  if (!(a * q < 1.0)) throw DomainError("q-Pochhammer derivative: requires a < 1/q");
}

}  // namespace

std::size_t qpoch_terms(double a, double q, double eps) {
  check_nome(q);
  check_eps(eps);
  return terms_for(std::abs(a), q, eps);
}

double qpoch_inf(double a, double q, double eps) {
  const std::size_t count = qpoch_terms(a, q, eps);
  double prod = 1.0;
  double qn = 1.0;
  for (std::size_t n = 0; n < count; ++n) {
    prod *= 1.0 - a * qn;
    qn *= q;
  }
  return prod;
}

double qpoch_fin(double a, double q, int r) {
  if (r < 0) throw DomainError("finite q-Pochhammer: order must be >= 0");
  double prod = 1.0;
  double qn = 1.0;
  for (int n = 0; n < r; ++n) {
    prod *= 1.0 - a * qn;
    qn *= q;
  }
  return prod;
}

double dqpoch_inf(double a, double q, double eps) {
  check_nome(q);
  check_eps(eps);
  check_derivative_domain(a, q);
  return factored_jet(a, q, terms_for(1.0, q, eps)).d1;
}

double d2qpoch_inf(double a, double q, double eps) {
  check_nome(q);
  check_eps(eps);
  if (!(a < 1.0)) throw DomainError("second q-Pochhammer derivative: requires a < 1");
  return factored_jet(a, q, terms_for(1.0, q, eps)).d2;
}

double dqpoch_fin(double a, double q, int r) {
  if (r < 0) throw DomainError("finite q-Pochhammer: order must be >= 0");
  check_derivative_domain(a, q);
  return factored_jet(a, q, static_cast<std::size_t>(r)).d1;
}

double d2qpoch_fin(double a, double q, int r) {
  if (r < 0) throw DomainError("finite q-Pochhammer: order must be >= 0");
  check_derivative_domain(a, q);
  return factored_jet(a, q, static_cast<std::size_t>(r)).d2;
}

double F_inf(double a, double q, double eps) {
  return a * dqpoch_inf(a, q, eps) - qpoch_inf(a, q, eps);
}

double F_fin(double a, double q, int r) {
  return a * dqpoch_fin(a, q, r) - qpoch_fin(a, q, r);
}

QPoch::QPoch(double q, double eps) : q_(q), eps_(eps) {
  check_nome(q);
  check_eps(eps);
}

QPoch::QPoch(double q, int order) : q_(q), eps_(kDefaultQPochEps), order_(order) {
  check_nome(q);
  if (order < 0) throw DomainError("finite q-Pochhammer: order must be >= 0");
}

double QPoch::value(double a) const {
  return order_ ? qpoch_fin(a, q_, *order_) : qpoch_inf(a, q_, eps_);
}

double QPoch::d1(double a) const {
  return order_ ? dqpoch_fin(a, q_, *order_) : dqpoch_inf(a, q_, eps_);
}

double QPoch::d2(double a) const {
  return order_ ? d2qpoch_fin(a, q_, *order_) : d2qpoch_inf(a, q_, eps_);
}

QPochJet QPoch::jet(double a) const {
  check_derivative_domain(a, q_);
  const std::size_t count =
      order_ ? static_cast<std::size_t>(*order_) : terms_for(1.0, q_, eps_);
  return factored_jet(a, q_, count);
}

double QPoch::F(double a) const {
  const QPochJet j = jet(a);
  return a * j.d1 - j.value;
}

}  // namespace loggap
