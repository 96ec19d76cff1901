#pragma once

#include <cstddef>
#include <optional>

namespace loggap {

inline constexpr double kDefaultQPochEps = 1e-12;

/// Value and first two a-derivatives of a q-Pochhammer symbol at one point.
struct QPochJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Number of factors J kept for the infinite product (a; q): the smallest J
/// with |a| q^J / (1 - q) <= eps.
std::size_t qpoch_terms(double a, double q, double eps);

/// (a; q)_inf = prod_{n >= 0} (1 - a q^n), truncated at qpoch_terms().
/// Requires 0 < q < 1 and eps in (0, 1e-3].
double qpoch_inf(double a, double q, double eps = kDefaultQPochEps);

/// (a; q)_r = prod_{n = 0}^{r-1} (1 - a q^n); r = 0 gives 1.
double qpoch_fin(double a, double q, int r);

/// d/da (a; q)_inf = -(a; q) sum_j 1/(q^-j - a).
///
/// Evaluated with the factor (1 - a) pulled out of the product, so a = 1
/// returns the analytic limit -(q; q)_inf instead of 0 * inf. Requires
/// a < 1/q.
double dqpoch_inf(double a, double q, double eps = kDefaultQPochEps);

/// d^2/da^2 (a; q)_inf = (a; q) (S1^2 - S2) with S1 = sum 1/(q^-j - a) and
/// S2 = sum 1/(q^-j - a)^2. Requires a < 1.
double d2qpoch_inf(double a, double q, double eps = kDefaultQPochEps);

double dqpoch_fin(double a, double q, int r);
double d2qpoch_fin(double a, double q, int r);

/// F(a) = a d/da (a; q) - (a; q).
double F_inf(double a, double q, double eps = kDefaultQPochEps);
/// F_r(a) = a d/da (a; q)_r - (a; q)_r.
double F_fin(double a, double q, int r);

/// A q-Pochhammer symbol with fixed nome, either infinite or of finite order r.
/// Used by the limit distributions, which switch between the two.
class QPoch {
 public:
  /// Infinite symbol.
  explicit QPoch(double q, double eps = kDefaultQPochEps);
  /// Finite symbol of order r >= 0.
  QPoch(double q, int order);

  double q() const { return q_; }
  double eps() const { return eps_; }
  std::optional<int> order() const { return order_; }
  bool finite() const { return order_.has_value(); }

  double value(double a) const;
  double d1(double a) const;
  double d2(double a) const;
  QPochJet jet(double a) const;
  /// a d1(a) - value(a).
  double F(double a) const;

 private:
  double q_;
  double eps_;
  std::optional<int> order_;
};

}  // namespace loggap
