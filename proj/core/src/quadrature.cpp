#include "loggap/quadrature.hpp"

#include <algorithm>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace loggap {

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol) {
  if (!(hi > lo)) return 0.0;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  // The rule's stopping test weighs an error estimate taken on [-1, 1]
  // against a tolerance scaled by the true width, so on narrow intervals it
  // can never stop. Integrating over [0, 1] keeps the two on one scale.
  const double width = hi - lo;
  auto unit = [&](double t) { return width * f(lo + width * t); };
  return Rule::integrate(unit, 0.0, 1.0, 15, rel_tol);
}

double integrate_piecewise(const std::function<double(double)>& f, double lo,
                           double hi, std::span<const double> breakpoints,
                           double rel_tol) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> cuts{lo};
  for (double b : breakpoints) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(f, cuts[i], cuts[i + 1], rel_tol);
  }
  return total;
}

double gauss_legendre(const std::function<double(double)>& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return boost::math::quadrature::gauss<double, 20>::integrate(f, lo, hi);
}

}  // namespace loggap
