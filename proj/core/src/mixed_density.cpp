#include "loggap/mixed_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loggap/error.hpp"
#include "loggap/quadrature.hpp"

namespace loggap {

MixedDensity::MixedDensity(std::vector<Atom> atoms, std::vector<DensityPiece> pieces,
                           double nominal_mass,
                           std::function<double(double)> analytic_cdf)
    : atoms_(std::move(atoms)),
      pieces_(std::move(pieces)),
      nominal_mass_(nominal_mass),
      analytic_cdf_(std::move(analytic_cdf)) {
  for (const Atom& a : atoms_) {
    if (!(a.location >= 0.0) || !(a.mass >= 0.0)) {
      throw DomainError("MixedDensity: atoms need location >= 0 and mass >= 0");
    }
  }
  for (const DensityPiece& p : pieces_) {
    if (!(p.lo >= 0.0 && p.hi > p.lo) || !p.density) {
      throw DomainError("MixedDensity: pieces need 0 <= lo < hi and an evaluator");
    }
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
}

double MixedDensity::density(double s) const {
  double total = 0.0;
  for (const DensityPiece& p : pieces_) {
    if (s >= p.lo && s < p.hi) total += p.density(s);
  }
  return total;
}

double MixedDensity::atom_mass_at(double s) const {
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (a.location == s) total += a.mass;
  }
  return total;
}

double MixedDensity::cdf(double s) const {
  if (s < 0.0) return 0.0;
  if (std::isinf(s)) return nominal_mass_;
  return analytic_cdf_ ? analytic_cdf_(s) : quadrature_cdf(s);
}

double MixedDensity::quadrature_cdf(double s) const {
  if (s < 0.0) return 0.0;
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (a.location <= s) total += a.mass;
  }
  for (const DensityPiece& p : pieces_) {
    const double hi = std::min(s, p.hi);
    if (hi > p.lo) total += integrate(p.density, p.lo, hi);
  }
  return total;
}

double MixedDensity::quadrature_moment(int order) const {
  double total = 0.0;
  for (const Atom& a : atoms_) total += a.mass * std::pow(a.location, order);
  for (const DensityPiece& p : pieces_) {
    const auto& f = p.density;
    total += integrate([&](double s) { return std::pow(s, order) * f(s); }, p.lo, p.hi);
  }
  return total;
}

std::vector<double> MixedDensity::breakpoints() const {
  std::vector<double> out;
  for (const DensityPiece& p : pieces_) {
    out.push_back(p.lo);
    out.push_back(p.hi);
  }
  for (const Atom& a : atoms_) out.push_back(a.location);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double MixedDensity::support_max() const {
  double top = 0.0;
  for (const DensityPiece& p : pieces_) top = std::max(top, p.hi);
  for (const Atom& a : atoms_) {
    if (a.mass > 0.0) top = std::max(top, a.location);
  }
  return top;
}

}  // namespace loggap
