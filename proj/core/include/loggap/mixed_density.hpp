#pragma once

#include <functional>
#include <span>
#include <vector>

namespace loggap {

/// Dirac point mass.
struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Continuous density on the half-open interval [lo, hi).
struct DensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> density;
};

/// A measure on [0, inf) made of finitely many atoms and piecewise
/// continuous parts.
///
/// Probability laws have nominal mass 1; intensity measures (the
/// superposition gap density) carry their intensity instead. Atoms are kept
/// as data and never smoothed. The CDF is right-continuous and, when an
/// analytic antiderivative is supplied, uses it; otherwise it integrates the
/// pieces numerically, splitting at the piece boundaries.
class MixedDensity {
 public:
  MixedDensity(std::vector<Atom> atoms, std::vector<DensityPiece> pieces,
               double nominal_mass,
               std::function<double(double)> analytic_cdf = {});

  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const DensityPiece> pieces() const { return pieces_; }
  double total_mass() const { return nominal_mass_; }
  bool has_analytic_cdf() const { return static_cast<bool>(analytic_cdf_); }

  /// Continuous part at s; pieces are right-continuous at their boundaries.
  double density(double s) const;
  /// Sum of atom masses located exactly at s.
  double atom_mass_at(double s) const;

  /// Mass of [0, s].
  double cdf(double s) const;
  /// Mass of [0, s).
  double cdf_left(double s) const { return cdf(s) - atom_mass_at(s); }
  /// Mass of (s, inf).
  double ccdf(double s) const { return total_mass() - cdf(s); }

  /// Always-numeric CDF; used to cross-check the analytic one.
  double quadrature_cdf(double s) const;
  /// Atoms plus integrated pieces.
  double quadrature_mass() const { return quadrature_moment(0); }
  /// Integral of s^order against the measure, atoms included.
  double quadrature_moment(int order) const;

  /// Sorted piece boundaries and atom locations.
  std::vector<double> breakpoints() const;
  /// Largest point carrying mass.
  double support_max() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  double nominal_mass_;
  std::function<double(double)> analytic_cdf_;
};

}  // namespace loggap
