#pragma once

#include <cstdint>
#include <vector>

#include "loggap/log_base.hpp"
#include "loggap/mixed_density.hpp"
#include "loggap/qpoch.hpp"

namespace loggap {

/// Limiting density of frac(log_b n - log_b N): rho(x) = ln b/(b - 1) b^x on
/// [0, 1]. Throws DomainError for b <= 1 or x outside [0, 1].
double rho(double x, double b);

/// Integral of rho over [lo, hi] ⊂ [0, 1]: (b^hi - b^lo)/(b - 1).
double rho_mass(double lo, double hi, double b);

/// The q-Pochhammer symbol a limit law is built from: infinite for
/// transcendental bases, of order r for b = m^(1/r) (r = 1 for integers).
QPoch base_symbol(const LogBase& base, double eps = kDefaultQPochEps);

/// R(a, b) as a measure in a: continuous d^2/da^2 (a; 1/b) on (0, 1) and an
/// atom at a = 1 of mass (1/b; 1/b) (root bases: (1/b; 1/b)_{r-1}, with the
/// order-r symbol in the continuous part).
MixedDensity limit_R(const LogBase& base, double eps = kDefaultQPochEps);

/// Limiting gap distribution P(s) of frac(log_b n).
///
/// Continuous part on (0, 1/ln b) and (1/ln b, b/ln b) in terms of
/// F(a) = a (a; q)' - (a; q); integer and root bases add an atom 1/b^r at
/// s = 0. The CDF is closed-form:
///   CDF(s) = 1 - [(a0; q) - (a1; q)] / (s ln b),
/// a0 = min(1, s ln b / b), a1 = min(1, s ln b).
MixedDensity limit_gap_density(const LogBase& base, double eps = kDefaultQPochEps);

/// Limiting gap distribution of the unfolded sequence:
/// (1 - 1/b)^2 R((1 - 1/b) s, b), plus an atom 1/b^r at 0 for integer and
/// root bases. CDF(u) = 1 + (1 - q) (a; q)'|_{a = (1-q) u} below the top atom.
MixedDensity rescaled_limit_density(const LogBase& base, double eps = kDefaultQPochEps);

/// Joint limit law P(x, s) of (position, following gap) for the shifted
/// sequence: (b^{x-1} ln b)^2 R(s b^{x-1} ln b, b).
class JointLimit {
 public:
  explicit JointLimit(const LogBase& base, double eps = kDefaultQPochEps);

  /// Continuous part at (x, s). Throws DomainError for x outside [0, 1].
  double density(double x, double s) const;
  /// Point masses in s for fixed x: the top atom at s = b^{1-x}/ln b and,
  /// for integer and root bases, the zero-gap atom.
  std::vector<Atom> atoms(double x) const;
  /// The measure s -> P(x, s); its total mass is rho(x).
  MixedDensity slice(double x) const;

  const LogBase& base() const { return base_; }

 private:
  LogBase base_;
  QPoch symbol_;
  double atom_weight_;
};

/// Result of a family evaluation with the truncation actually used.
struct FamilyValue {
  double value = 0.0;
  std::int64_t J = 0;
  /// Upper bound L b^{-J} on the mass of the dropped progressions.
  double tail_estimate = 0.0;
};

/// Default starting truncation: ceil(log(1e-10)/log(1/b)), capped at 2000.
std::int64_t default_family_truncation(double b);

/// E^{(b)}(k, L): window-count law of the superposition with frequencies
/// (b - 1) b^{-j}, j = 1..J. With J <= 0 the truncation starts at
/// default_family_truncation() and doubles until the value moves by < 1e-10.
FamilyValue family_E(double b, std::int64_t k, double L, std::int64_t J = 0);

/// E^{(b)} for one base with the convergence settings fixed.
class FamilyStats {
 public:
  explicit FamilyStats(double b, std::int64_t J = 0);
  double b() const { return b_; }
  FamilyValue evaluate(std::int64_t k, double L) const { return family_E(b_, k, L, J_); }

 private:
  double b_;
  std::int64_t J_;
};

}  // namespace loggap
