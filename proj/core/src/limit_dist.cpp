#include "loggap/limit_dist.hpp"

#include <algorithm>
#include <cmath>

#include "loggap/error.hpp"
#include "loggap/quadrature.hpp"
#include "loggap/superposition.hpp"

namespace loggap {

namespace {

bool is_finite_symbol(const LogBase& base) { return base.kind() != BaseKind::Transcendental; }

// Mass of the zero-gap atom, 1/b^r = 1/m. Zero for transcendental bases.
double zero_gap_mass(const LogBase& base) {
  return is_finite_symbol(base) ? 1.0 / static_cast<double>(base.radicand()) : 0.0;
}

// (q; q) for transcendental bases, (q; q)_{r-1} otherwise.
double top_atom_weight(const LogBase& base, double eps) {
  const double q = base.q();
  return is_finite_symbol(base) ? qpoch_fin(q, q, base.root_index() - 1)
                                : qpoch_inf(q, q, eps);
}

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + ": x must lie in [0, 1]");
}

}  // namespace

double rho(double x, double b) {
  if (!(b > 1.0)) throw DomainError("rho: base must be > 1");
  check_unit(x, "rho");
  const double lnb = std::log(b);
  return std::log1p(b - 1.0) / (b - 1.0) * std::exp(x * lnb);
}

double rho_mass(double lo, double hi, double b) {
  if (!(b > 1.0)) throw DomainError("rho_mass: base must be > 1");
  check_unit(lo, "rho_mass");
  check_unit(hi, "rho_mass");
  const double lnb = std::log(b);
  return std::exp(lo * lnb) * std::expm1((hi - lo) * lnb) / (b - 1.0);
}

QPoch base_symbol(const LogBase& base, double eps) {
  if (is_finite_symbol(base)) return QPoch(base.q(), base.root_index());
  return QPoch(base.q(), eps);
}

MixedDensity limit_R(const LogBase& base, double eps) {
  const QPoch sym = base_symbol(base, eps);
  const double atom = top_atom_weight(base, eps);
  const double q = base.q();
  const double nominal = is_finite_symbol(base)
                             ? (1.0 - std::pow(q, base.root_index())) / (1.0 - q)
                             : 1.0 / (1.0 - q);
  std::vector<DensityPiece> pieces;
  if (base.kind() != BaseKind::Integer) {
    pieces.push_back({0.0, 1.0, [sym](double a) { return sym.d2(a); }});
  }
  auto cdf = [sym, atom](double a) {
    if (a <= 0.0) return 0.0;
    const double top = std::min(a, 1.0);
    return sym.d1(top) - sym.d1(0.0) + (a >= 1.0 ? atom : 0.0);
  };
  return MixedDensity({{1.0, atom}}, std::move(pieces), nominal, cdf);
}

MixedDensity limit_gap_density(const LogBase& base, double eps) {
  const QPoch sym = base_symbol(base, eps);
  const double lnb = base.log_value();
  const double q = base.q();
  const double b = base.value();
  const double s_mid = 1.0 / lnb;
  const double s_top = b / lnb;
  const double zero_atom = zero_gap_mass(base);

  std::vector<Atom> atoms;
  if (zero_atom > 0.0) atoms.push_back({0.0, zero_atom});

  const double density_at_zero = 0.5 * lnb * (1.0 - q * q) * sym.d2(0.0);
  auto lower = [sym, lnb, q, density_at_zero](double s) {
    if (s <= 0.0) return density_at_zero;
    const double a1 = s * lnb;
    const double scale = 1.0 / (s * s * lnb);
    // F(a1) - F(a1 q) as the integral of F'(a) = a (a; q)''. The
    // difference itself loses ~1/a1^2 digits, which adaptive quadrature of
    // the density then chases forever.
    return scale * gauss_legendre([&](double a) { return a * sym.d2(a); }, a1 * q, a1);
  };
  std::vector<DensityPiece> pieces;
  if (base.kind() == BaseKind::Integer) {
    pieces.push_back({s_mid, s_top, [lnb](double s) { return 1.0 / (lnb * s * s); }});
  } else {
    pieces.push_back({0.0, s_mid, lower});
    pieces.push_back({s_mid, s_top, [sym, lnb, q](double s) {
                        return -sym.F(s * q * lnb) / (s * s * lnb);
                      }});
  }

  auto cdf = [sym, lnb, q, s_top, zero_atom, lower](double s) {
    if (s < 0.0) return 0.0;
    if (s == 0.0) return zero_atom;
    if (s >= s_top) return 1.0;
    const double a1 = s * lnb;
    if (a1 < 1e-3) return zero_atom + gauss_legendre(lower, 0.0, s);
    const double a0 = std::min(1.0, a1 * q);
    const double value = 1.0 - (sym.value(a0) - sym.value(std::min(1.0, a1))) / a1;
    return std::clamp(value, 0.0, 1.0);
  };
  return MixedDensity(std::move(atoms), std::move(pieces), 1.0, cdf);
}

MixedDensity rescaled_limit_density(const LogBase& base, double eps) {
  const QPoch sym = base_symbol(base, eps);
  const double c = 1.0 - base.q();
  const double top = 1.0 / c;
  const double zero_atom = zero_gap_mass(base);

  std::vector<Atom> atoms;
  if (zero_atom > 0.0) atoms.push_back({0.0, zero_atom});
  atoms.push_back({top, c * top_atom_weight(base, eps)});

  std::vector<DensityPiece> pieces;
  if (base.kind() != BaseKind::Integer) {
    pieces.push_back({0.0, top, [sym, c](double u) { return c * c * sym.d2(c * u); }});
  }
  auto cdf = [sym, c, top, zero_atom](double u) {
    if (u < 0.0) return 0.0;
    if (u == 0.0) return zero_atom;
    if (u >= top) return 1.0;
    return std::clamp(1.0 + c * sym.d1(c * u), 0.0, 1.0);
  };
  return MixedDensity(std::move(atoms), std::move(pieces), 1.0, cdf);
}

JointLimit::JointLimit(const LogBase& base, double eps)
    : base_(base), symbol_(base_symbol(base, eps)), atom_weight_(top_atom_weight(base, eps)) {}

double JointLimit::density(double x, double s) const {
  check_unit(x, "joint density");
  if (s < 0.0 || base_.kind() == BaseKind::Integer) return 0.0;
  const double scale = std::exp((x - 1.0) * base_.log_value()) * base_.log_value();
  const double a = s * scale;
  if (a >= 1.0) return 0.0;
  return scale * scale * symbol_.d2(a);
}

std::vector<Atom> JointLimit::atoms(double x) const {
  check_unit(x, "joint atoms");
  const double lnb = base_.log_value();
  const double scale = std::exp((x - 1.0) * lnb) * lnb;
  std::vector<Atom> out;
  if (is_finite_symbol(base_)) {
    out.push_back({0.0, rho(x, base_.value()) / static_cast<double>(base_.radicand())});
  }
  out.push_back({1.0 / scale, scale * atom_weight_});
  return out;
}

MixedDensity JointLimit::slice(double x) const {
  const double weight = rho(x, base_.value());
  const double lnb = base_.log_value();
  const double scale = std::exp((x - 1.0) * lnb) * lnb;
  std::vector<DensityPiece> pieces;
  if (base_.kind() != BaseKind::Integer) {
    pieces.push_back({0.0, 1.0 / scale, [self = *this, x](double s) { return self.density(x, s); }});
  }
  MixedDensity rescaled = rescaled_limit_density(base_, symbol_.eps());
  auto cdf = [rescaled, weight](double s) { return weight * rescaled.cdf(weight * s); };
  return MixedDensity(atoms(x), std::move(pieces), weight, cdf);
}

std::int64_t default_family_truncation(double b) {
  if (!(b > 1.0)) throw DomainError("family truncation: base must be > 1");
  // The small slack keeps exact powers (b = 10 gives 10) from rounding up.
  const double j = std::ceil(std::log(1e-10) / std::log(1.0 / b) - 1e-9);
  return static_cast<std::int64_t>(std::clamp(j, 1.0, 2000.0));
}

namespace {

constexpr std::int64_t kFamilyMaxTruncation = std::int64_t{1} << 25;

FamilyValue family_at(double b, std::int64_t k, double L, std::int64_t J) {
  const double lnb = std::log(b);
  std::vector<double> omegas(static_cast<std::size_t>(J));
  for (std::int64_t j = 1; j <= J; ++j) {
    omegas[static_cast<std::size_t>(j - 1)] = (b - 1.0) * std::exp(-static_cast<double>(j) * lnb);
  }
  return {E_conv(k, L, omegas), J, L * std::exp(-static_cast<double>(J) * lnb)};
}

}  // namespace

FamilyValue family_E(double b, std::int64_t k, double L, std::int64_t J) {
  if (!(b > 1.0)) throw DomainError("family_E: base must be > 1");
  if (!(L >= 0.0)) throw DomainError("family_E: L must be >= 0");
  if (k < 0) throw DomainError("family_E: k must be >= 0");
  if (J > 0) return family_at(b, k, L, J);

  FamilyValue current = family_at(b, k, L, default_family_truncation(b));
  while (current.J < kFamilyMaxTruncation) {
    FamilyValue refined = family_at(b, k, L, 2 * current.J);
    const bool converged = std::abs(refined.value - current.value) < 1e-10;
    current = refined;
    if (converged) break;
  }
  return current;
}

FamilyStats::FamilyStats(double b, std::int64_t J) : b_(b), J_(J) {
  if (!(b > 1.0)) throw DomainError("FamilyStats: base must be > 1");
}

}  // namespace loggap
