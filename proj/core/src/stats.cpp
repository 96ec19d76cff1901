#include "loggap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "loggap/error.hpp"

namespace loggap {

EmpiricalCDF::EmpiricalCDF(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw EmptyInputError("empirical CDF of an empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double s) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), s);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCDF::left(double s) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), s);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCDF::zero_fraction() const { return (*this)(0.0) - left(0.0); }

EmpiricalCDF empirical_cdf(const GapSample& gaps) {
  if (gaps.scaled_gaps.empty()) throw EmptyInputError("empirical_cdf: empty gap sample");
  return EmpiricalCDF(gaps.scaled_gaps);
}

EmpiricalCDF empirical_cdf(std::span<const double> values) {
  if (values.empty()) throw EmptyInputError("empirical_cdf: empty sample");
  return EmpiricalCDF(std::vector<double>(values.begin(), values.end()));
}

std::vector<double> snap_to_atoms(std::span<const double> values, std::span<const Atom> atoms,
                                  double rel_tol) {
  std::vector<double> out(values.begin(), values.end());
  if (!(rel_tol > 0.0)) return out;
  for (double& v : out) {
    for (const Atom& a : atoms) {
      if (std::abs(v - a.location) <= rel_tol * std::max(1.0, std::abs(a.location))) {
        v = a.location;
        break;
      }
    }
  }
  return out;
}

GapSample snap_to_atoms(GapSample gaps, std::span<const Atom> atoms, double rel_tol) {
  gaps.scaled_gaps = snap_to_atoms(gaps.scaled_gaps, atoms, rel_tol);
  return gaps;
}

double ks_distance(const EmpiricalCDF& raw_emp, const MixedDensity& theory, KsOptions options) {
  const auto atoms = theory.atoms();
  const bool snap = options.atom_snap > 0.0 && !atoms.empty();
  std::optional<EmpiricalCDF> snapped;
  if (snap) snapped.emplace(snap_to_atoms(raw_emp.sorted(), atoms, options.atom_snap));
  const EmpiricalCDF& emp = snapped ? *snapped : raw_emp;
  auto is_atom = [&](double s) {
    return std::any_of(atoms.begin(), atoms.end(),
                       [s](const Atom& a) { return a.location == s; });
  };
  double worst = 0.0;
  auto probe = [&](double s) {
    if (options.exclude_atoms && is_atom(s)) return;
    worst = std::max(worst, std::abs(emp(s) - theory.cdf(s)));
    worst = std::max(worst, std::abs(emp.left(s) - theory.cdf_left(s)));
  };
  const auto values = emp.sorted();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] == values[i - 1]) continue;
    probe(values[i]);
  }
  for (const Atom& a : atoms) probe(a.location);
  return worst;
}

double ks_distance(const EmpiricalCDF& lhs, const EmpiricalCDF& rhs) {
  double worst = 0.0;
  for (const auto* sample : {&lhs, &rhs}) {
    for (double s : sample->sorted()) {
      worst = std::max(worst, std::abs(lhs(s) - rhs(s)));
    }
  }
  return worst;
}

double sup_distance_to_exponential(const MixedDensity& theory, double s_max,
                                   std::size_t grid) {
  auto exp_cdf = [](double s) { return s <= 0.0 ? 0.0 : -std::expm1(-s); };
  double worst = 0.0;
  auto probe = [&](double s) {
    worst = std::max(worst, std::abs(theory.cdf(s) - exp_cdf(s)));
    worst = std::max(worst, std::abs(theory.cdf_left(s) - exp_cdf(s)));
  };
  for (std::size_t i = 0; i <= grid; ++i) {
    probe(s_max * static_cast<double>(i) / static_cast<double>(grid));
  }
  for (double b : theory.breakpoints()) {
    if (b <= s_max) probe(b);
  }
  return worst;
}

JointHistogram::JointHistogram(std::size_t x_bins, std::size_t s_bins, double s_max)
    : x_bins_(x_bins), s_bins_(s_bins), s_max_(s_max) {
  if (x_bins == 0 || s_bins == 0) throw DomainError("JointHistogram: bin counts must be >= 1");
  if (!(s_max > 0.0)) throw DomainError("JointHistogram: s_max must be > 0");
  counts_.assign(x_bins * s_bins, 0);
  overflow_.assign(x_bins, 0);
}

void JointHistogram::add(double x, double s) {
  const auto xb = std::min(x_bins_ - 1,
                           static_cast<std::size_t>(std::max(0.0, x) * static_cast<double>(x_bins_)));
  ++total_;
  if (s >= s_max_) {
    ++overflow_[xb];
    return;
  }
  const auto sb = std::min(s_bins_ - 1,
                           static_cast<std::size_t>(std::max(0.0, s) / s_width()));
  ++counts_[xb * s_bins_ + sb];
}

std::size_t JointHistogram::overflow_total() const {
  std::size_t total = 0;
  for (std::size_t c : overflow_) total += c;
  return total;
}

std::vector<std::size_t> JointHistogram::s_marginal() const {
  std::vector<std::size_t> out(s_bins_, 0);
  for (std::size_t xi = 0; xi < x_bins_; ++xi) {
    for (std::size_t si = 0; si < s_bins_; ++si) out[si] += count(xi, si);
  }
  return out;
}

std::vector<std::size_t> JointHistogram::x_marginal() const {
  std::vector<std::size_t> out(x_bins_, 0);
  for (std::size_t xi = 0; xi < x_bins_; ++xi) {
    out[xi] = overflow_[xi];
    for (std::size_t si = 0; si < s_bins_; ++si) out[xi] += count(xi, si);
  }
  return out;
}

JointHistogram joint_histogram(const GapSample& gaps, std::size_t x_bins,
                               std::size_t s_bins, double s_max) {
  JointHistogram hist(x_bins, s_bins, s_max);
  for (std::size_t i = 0; i < gaps.size(); ++i) hist.add(gaps.anchors[i], gaps.scaled_gaps[i]);
  return hist;
}

std::vector<double> histogram_density(std::span<const double> values, std::size_t bins,
                                      double s_max) {
  if (bins == 0 || !(s_max > 0.0)) throw DomainError("histogram_density: need bins >= 1, s_max > 0");
  std::vector<double> out(bins, 0.0);
  if (values.empty()) return out;
  const double width = s_max / static_cast<double>(bins);
  for (double v : values) {
    if (v < 0.0 || v >= s_max) continue;
    out[std::min(bins - 1, static_cast<std::size_t>(v / width))] += 1.0;
  }
  const double norm = 1.0 / (static_cast<double>(values.size()) * width);
  for (double& c : out) c *= norm;
  return out;
}

std::vector<EmpiricalCDF> conditional_gap_cdfs(const GapSample& gaps, std::size_t x_bins) {
  if (x_bins == 0) throw DomainError("conditional_gap_cdfs: x_bins must be >= 1");
  std::vector<std::vector<double>> buckets(x_bins);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const auto xb = std::min(x_bins - 1, static_cast<std::size_t>(
                                             gaps.anchors[i] * static_cast<double>(x_bins)));
    buckets[xb].push_back(gaps.scaled_gaps[i]);
  }
  std::vector<EmpiricalCDF> out;
  out.reserve(x_bins);
  for (auto& bucket : buckets) out.emplace_back(std::move(bucket));
  return out;
}

double density_fraction(std::span<const double> values, double lo, double hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    throw DomainError("density_fraction: need 0 <= lo < hi <= 1");
  }
  if (values.empty()) throw EmptyInputError("density_fraction: empty sample");
  const auto inside = std::count_if(values.begin(), values.end(),
                                    [&](double v) { return v >= lo && v < hi; });
  return static_cast<double>(inside) / static_cast<double>(values.size());
}

double l1_distance(std::span<const double> lhs, std::span<const double> rhs) {
  if (lhs.size() != rhs.size()) throw PreconditionError("l1_distance: length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) total += std::abs(lhs[i] - rhs[i]);
  return total;
}

ComparisonReport compare(const EmpiricalCDF& emp, const MixedDensity& theory,
                         std::size_t bins, double s_max, KsOptions options) {
  if (bins == 0 || !(s_max > 0.0)) throw DomainError("compare: need bins >= 1, s_max > 0");
  ComparisonReport report;
  report.sample_size = emp.size();
  report.sup_cdf_distance = ks_distance(emp, theory, options);

  const double width = s_max / static_cast<double>(bins);
  std::vector<double> emp_mass(bins);
  std::vector<double> theory_mass(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    const double lo = width * static_cast<double>(i);
    const double hi = i + 1 == bins ? s_max : lo + width;
    emp_mass[i] = emp.left(hi) - emp.left(lo);
    theory_mass[i] = theory.cdf_left(hi) - theory.cdf_left(lo);
  }
  report.l1_density_distance = l1_distance(emp_mass, theory_mass);
  const double beyond = 1.0 - emp.left(s_max);
  if (beyond > 0.0) {
    report.notes.push_back("sample mass beyond s_max: " + std::to_string(beyond));
  }

  for (const Atom& a : theory.atoms()) {
    AtomError e;
    e.location = a.location;
    if (a.location == 0.0) {
      e.empirical = emp(0.0) - emp.left(0.0);
      e.theoretical = a.mass;
    } else {
      const double w = 0.5 * width;
      e.empirical = emp(a.location + w) - emp.left(a.location - w);
      e.theoretical = theory.cdf(a.location + w) - theory.cdf_left(a.location - w);
    }
    e.error = std::abs(e.empirical - e.theoretical);
    report.atom_mass_errors.push_back(e);
  }
  return report;
}

}  // namespace loggap
