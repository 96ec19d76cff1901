#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "loggap/mixed_density.hpp"
#include "loggap/sequence.hpp"

namespace loggap {

/// Step-function CDF of a sample: F(s) = #{values <= s} / n.
class EmpiricalCDF {
 public:
  explicit EmpiricalCDF(std::vector<double> values);

  std::size_t size() const { return sorted_.size(); }
  std::span<const double> sorted() const { return sorted_; }
  double operator()(double s) const;
  /// F(s-) = #{values < s} / n.
  double left(double s) const;
  /// Fraction of samples exactly equal to 0.
  double zero_fraction() const;

 private:
  std::vector<double> sorted_;
};

/// Throws EmptyInputError on an empty sample.
EmpiricalCDF empirical_cdf(const GapSample& gaps);
EmpiricalCDF empirical_cdf(std::span<const double> values);

/// Relative tolerance within which a computed gap is read as sitting on a
/// theoretical atom. Exact repeated gaps pick up rounding jitter when formed
/// as N (v_{i+1} - v_i), which would otherwise split an atom into two steps.
inline constexpr double kAtomSnapTolerance = 1e-6;

struct KsOptions {
  /// Skip the comparison at atom locations (both sides), e.g. to judge the
  /// continuous part separately from a zero-gap atom.
  bool exclude_atoms = false;
  /// Snap sample values onto nearby atoms first (see snap_to_atoms); 0 disables.
  double atom_snap = kAtomSnapTolerance;
};

/// Copy of values with every entry within rel_tol * max(1, location) of an
/// atom location replaced by that location.
std::vector<double> snap_to_atoms(std::span<const double> values, std::span<const Atom> atoms,
                                  double rel_tol = kAtomSnapTolerance);
GapSample snap_to_atoms(GapSample gaps, std::span<const Atom> atoms,
                        double rel_tol = kAtomSnapTolerance);

/// sup_s |F_emp(s) - F(s)| for a probability law, checked on both sides of
/// every sample point and every atom, which is where a step function and a
/// monotone CDF can be furthest apart.
double ks_distance(const EmpiricalCDF& emp, const MixedDensity& theory,
                   KsOptions options = {});

/// Two-sample sup distance between empirical CDFs.
double ks_distance(const EmpiricalCDF& lhs, const EmpiricalCDF& rhs);

/// sup over [0, s_max] of |F(s) - (1 - e^{-s})|, sampled on a uniform grid
/// plus both sides of every breakpoint.
double sup_distance_to_exponential(const MixedDensity& theory, double s_max,
                                   std::size_t grid = 20000);

/// Counts of (anchor, scaled gap) pairs over [0, 1] x [0, s_max]. Gaps at or
/// beyond s_max land in a per-x overflow cell.
class JointHistogram {
 public:
  JointHistogram(std::size_t x_bins, std::size_t s_bins, double s_max);

  void add(double x, double s);

  std::size_t x_bins() const { return x_bins_; }
  std::size_t s_bins() const { return s_bins_; }
  double s_max() const { return s_max_; }
  double x_width() const { return 1.0 / static_cast<double>(x_bins_); }
  double s_width() const { return s_max_ / static_cast<double>(s_bins_); }
  std::size_t total() const { return total_; }

  std::size_t count(std::size_t xi, std::size_t si) const { return counts_[xi * s_bins_ + si]; }
  std::size_t overflow(std::size_t xi) const { return overflow_[xi]; }
  std::size_t overflow_total() const;

  /// Sum over x bins (overflow excluded).
  std::vector<std::size_t> s_marginal() const;
  /// Sum over s bins, overflow included.
  std::vector<std::size_t> x_marginal() const;

 private:
  std::size_t x_bins_;
  std::size_t s_bins_;
  double s_max_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> overflow_;
  std::size_t total_ = 0;
};

JointHistogram joint_histogram(const GapSample& gaps, std::size_t x_bins,
                               std::size_t s_bins, double s_max);

/// 1-D histogram of values over [0, s_max] normalised to a density
/// (count / (n * width)); values >= s_max are dropped.
std::vector<double> histogram_density(std::span<const double> values,
                                      std::size_t bins, double s_max);

/// Gap CDFs conditioned on the anchor lying in each of x_bins equal slices of
/// [0, 1].
std::vector<EmpiricalCDF> conditional_gap_cdfs(const GapSample& gaps, std::size_t x_bins);

/// Fraction of values in [lo, hi). Requires 0 <= lo < hi <= 1.
double density_fraction(std::span<const double> values, double lo, double hi);

/// sum_i |p_i - q_i| for two binned mass vectors of equal length.
double l1_distance(std::span<const double> lhs, std::span<const double> rhs);

struct AtomError {
  double location = 0.0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double error = 0.0;
};

struct ComparisonReport {
  double sup_cdf_distance = 0.0;
  double l1_density_distance = 0.0;
  std::vector<AtomError> atom_mass_errors;
  std::size_t sample_size = 0;
  std::vector<std::string> notes;
};

/// Empirical-vs-theory summary: sup CDF distance, binned L1 distance of the
/// masses over [0, s_max] (atoms counted in their bin) and one entry per atom.
/// An atom at 0 is matched against the exact-zero fraction; any other atom
/// against the sample mass within half a bin of it, with the theoretical side
/// being the full law's mass over the same window.
ComparisonReport compare(const EmpiricalCDF& emp, const MixedDensity& theory,
                         std::size_t bins, double s_max, KsOptions options = {});

}  // namespace loggap
