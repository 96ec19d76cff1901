#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "loggap/mixed_density.hpp"

namespace loggap {

/// Frequencies omega_1..omega_J > 0 and phases beta_1..beta_J describing the
/// multiset union of the progressions beta_j + omega_j^{-1} Z.
class CountingModel {
 public:
  CountingModel(std::vector<double> omegas, std::vector<double> betas);
  /// All phases zero.
  explicit CountingModel(std::vector<double> omegas);

  std::span<const double> omegas() const { return omegas_; }
  std::span<const double> betas() const { return betas_; }
  std::size_t size() const { return omegas_.size(); }
  /// sum_j omega_j, the asymptotic density of points.
  double intensity() const;

 private:
  std::vector<double> omegas_;
  std::vector<double> betas_;
};

struct WindowCount {
  double t = 0.0;
  double L = 0.0;
  std::vector<std::int64_t> per_progression;
  std::int64_t total = 0;
};

/// |x|_Z: distance from x to the nearest integer, in [0, 1/2].
double nearest_int_dist(double x);

/// n(x, L) = |[x - L/2, x + L/2] ∩ Z|, both ends closed.
std::int64_t lattice_count(double x, double L);

/// The characterisation n(x, L) = k iff |x - k/2|_Z >= (k - L)/2 and
/// |x - k/2|_Z > (L - k)/2.
bool window_count_identity_holds(double x, double L, std::int64_t k);

/// N_j(t, L) for every progression and their sum.
WindowCount window_count(const CountingModel& model, double t, double L);

/// Window-count law of a single randomly shifted lattice:
/// 1 - |k - L| for L - 1 < k < L + 1, else 0.
double E1(std::int64_t k, double L);

/// E(k, L) = sum over k_1 + ... + k_J = k of prod_j E1(k_j, omega_j L),
/// computed by sequential convolution truncated at k (O(J k)).
double E_conv(std::int64_t k, double L, std::span<const double> omegas);

/// E(0..k_max, L) in one pass.
std::vector<double> E_conv_table(std::int64_t k_max, double L,
                                 std::span<const double> omegas);

/// Limiting gap density P_omega of the superposition: an atom
/// omega_1 prod_{j>=2}(1 - omega_j/omega_1) at 1/omega_1 and the continuous
/// part sum_{h != i} omega_h omega_i prod_{j != h,i}(1 - omega_j s) below it.
/// Total mass is the intensity sum_j omega_j.
///
/// Requires omegas sorted non-increasing with omega_1 strictly largest;
/// throws PreconditionError otherwise.
MixedDensity gap_density_omega(std::span<const double> omegas);

/// Counter-based generator: a pure function of (seed, index).
std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t index);
/// Uniform double in [0, 1) derived from counter_bits.
double counter_uniform(std::uint64_t seed, std::uint64_t index);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t hits = 0;
  std::size_t samples = 0;
};

/// Fraction of t drawn uniformly from [a T, b T] with N(t, L) = k.
///
/// Sample i uses counter_uniform(seed, i), so the result is bit-identical for
/// a given (seed, samples) however the work is sharded. Rational
/// independence of the frequencies is the caller's responsibility.
McEstimate mc_estimate_E(const CountingModel& model, std::int64_t k, double L,
                         double a, double b, double T, std::size_t samples,
                         std::uint64_t seed);

/// Consecutive differences of the sorted points of the model inside
/// [lo, hi]; coincident points give zero gaps. Empty when hi <= lo.
std::vector<double> enumerate_gaps(const CountingModel& model, double lo, double hi);

}  // namespace loggap
