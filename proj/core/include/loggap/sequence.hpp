#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "loggap/log_base.hpp"

namespace loggap {

/// Which point set an ordered sample was built from.
enum class Provenance {
  Raw,       ///< frac(log_b n)
  Shifted,   ///< frac(log_b n - log_b N)
  Unfolded,  ///< (b^eta - 1)/(b - 1) applied to the shifted set
  External,  ///< caller-supplied values
};

/// Sorted fractional parts 0 <= v_1 <= ... <= v_N < 1 plus the wrap element
/// v_{N+1} = v_1 + 1.
struct OrderedFracs {
  std::size_t n_count = 0;
  std::vector<double> values;
  double wrap = 0.0;
  Provenance provenance = Provenance::External;
};

/// Scaled nearest-neighbour gaps N (v_{n+1} - v_n), wrap gap included, with
/// the left endpoint of each gap kept as its anchor.
struct GapSample {
  std::vector<double> scaled_gaps;
  std::vector<double> anchors;

  std::size_t size() const { return scaled_gaps.size(); }
};

/// x - floor(x), with results within 1e-12 of 1 snapped to 0 so that ties
/// which are exact in theory but perturbed by rounding land on the same value.
double frac_mod1(double x);

/// xi_n = frac(log_b n), n = 1..N, unsorted.
///
/// For integer and root bases every factor of m is stripped from n before the
/// logarithm is taken, so the exact collisions xi_n = xi_{m n} hold
/// bit-for-bit.
std::vector<double> generate_raw(const LogBase& base, std::size_t n);

/// eta_n = frac(log_b n - log_b N), n = 1..N. A rigid rotation of the raw
/// sequence mod 1, so the ordered gaps are the same multiset.
std::vector<double> generate_shifted(const LogBase& base, std::size_t n);

/// T(x) = (b^x - 1)/(b - 1) for x in [0, 1). Throws DomainError otherwise.
double unfold_value(double eta, const LogBase& base);

/// Applies unfold_value elementwise.
std::vector<double> unfold(std::span<const double> etas, const LogBase& base);

/// Closed form of the unfolded point: for N b^-k <= n < N b^(1-k),
/// T(frac(log_b(n/N))) = (b^k n - N) / (N (b - 1)).
double unfolded_closed_form(const LogBase& base, std::uint64_t n, std::uint64_t total);

/// Stable-sorts the values, appends the wrap element and extracts the scaled
/// gaps. Throws EmptyInputError on empty input and DomainError if a value is
/// outside [0, 1).
std::pair<OrderedFracs, GapSample> order_and_gaps(
    std::span<const double> values, Provenance provenance = Provenance::External);

/// Convenience: generate, optionally shift/unfold, then order.
std::pair<OrderedFracs, GapSample> sequence_gaps(const LogBase& base,
                                                 std::size_t n,
                                                 Provenance which);

}  // namespace loggap
