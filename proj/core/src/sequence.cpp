#include "loggap/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "loggap/error.hpp"
#include "loggap/parallel.hpp"

namespace loggap {

namespace {

constexpr double kSnap = 1e-12;

double log_base_of(const LogBase& base, double log_m, std::uint64_t n) {
  if (base.kind() == BaseKind::Transcendental) {
    return std::log(static_cast<double>(n)) / base.log_value();
  }
  const auto m = static_cast<std::uint64_t>(base.radicand());
  while (n % m == 0) n /= m;
  return base.root_index() * (std::log(static_cast<double>(n)) / log_m);
}

}  // namespace

double frac_mod1(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0 - kSnap) f = 0.0;
  return f;
}

std::vector<double> generate_raw(const LogBase& base, std::size_t n) {
  if (n == 0) throw EmptyInputError("sequence length N must be >= 1");
  const double log_m =
      base.has_collisions() ? std::log(static_cast<double>(base.radicand())) : 0.0;
  std::vector<double> out(n);
  parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = frac_mod1(log_base_of(base, log_m, i + 1));
    }
  });
  return out;
}

std::vector<double> generate_shifted(const LogBase& base, std::size_t n) {
  std::vector<double> xi = generate_raw(base, n);
  const double offset = xi[n - 1];
  parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) xi[i] = frac_mod1(xi[i] - offset);
  });
  return xi;
}

double unfold_value(double eta, const LogBase& base) {
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw DomainError("unfold: input must lie in [0, 1)");
  }
  const double t = std::expm1(eta * base.log_value()) / (base.value() - 1.0);
  return std::min(t, std::nextafter(1.0, 0.0));
}

std::vector<double> unfold(std::span<const double> etas, const LogBase& base) {
  std::vector<double> out(etas.size());
  for (double e : etas) {
    if (!(e >= 0.0 && e < 1.0)) throw DomainError("unfold: input must lie in [0, 1)");
  }
  parallel_for_chunks(etas.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = unfold_value(etas[i], base);
  });
  return out;
}

double unfolded_closed_form(const LogBase& base, std::uint64_t n, std::uint64_t total) {
  if (n == 0 || n > total) throw DomainError("unfolded_closed_form: need 1 <= n <= N");
  const double ratio = static_cast<double>(total) / static_cast<double>(n);
  // smallest k >= 0 with N b^-k <= n, i.e. k = ceil(log_b(N/n))
  auto k = static_cast<int>(std::ceil(std::log(ratio) / base.log_value() - 1e-12));
  k = std::max(k, 0);
  const double bk = std::exp(k * base.log_value());
  return (bk * static_cast<double>(n) - static_cast<double>(total)) /
         (static_cast<double>(total) * (base.value() - 1.0));
}

std::pair<OrderedFracs, GapSample> order_and_gaps(std::span<const double> values,
                                                  Provenance provenance) {
  if (values.empty()) throw EmptyInputError("order_and_gaps: empty input");
  OrderedFracs ordered;
  ordered.n_count = values.size();
  ordered.provenance = provenance;
  ordered.values.assign(values.begin(), values.end());
  for (double v : ordered.values) {
    if (!(v >= 0.0 && v < 1.0)) throw DomainError("order_and_gaps: values must lie in [0, 1)");
  }
  std::stable_sort(ordered.values.begin(), ordered.values.end());
  ordered.wrap = ordered.values.front() + 1.0;

  const std::size_t n = ordered.n_count;
  const auto scale = static_cast<double>(n);
  GapSample gaps;
  gaps.scaled_gaps.resize(n);
  gaps.anchors = ordered.values;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    gaps.scaled_gaps[i] = scale * (ordered.values[i + 1] - ordered.values[i]);
  }
  gaps.scaled_gaps[n - 1] = scale * (ordered.wrap - ordered.values[n - 1]);
  return {std::move(ordered), std::move(gaps)};
}

std::pair<OrderedFracs, GapSample> sequence_gaps(const LogBase& base, std::size_t n,
                                                 Provenance which) {
  switch (which) {
    case Provenance::Raw:
      return order_and_gaps(generate_raw(base, n), which);
    case Provenance::Shifted:
      return order_and_gaps(generate_shifted(base, n), which);
    case Provenance::Unfolded:
      return order_and_gaps(unfold(generate_shifted(base, n), base), which);
    case Provenance::External:
      break;
  }
  throw PreconditionError("sequence_gaps: provenance must name a generated sequence");
}

}  // namespace loggap
