#include "loggap/superposition.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <queue>
#include <tuple>

#include "loggap/error.hpp"
#include "loggap/parallel.hpp"

namespace loggap {

CountingModel::CountingModel(std::vector<double> omegas, std::vector<double> betas)
    : omegas_(std::move(omegas)), betas_(std::move(betas)) {
  if (omegas_.empty()) throw EmptyInputError("CountingModel: need at least one frequency");
  if (betas_.size() != omegas_.size()) {
    throw PreconditionError("CountingModel: one phase per frequency required");
  }
  for (double w : omegas_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DomainError("CountingModel: frequencies must be finite and > 0");
    }
  }
}

CountingModel::CountingModel(std::vector<double> omegas)
    : CountingModel(omegas, std::vector<double>(omegas.size(), 0.0)) {}

double CountingModel::intensity() const {
  double total = 0.0;
  for (double w : omegas_) total += w;
  return total;
}

double nearest_int_dist(double x) { return std::abs(x - std::nearbyint(x)); }

bool window_count_identity_holds(double x, double L, std::int64_t k) {
  const double d = nearest_int_dist(x - 0.5 * static_cast<double>(k));
  const auto kd = static_cast<double>(k);
  return d >= 0.5 * (kd - L) && d > 0.5 * (L - kd);
}

std::int64_t lattice_count(double x, double L) {
  if (!(L >= 0.0)) throw DomainError("lattice_count: L must be >= 0");
  const double hi = std::floor(x + 0.5 * L);
  const double lo = std::ceil(x - 0.5 * L);
  const auto n = std::max<std::int64_t>(0, static_cast<std::int64_t>(hi - lo) + 1);
  assert(window_count_identity_holds(x, L, n));
  return n;
}

WindowCount window_count(const CountingModel& model, double t, double L) {
  WindowCount out;
  out.t = t;
  out.L = L;
  out.per_progression.reserve(model.size());
  for (std::size_t j = 0; j < model.size(); ++j) {
    const double w = model.omegas()[j];
    const std::int64_t nj = lattice_count(w * (t - model.betas()[j]), w * L);
    assert(w * L - 1.0 < static_cast<double>(nj) + 1e-9 &&
           static_cast<double>(nj) <= w * L + 1.0 + 1e-9);
    out.per_progression.push_back(nj);
    out.total += nj;
  }
  return out;
}

double E1(std::int64_t k, double L) {
  const auto kd = static_cast<double>(k);
  if (k < 0 || !(L - 1.0 < kd && kd < L + 1.0)) return 0.0;
  return 1.0 - std::abs(kd - L);
}

std::vector<double> E_conv_table(std::int64_t k_max, double L,
                                 std::span<const double> omegas) {
  if (k_max < 0) return {};
  const auto width = static_cast<std::size_t>(k_max) + 1;
  std::vector<double> dist(width, 0.0);
  std::vector<double> next(width, 0.0);
  dist[0] = 1.0;
  for (double w : omegas) {
    const double x = w * L;
    // E1(., x) is supported on floor(x) and floor(x) + 1.
    const auto base = static_cast<std::int64_t>(std::floor(x));
    const double p_lo = E1(base, x);
    const double p_hi = E1(base + 1, x);
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < width; ++i) {
      if (dist[i] == 0.0) continue;
      const auto lo_idx = static_cast<std::int64_t>(i) + base;
      if (lo_idx <= k_max) next[static_cast<std::size_t>(lo_idx)] += dist[i] * p_lo;
      if (lo_idx + 1 <= k_max) next[static_cast<std::size_t>(lo_idx + 1)] += dist[i] * p_hi;
    }
    dist.swap(next);
  }
  return dist;
}

double E_conv(std::int64_t k, double L, std::span<const double> omegas) {
  if (k < 0) return 0.0;
  return E_conv_table(k, L, omegas).back();
}

namespace {

// Elementary-symmetric style accumulation over f_j = 1 - omega_j s:
//   A0 = prod f_j
//   A1 = sum_h omega_h prod_{j != h} f_j
//   A2 = sum_{h < i} omega_h omega_i prod_{j != h,i} f_j
struct PairSums {
  double a0 = 1.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

PairSums pair_sums(std::span<const double> omegas, double s) {
  PairSums acc;
  for (double w : omegas) {
    const double f = 1.0 - w * s;
    acc.a2 = acc.a2 * f + acc.a1 * w;
    acc.a1 = acc.a1 * f + acc.a0 * w;
    acc.a0 *= f;
  }
  return acc;
}

}  // namespace

MixedDensity gap_density_omega(std::span<const double> omegas) {
  if (omegas.empty()) throw EmptyInputError("gap_density_omega: no frequencies");
  for (std::size_t j = 0; j < omegas.size(); ++j) {
    if (!(omegas[j] > 0.0)) throw DomainError("gap_density_omega: frequencies must be > 0");
    if (j > 0 && omegas[j] > omegas[j - 1]) {
      throw PreconditionError("gap_density_omega: frequencies must be sorted descending");
    }
    if (j > 0 && omegas[j] == omegas[0]) {
      throw PreconditionError("gap_density_omega: largest frequency must be unique");
    }
  }
  std::vector<double> w(omegas.begin(), omegas.end());
  const double w1 = w.front();
  double intensity = 0.0;
  for (double x : w) intensity += x;

  double atom = w1;
  for (std::size_t j = 1; j < w.size(); ++j) atom *= 1.0 - w[j] / w1;

  std::vector<DensityPiece> pieces;
  if (w.size() > 1) {
    pieces.push_back({0.0, 1.0 / w1, [w](double s) { return 2.0 * pair_sums(w, s).a2; }});
  }
  auto cdf = [w, w1, intensity](double s) {
    if (s >= 1.0 / w1) return intensity;
    return intensity - pair_sums(w, s).a1;
  };
  return MixedDensity({{1.0 / w1, atom}}, std::move(pieces), intensity, cdf);
}

std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser applied to a seed-keyed counter
  auto mix = [](std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed + 0x9E3779B97F4A7C15ULL) + index * 0x9E3779B97F4A7C15ULL);
}

double counter_uniform(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(counter_bits(seed, index) >> 11) * 0x1.0p-53;
}

McEstimate mc_estimate_E(const CountingModel& model, std::int64_t k, double L,
                         double a, double b, double T, std::size_t samples,
                         std::uint64_t seed) {
  if (samples == 0) throw EmptyInputError("mc_estimate_E: samples must be >= 1");
  if (!(a < b)) throw PreconditionError("mc_estimate_E: need a < b");
  if (!(L >= 0.0)) throw DomainError("mc_estimate_E: L must be >= 0");
  const double lo = a * T;
  const double span = (b - a) * T;
  std::atomic<std::size_t> hits{0};
  parallel_for_chunks(samples, [&](std::size_t begin, std::size_t end) {
    std::size_t local = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const double t = lo + span * counter_uniform(seed, i);
      if (window_count(model, t, L).total == k) ++local;
    }
    hits += local;
  });
  McEstimate out;
  out.hits = hits.load();
  out.samples = samples;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

std::vector<double> enumerate_gaps(const CountingModel& model, double lo, double hi) {
  std::vector<double> gaps;
  if (!(hi > lo)) return gaps;
  // (point, progression, index)
  using Entry = std::tuple<double, std::size_t, double>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  const auto omegas = model.omegas();
  const auto betas = model.betas();
  auto point = [&](std::size_t j, double m) { return betas[j] + m / omegas[j]; };
  for (std::size_t j = 0; j < model.size(); ++j) {
    double m = std::ceil((lo - betas[j]) * omegas[j]);
    while (point(j, m) < lo) m += 1.0;
    if (point(j, m) <= hi) heap.emplace(point(j, m), j, m);
  }
  bool have_prev = false;
  double prev = 0.0;
  while (!heap.empty()) {
    const auto [x, j, m] = heap.top();
    heap.pop();
    if (have_prev) gaps.push_back(x - prev);
    prev = x;
    have_prev = true;
    const double next = point(j, m + 1.0);
    if (next <= hi) heap.emplace(next, j, m + 1.0);
  }
  return gaps;
}

}  // namespace loggap
