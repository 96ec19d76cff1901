#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>

#include "loggap/error.hpp"
#include "loggap/superposition.hpp"

namespace loggap {
namespace {

const std::vector<double> kIrrational = {1.0, std::sqrt(2.0), std::sqrt(3.0)};

TEST(Lattice, NearestIntegerDistance) {
  EXPECT_DOUBLE_EQ(nearest_int_dist(0.25), 0.25);
  EXPECT_DOUBLE_EQ(nearest_int_dist(0.75), 0.25);
  EXPECT_DOUBLE_EQ(nearest_int_dist(-1.5), 0.5);
  EXPECT_DOUBLE_EQ(nearest_int_dist(3.0), 0.0);
}

TEST(Lattice, CountExamples) {
  EXPECT_EQ(lattice_count(0.2, 1.0), 1);
  EXPECT_EQ(lattice_count(0.5, 1.0), 2);
  EXPECT_EQ(lattice_count(0.5, 0.99), 0);
  EXPECT_EQ(lattice_count(-3.7, 4.0), 4);
  EXPECT_EQ(lattice_count(0.0, 0.0), 1);
}

TEST(Lattice, WindowCountIdentityProperty) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> ux(-50.0, 50.0);
  std::uniform_real_distribution<double> uL(0.0, 6.0);
  for (int trial = 0; trial < 20000; ++trial) {
    const double x = ux(rng);
    const double L = uL(rng);
    const std::int64_t n = lattice_count(x, L);
    for (std::int64_t k = 0; k <= 8; ++k) {
      ASSERT_EQ(window_count_identity_holds(x, L, k), k == n) << x << ' ' << L << ' ' << k;
    }
  }
}

TEST(WindowCount, Examples) {
  const CountingModel one({1.0}, {0.0});
  const WindowCount w = window_count(one, 0.2, 1.0);
  EXPECT_EQ(w.total, 1);
  ASSERT_EQ(w.per_progression.size(), 1u);

  const CountingModel model(kIrrational);
  const double L = 1e4;
  const WindowCount big = window_count(model, 17.3, L);
  EXPECT_LE(std::abs(static_cast<double>(big.total) / L - model.intensity()), 3 * 2.0 / L);
}

TEST(WindowCount, PhaseShiftsAreRespected) {
  const CountingModel shifted({1.0}, {0.5});
  EXPECT_EQ(window_count(shifted, 0.0, 0.5).total, 0);
  EXPECT_EQ(window_count(shifted, 0.5, 0.1).total, 1);
  const CountingModel dense({2.0}, {0.0});
  EXPECT_EQ(window_count(dense, 0.25, 0.5).total, 2);
}

TEST(CountingModelTest, Validation) {
  EXPECT_THROW(CountingModel(std::vector<double>{}), EmptyInputError);
  EXPECT_THROW(CountingModel({1.0, -0.5}), DomainError);
  EXPECT_THROW(CountingModel({1.0, 0.5}, {0.0}), PreconditionError);
  EXPECT_DOUBLE_EQ(CountingModel({0.6, 0.4}).intensity(), 1.0);
}

TEST(E1Test, Examples) {
  EXPECT_NEAR(E1(0, 0.3), 0.7, 1e-15);
  EXPECT_NEAR(E1(1, 0.3), 0.3, 1e-15);
  EXPECT_EQ(E1(2, 0.3), 0.0);
  EXPECT_NEAR(E1(2, 2.25), 0.75, 1e-15);
  EXPECT_NEAR(E1(3, 2.25), 0.25, 1e-15);
  EXPECT_EQ(E1(-1, 0.3), 0.0);
}

TEST(E1Test, MatchesLatticeAverage) {
  // E1(k, L) is the measure of x in [0, 1) with n(x, L) = k.
  const int grid = 200000;
  for (double L : {0.3, 1.0, 1.7, 2.5}) {
    std::vector<int> counts(6, 0);
    for (int i = 0; i < grid; ++i) ++counts[lattice_count((i + 0.5) / grid, L)];
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(counts[k] / double(grid), E1(k, L), 1e-4) << L << ' ' << k;
  }
}

TEST(EConv, Examples) {
  const std::vector<double> om = {0.5, 0.3};
  EXPECT_NEAR(E_conv(0, 1.0, om), 0.35, 1e-15);
  EXPECT_NEAR(E_conv(1, 1.0, om), 0.50, 1e-15);
  EXPECT_NEAR(E_conv(2, 1.0, om), 0.15, 1e-15);
  EXPECT_EQ(E_conv(3, 1.0, om), 0.0);
}

TEST(EConv, EmptyWindowProduct) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> om(1 + trial % 6);
    for (double& w : om) w = u(rng);
    const double wmax = *std::max_element(om.begin(), om.end());
    const double L = u(rng) * 1.5 / wmax;
    double prod = 1.0;
    for (double w : om) prod *= std::max(0.0, 1.0 - w * L);
    EXPECT_NEAR(E_conv(0, L, om), L < 1.0 / wmax ? prod : 0.0, 1e-14);
  }
}

TEST(EConv, SumsToOne) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> om(1 + trial % 8);
    for (double& w : om) w = u(rng);
    const double L = u(rng) * 3.0;
    const std::vector<double> table = E_conv_table(64, L, om);
    const double total = std::accumulate(table.begin(), table.end(), 0.0);
    EXPECT_NEAR(total, 1.0, 1e-13);
    for (double v : table) EXPECT_GE(v, 0.0);
    EXPECT_NEAR(table[3], E_conv(3, L, om), 1e-15);
  }
}

TEST(EConv, BruteForceCompositionSum) {
  const std::vector<double> om = {0.9, 0.7, 0.45, 0.2};
  const double L = 1.8;
  for (int k = 0; k <= 6; ++k) {
    double total = 0.0;
    for (int a = 0; a <= k; ++a)
      for (int b = 0; a + b <= k; ++b)
        for (int c = 0; a + b + c <= k; ++c) {
          const int d = k - a - b - c;
          total += E1(a, om[0] * L) * E1(b, om[1] * L) * E1(c, om[2] * L) * E1(d, om[3] * L);
        }
    EXPECT_NEAR(E_conv(k, L, om), total, 1e-15) << k;
  }
}

TEST(GapDensityOmega, SingleProgression) {
  const std::vector<double> om = {0.7};
  const MixedDensity p = gap_density_omega(om);
  ASSERT_EQ(p.atoms().size(), 1u);
  EXPECT_NEAR(p.atoms()[0].location, 1.0 / 0.7, 1e-15);
  EXPECT_NEAR(p.atoms()[0].mass, 0.7, 1e-15);
  EXPECT_NEAR(p.quadrature_moment(1), 1.0, 1e-14);
}

TEST(GapDensityOmega, TwoProgressions) {
  const std::vector<double> om = {0.6, 0.4};
  const MixedDensity p = gap_density_omega(om);
  ASSERT_EQ(p.atoms().size(), 1u);
  EXPECT_NEAR(p.atoms()[0].location, 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.atoms()[0].mass, 0.2, 1e-15);
  EXPECT_NEAR(p.density(0.3), 0.48, 1e-15);
  EXPECT_EQ(p.density(5.0 / 3.0 + 1e-9), 0.0);
  EXPECT_NEAR(p.quadrature_mass(), 1.0, 1e-13);
  EXPECT_NEAR(p.quadrature_moment(1), 1.0, 1e-13);
  EXPECT_NEAR(p.cdf(1.0), 0.48, 1e-14);
  EXPECT_NEAR(p.cdf(5.0 / 3.0), 1.0, 1e-14);
}

TEST(GapDensityOmega, Preconditions) {
  EXPECT_THROW(gap_density_omega(std::vector<double>{0.5, 0.5}), PreconditionError);
  EXPECT_THROW(gap_density_omega(std::vector<double>{0.4, 0.6}), PreconditionError);
  EXPECT_THROW(gap_density_omega(std::vector<double>{}), EmptyInputError);
}

TEST(GapDensityOmega, SecondDerivativeOfEmptyWindow) {
  const std::vector<double> om = {0.6, 0.4};
  const MixedDensity p = gap_density_omega(om);
  const double h = 1e-4;
  for (double s : {0.1, 0.5, 1.0, 1.5, 1.6}) {
    const double fd = (E_conv(0, s + h, om) - 2 * E_conv(0, s, om) + E_conv(0, s - h, om)) / (h * h);
    EXPECT_NEAR(fd, p.density(s), 1e-6) << s;
  }
}

TEST(GapDensityOmega, RandomFrequencySets) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> om(1 + trial % 8);
    for (double& w : om) w = u(rng);
    std::sort(om.begin(), om.end(), std::greater<>());
    if (om.size() > 1 && om[0] == om[1]) continue;
    const MixedDensity p = gap_density_omega(om);
    const double intensity = std::accumulate(om.begin(), om.end(), 0.0);
    EXPECT_NEAR(p.quadrature_mass(), intensity, 1e-8);
    EXPECT_NEAR(p.quadrature_moment(1), 1.0, 1e-8);
    EXPECT_NEAR(p.cdf(1.0 / om[0]), intensity, 1e-12);
    const double h = 1e-4;
    for (double frac : {0.2, 0.55, 0.9}) {
      const double s = frac / om[0];
      const double fd = (E_conv(0, s + h, om) - 2 * E_conv(0, s, om) + E_conv(0, s - h, om)) / (h * h);
      EXPECT_NEAR(fd, p.density(s), 1e-6 * std::max(1.0, intensity * intensity));
      EXPECT_NEAR(p.cdf(s), p.quadrature_cdf(s), 1e-12);
    }
  }
}

TEST(CounterRng, PureFunctionOfSeedAndIndex) {
  EXPECT_EQ(counter_bits(7, 123), counter_bits(7, 123));
  EXPECT_NE(counter_bits(7, 123), counter_bits(7, 124));
  EXPECT_NE(counter_bits(7, 123), counter_bits(8, 123));
  double mean = 0.0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double u = counter_uniform(3, i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    mean += u;
  }
  EXPECT_NEAR(mean / 100000, 0.5, 0.005);
}

TEST(MonteCarlo, MatchesConvolutionFormula) {
  const CountingModel model(kIrrational);
  const McEstimate est = mc_estimate_E(model, 0, 0.5, 0.0, 1.0, 1e4, 100000, 7);
  EXPECT_EQ(est.samples, 100000u);
  const double want = E_conv(0, 0.5, kIrrational);
  EXPECT_NEAR(want, 0.01962012536240418, 1e-15);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_LE(std::abs(est.estimate - want), 3 * est.std_error);
}

TEST(MonteCarlo, RandomPhasesSameLimit) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> betas(3);
  for (double& b : betas) b = u(rng);
  const CountingModel model(kIrrational, betas);
  for (std::int64_t k = 0; k <= 2; ++k) {
    const McEstimate est = mc_estimate_E(model, k, 0.5, 0.0, 1.0, 1e4, 100000, 19);
    EXPECT_LE(std::abs(est.estimate - E_conv(k, 0.5, kIrrational)), 3 * est.std_error) << k;
  }
}

TEST(MonteCarlo, BitIdenticalAcrossThreadCounts) {
  const CountingModel model(kIrrational);
  setenv("LOGGAP_THREADS", "1", 1);
  const McEstimate a = mc_estimate_E(model, 3, 0.9, 0.0, 1.0, 1e4, 60000, 42);
  setenv("LOGGAP_THREADS", "4", 1);
  const McEstimate b = mc_estimate_E(model, 3, 0.9, 0.0, 1.0, 1e4, 60000, 42);
  unsetenv("LOGGAP_THREADS");
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.estimate, b.estimate);
  const McEstimate c = mc_estimate_E(model, 3, 0.9, 0.0, 1.0, 1e4, 60000, 43);
  EXPECT_NE(a.hits, c.hits);
}

TEST(MonteCarlo, RationallyDependentFrequenciesDisagree) {
  // Two identical progressions with equal phases coincide, so counts are
  // always even and the factorised law cannot hold.
  const std::vector<double> om = {1.0, 1.0};
  const CountingModel model(om);
  const McEstimate one = mc_estimate_E(model, 1, 0.5, 0.0, 1.0, 1e4, 20000, 5);
  EXPECT_EQ(one.hits, 0u);
  EXPECT_GT(E_conv(1, 0.5, om), 0.4);
  EXPECT_GT(std::abs(one.estimate - E_conv(1, 0.5, om)), 10 * std::max(one.std_error, 1e-3));
}

TEST(MonteCarlo, Validation) {
  const CountingModel model(kIrrational);
  EXPECT_THROW(mc_estimate_E(model, 0, 0.5, 0.0, 1.0, 1e4, 0, 1), EmptyInputError);
  EXPECT_THROW(mc_estimate_E(model, 0, 0.5, 1.0, 0.5, 1e4, 10, 1), PreconditionError);
}

TEST(Enumerate, UnitLattice) {
  const std::vector<double> gaps = enumerate_gaps(CountingModel({1.0}, {0.0}), 0.0, 10.0);
  ASSERT_EQ(gaps.size(), 10u);
  for (double g : gaps) EXPECT_DOUBLE_EQ(g, 1.0);
  EXPECT_TRUE(enumerate_gaps(CountingModel({1.0}), 5.0, 5.0).empty());
  EXPECT_TRUE(enumerate_gaps(CountingModel({1.0}), 5.0, 2.0).empty());
}

TEST(Enumerate, IrrationalPairHasNoZeroGaps) {
  const std::vector<double> gaps =
      enumerate_gaps(CountingModel({1.0, 1.0 / std::sqrt(2.0)}), 0.5, 2000.0);
  ASSERT_FALSE(gaps.empty());
  EXPECT_GT(*std::min_element(gaps.begin(), gaps.end()), 0.0);
  EXPECT_LE(*std::max_element(gaps.begin(), gaps.end()), 1.0 + 1e-12);
}

TEST(Enumerate, CoincidencesGiveZeroGaps) {
  const std::vector<double> gaps = enumerate_gaps(CountingModel({1.0, 0.5}), 0.0, 4.0);
  ASSERT_EQ(gaps.size(), 7u);  // points 0,0,1,2,2,3,4,4
  EXPECT_EQ(std::count(gaps.begin(), gaps.end(), 0.0), 3);
}

}  // namespace
}  // namespace loggap
