#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "loggap/error.hpp"
#include "loggap/limit_dist.hpp"
#include "loggap/sequence.hpp"
#include "loggap/stats.hpp"

namespace loggap {
namespace {

using std::numbers::e;

GapSample gaps_of(const LogBase& base, std::size_t n, Provenance which) {
  return sequence_gaps(base, n, which).second;
}

TEST(EmpiricalCdf, StepAtOne) {
  const EmpiricalCDF f(std::vector<double>(5, 1.0));
  EXPECT_EQ(f(0.999), 0.0);
  EXPECT_EQ(f(1.0), 1.0);
  EXPECT_EQ(f.left(1.0), 0.0);
  EXPECT_EQ(f(1e9), 1.0);
  EXPECT_EQ(f.zero_fraction(), 0.0);
}

TEST(EmpiricalCdf, ZeroFractionAndErrors) {
  const EmpiricalCDF f(std::vector<double>{0.0, 0.0, 0.5, 2.0});
  EXPECT_DOUBLE_EQ(f.zero_fraction(), 0.5);
  EXPECT_DOUBLE_EQ(f(0.0), f.zero_fraction());
  EXPECT_THROW(EmpiricalCDF(std::vector<double>{}), EmptyInputError);
  EXPECT_THROW(empirical_cdf(GapSample{}), EmptyInputError);
}

TEST(EmpiricalCdf, RootBaseZeroFraction) {
  const LogBase base = LogBase::integer_root(10, 2);
  const EmpiricalCDF f = empirical_cdf(gaps_of(base, 10000, Provenance::Raw));
  EXPECT_NEAR(f.zero_fraction(), 0.1, 0.02);
}

TEST(EmpiricalCdf, TranscendentalSupportBound) {
  const EmpiricalCDF f =
      empirical_cdf(gaps_of(LogBase::transcendental(e), 10000, Provenance::Raw));
  EXPECT_GE(f(e + 1e-3), 0.999);
  EXPECT_EQ(f.zero_fraction(), 0.0);
}

TEST(KsDistance, IdenticalStepFunctions) {
  const std::vector<double> v = {0.5, 1.0, 1.0, 1.5};
  const EmpiricalCDF a(v), b(v);
  EXPECT_EQ(ks_distance(a, b), 0.0);
  const MixedDensity atoms({{0.5, 0.25}, {1.0, 0.5}, {1.5, 0.25}}, {}, 1.0);
  EXPECT_NEAR(ks_distance(a, atoms), 0.0, 1e-15);
}

TEST(KsDistance, ProbesBothSidesOfJumps) {
  // Uniform on [0, 1] against a single sample at 0.5: worst gap is 1/2.
  const MixedDensity uniform({}, {{0.0, 1.0, [](double) { return 1.0; }}}, 1.0);
  EXPECT_NEAR(ks_distance(EmpiricalCDF({0.5}), uniform), 0.5, 1e-12);
  EXPECT_NEAR(ks_distance(EmpiricalCDF({0.25, 0.75}), uniform), 0.25, 1e-12);
}

TEST(KsDistance, AgreementAndConvergence) {
  const LogBase base = LogBase::transcendental(e);
  const MixedDensity theory = limit_gap_density(base);
  const double big = ks_distance(empirical_cdf(gaps_of(base, 10000, Provenance::Raw)), theory);
  const double small = ks_distance(empirical_cdf(gaps_of(base, 100, Provenance::Raw)), theory);
  EXPECT_LE(big, 0.03);
  EXPECT_LT(big, small);
}

TEST(KsDistance, InvariantUnderRotation) {
  const LogBase base = LogBase::transcendental(e);
  const MixedDensity theory = limit_gap_density(base);
  const std::vector<double> raw_values = generate_raw(base, 5000);
  std::vector<double> rotated(raw_values.size());
  for (std::size_t i = 0; i < rotated.size(); ++i) rotated[i] = frac_mod1(raw_values[i] + 0.375);
  const auto [o1, g1] = order_and_gaps(raw_values, Provenance::Raw);
  const auto [o2, g2] = order_and_gaps(rotated, Provenance::External);
  EXPECT_NEAR(ks_distance(empirical_cdf(g1), theory), ks_distance(empirical_cdf(g2), theory), 1e-9);
}

TEST(KsDistance, ExcludingAtoms) {
  const MixedDensity theory = limit_gap_density(LogBase::integer(10));
  const EmpiricalCDF no_zero(std::vector<double>{0.5, 0.6, 1.0, 2.0, 3.0});
  KsOptions opts;
  opts.exclude_atoms = true;
  EXPECT_LE(ks_distance(no_zero, theory, opts), ks_distance(no_zero, theory));
}

TEST(Exponential, SupDistanceIsZeroForExponential) {
  const MixedDensity expo({}, {{0.0, 60.0, [](double s) { return std::exp(-s); }}}, 1.0,
                          [](double s) { return s <= 0 ? 0.0 : -std::expm1(-std::min(s, 60.0)); });
  EXPECT_LE(sup_distance_to_exponential(expo, 20.0), 1e-15);
}

TEST(JointHistogramTest, UniformLattice) {
  std::vector<double> lattice(100);
  for (std::size_t i = 0; i < lattice.size(); ++i) lattice[i] = i / 100.0;
  const auto [ordered, gaps] = order_and_gaps(lattice, Provenance::External);
  const JointHistogram h = joint_histogram(gaps, 4, 20, 3.0);
  const std::vector<std::size_t> sm = h.s_marginal();
  const std::size_t bin = static_cast<std::size_t>(1.0 / h.s_width());
  EXPECT_EQ(sm[bin], 100u);
  EXPECT_EQ(h.total(), 100u);
  EXPECT_EQ(h.overflow_total(), 0u);
}

TEST(JointHistogramTest, MarginalsMatchOneDimensionalHistograms) {
  const GapSample gaps = gaps_of(LogBase::transcendental(e), 20000, Provenance::Shifted);
  const std::size_t xb = 8, sb = 30;
  const double smax = 2.0;  // deliberately inside the support to exercise overflow
  const JointHistogram h = joint_histogram(gaps, xb, sb, smax);
  std::size_t cells = h.overflow_total();
  for (std::size_t i = 0; i < xb; ++i)
    for (std::size_t j = 0; j < sb; ++j) cells += h.count(i, j);
  EXPECT_EQ(cells, gaps.size());
  EXPECT_GT(h.overflow_total(), 0u);

  const std::vector<double> dens = histogram_density(gaps.scaled_gaps, sb, smax);
  const std::vector<std::size_t> sm = h.s_marginal();
  for (std::size_t j = 0; j < sb; ++j) {
    EXPECT_NEAR(dens[j], sm[j] / (gaps.size() * h.s_width()), 1e-12);
  }
  const std::vector<std::size_t> xm = h.x_marginal();
  for (std::size_t i = 0; i < xb; ++i) {
    const double frac = density_fraction(gaps.anchors, i * h.x_width(), (i + 1) * h.x_width());
    EXPECT_NEAR(static_cast<double>(xm[i]) / gaps.size(), frac, 1e-12);
  }
}

TEST(DensityFraction, Examples) {
  const LogBase ten = LogBase::integer(10);
  const std::vector<double> raw_values = generate_raw(ten, 10000);
  EXPECT_EQ(density_fraction(raw_values, 0.0, 1.0), 1.0);
  EXPECT_NEAR(density_fraction(raw_values, 0.0, 0.5), 0.2402530733520421, 0.01);
  EXPECT_THROW(density_fraction(raw_values, 0.5, 0.5), DomainError);
}

TEST(DensityFraction, UnfoldedIsUniform) {
  const LogBase base = LogBase::transcendental(e);
  const std::vector<double> shifted = generate_shifted(base, 10000);
  const std::vector<double> flat = unfold(shifted, base);
  for (auto [lo, hi] : {std::pair{0.0, 0.1}, {0.2, 0.7}, {0.9, 1.0}, {0.33, 0.34}}) {
    EXPECT_NEAR(density_fraction(flat, lo, hi), hi - lo, 0.01);
  }
}

TEST(ConditionalCdfs, UnfoldedGapsIndependentOfPosition) {
  const LogBase base = LogBase::transcendental(e);
  const MixedDensity theory = rescaled_limit_density(base);
  const GapSample gaps =
      snap_to_atoms(gaps_of(base, 100000, Provenance::Unfolded), theory.atoms());
  const std::vector<EmpiricalCDF> parts = conditional_gap_cdfs(gaps, 4);
  ASSERT_EQ(parts.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) EXPECT_LE(ks_distance(parts[i], parts[j]), 0.05);
}

TEST(SnapToAtoms, MovesOnlyNearbyValues) {
  const std::vector<Atom> atoms = {{0.0, 0.1}, {1.5, 0.3}};
  const std::vector<double> v = {1e-9, 1.5 + 1e-9, 1.5 - 1e-3, 0.7};
  const std::vector<double> out = snap_to_atoms(v, atoms);
  EXPECT_EQ(out[0], 0.0);
  EXPECT_EQ(out[1], 1.5);
  EXPECT_EQ(out[2], 1.5 - 1e-3);
  EXPECT_EQ(out[3], 0.7);
  EXPECT_EQ(snap_to_atoms(v, atoms, 0.0), v);
}

TEST(L1Distance, Basics) {
  const std::vector<double> a = {0.2, 0.3, 0.5};
  const std::vector<double> b = {0.3, 0.3, 0.4};
  EXPECT_NEAR(l1_distance(a, b), 0.2, 1e-15);
  EXPECT_THROW(l1_distance(a, std::vector<double>{1.0}), PreconditionError);
}

TEST(Compare, IntegerBaseAtomError) {
  const LogBase ten = LogBase::integer(10);
  const MixedDensity theory = limit_gap_density(ten);
  const EmpiricalCDF emp = empirical_cdf(gaps_of(ten, 10000, Provenance::Raw));
  const double smax = ten.value() / ten.log_value() + 1.0;
  const ComparisonReport rep = compare(emp, theory, 50, smax);
  ASSERT_EQ(rep.atom_mass_errors.size(), 1u);
  EXPECT_EQ(rep.atom_mass_errors[0].location, 0.0);
  EXPECT_LT(rep.atom_mass_errors[0].error, 0.02);
  EXPECT_GE(rep.sup_cdf_distance, 0.0);
  EXPECT_GE(rep.l1_density_distance, 0.0);
  EXPECT_LE(rep.l1_density_distance, 2.0);
  EXPECT_EQ(rep.sample_size, 10000u);
}

}  // namespace
}  // namespace loggap
