#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "burgers/errors.hpp"
#include "burgers/field.hpp"

using namespace burgers;

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Direct O(N^2) DFT, the oracle for to_spectral.
Complex direct_coefficient(const std::vector<double>& u, long k) {
  Complex sum = 0.0;
  const double n = static_cast<double>(u.size());
  for (std::size_t j = 0; j < u.size(); ++j)
    sum += u[j] * std::exp(Complex(0.0, -kTwoPi * double(k) * double(j) / n));
  return sum / n;
}

SpectralField random_band_limited(std::size_t k_max, std::size_t truncation, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  SpectralField s(truncation);
  for (std::size_t k = 1; k <= k_max; ++k) s.positive_modes()[k - 1] = Complex(g(gen), g(gen)) / double(k);
  return s;
}

}  // namespace

TEST(ToSpectral, CosineBasisFunction) {
  const GridField g = GridField::sample(8, [](double x) { return kSqrt2 * std::cos(kTwoPi * x); });
  const SpectralField s = to_spectral(g);
  EXPECT_EQ(s.truncation(), 3u);
  EXPECT_NEAR(std::abs(s.at(1) - Complex(kSqrt2 / 2, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.at(-1) - Complex(kSqrt2 / 2, 0)), 0.0, 1e-14);
  for (long k : {2L, 3L, -2L, -3L}) EXPECT_NEAR(std::abs(s.at(k)), 0.0, 1e-14);
  std::vector<double> v(g.values().begin(), g.values().end());
  for (long k = -3; k <= 3; ++k)
    if (k != 0) EXPECT_NEAR(std::abs(s.at(k) - direct_coefficient(v, k)), 0.0, 1e-14);
}

TEST(ToSpectral, SineBasisFunction) {
  const GridField g = GridField::sample(8, [](double x) { return kSqrt2 * std::sin(kTwoPi * x); });
  const SpectralField s = to_spectral(g);
  EXPECT_NEAR(std::abs(s.at(1) - Complex(0, -kSqrt2 / 2)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.at(-1) - Complex(0, kSqrt2 / 2)), 0.0, 1e-14);
}

TEST(ToSpectral, ZeroField) {
  const SpectralField s = to_spectral(GridField(std::vector<double>(16, 0.0)));
  for (const Complex& c : s.positive_modes()) EXPECT_EQ(c, Complex(0.0));
}

TEST(ToSpectral, RejectsBadGrids) {
  EXPECT_THROW(GridField(std::vector<double>(6, 0.0)), ConfigurationError);
  EXPECT_THROW(GridField(std::vector<double>(2, 0.0)), ConfigurationError);
  EXPECT_THROW(GridField(std::vector<double>{1.0, 1.0, 1.0, 1.0}), DomainError);
}

TEST(ToGrid, InverseOfCosineExample) {
  SpectralField s(3);
  s.positive_modes()[0] = kSqrt2 / 2;
  const GridField g = to_grid(s, 8);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(g[j], kSqrt2 * std::cos(kTwoPi * j / 8.0), 1e-14);
}

TEST(ToGrid, TwoModeCosine) {
  SpectralField s(3);
  s.positive_modes()[1] = 0.5;
  const GridField g = to_grid(s, 8);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(g[j], std::cos(2 * kTwoPi * j / 8.0), 1e-14);
}

TEST(ToGrid, EmptyModesGiveZero) {
  const GridField g = to_grid(SpectralField(5), 16);
  for (double v : g.values()) EXPECT_EQ(v, 0.0);
}

TEST(ToGrid, TooSmallGridIsAResolutionError) {
  EXPECT_THROW(to_grid(SpectralField(4), 8), ResolutionError);
  EXPECT_NO_THROW(to_grid(SpectralField(3), 8));
}

TEST(FieldProperties, RoundTripOnBandLimitedFields) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const SpectralField s = random_band_limited(20, 63, seed);
    const GridField g = to_grid(s, 128);
    const GridField back = to_grid(to_spectral(g), 128);
    double err = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < 128; ++j) {
      err = std::max(err, std::abs(back[j] - g[j]));
      scale = std::max(scale, std::abs(g[j]));
    }
    EXPECT_LT(err, 1e-10 * scale);
  }
}

TEST(FieldProperties, Parseval) {
  for (unsigned seed = 11; seed <= 15; ++seed) {
    const GridField g = to_grid(random_band_limited(30, 127, seed), 256);
    const double lhs = std::pow(lp_norm(g, 2.0), 2);
    const double rhs = sobolev_norm_sq(to_spectral(g), 0);
    EXPECT_NEAR(lhs / rhs, 1.0, 1e-10);
  }
}

TEST(FieldProperties, HermitianSymmetryAndZeroMean) {
  const SpectralField s = random_band_limited(10, 31, 3);
  for (long k = 1; k <= 31; ++k) EXPECT_EQ(s.at(-k), std::conj(s.at(k)));
  EXPECT_EQ(s.at(0), Complex(0.0));
  const GridField g = to_grid(s, 64);
  double sum = 0.0, scale = 0.0;
  for (double v : g.values()) {
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  EXPECT_LT(std::abs(sum) / 64.0, 1e-14 * scale);
}

TEST(SobolevNorm, BasisFunctionExamples) {
  SpectralField e_minus1(3);
  e_minus1.positive_modes()[0] = Complex(0, -kSqrt2 / 2);
  EXPECT_NEAR(sobolev_norm_sq(e_minus1, 0), 1.0, 1e-15);
  EXPECT_NEAR(sobolev_norm_sq(e_minus1, 1), kTwoPi * kTwoPi, 1e-12);
  EXPECT_EQ(sobolev_norm_sq(SpectralField(7), 3), 0.0);
}

TEST(SobolevNorm, ScalingIsExactlyQuadratic) {
  const SpectralField s = random_band_limited(8, 15, 4);
  for (int m = 0; m <= 3; ++m) EXPECT_DOUBLE_EQ(sobolev_norm_sq(2.0 * s, m), 4.0 * sobolev_norm_sq(s, m));
}

TEST(SobolevNorm, DerivativeConsistency) {
  const SpectralField s = random_band_limited(12, 15, 5);
  for (int m = 0; m <= 3; ++m)
    EXPECT_NEAR(sobolev_norm_sq(s, m + 1) / sobolev_norm_sq(derivative(s), m), 1.0, 1e-14);
}

TEST(SobolevNorm, NegativeOrdersAreDiagnosticOnly) {
  SpectralField s(3);
  s.positive_modes()[1] = 1.0;
  EXPECT_THROW(sobolev_norm_sq(s, -1), DomainError);
  EXPECT_NEAR(sobolev_norm_sq(s, -1, NegativeOrders::allow_diagnostic), 2.0 / std::pow(2 * kTwoPi, 2),
              1e-15);
}

TEST(Oleinik, SineExample) {
  const std::size_t n = 256;
  const GridField g = GridField::sample(n, [](double x) { return kSqrt2 * std::sin(kTwoPi * x); });
  const OleinikObservables o = oleinik_observables(g);
  EXPECT_NEAR(o.sup_norm, kSqrt2, 1e-12);
  EXPECT_NEAR(o.grad_l1, 4 * kSqrt2, 1e-3);
  EXPECT_NEAR(o.grad_plus_sup, kTwoPi * kSqrt2, 1e-10);

  const GridField h = GridField::sample(n, [](double x) { return -kSqrt2 * std::sin(kTwoPi * x); });
  const OleinikObservables p = oleinik_observables(h);
  EXPECT_NEAR(p.sup_norm, o.sup_norm, 1e-14);
  EXPECT_NEAR(p.grad_l1, o.grad_l1, 1e-12);
  EXPECT_NEAR(p.grad_plus_sup, kTwoPi * kSqrt2, 1e-10);
}

TEST(Oleinik, ZeroField) {
  const OleinikObservables o = oleinik_observables(GridField(std::vector<double>(32, 0.0)));
  EXPECT_EQ(o.sup_norm, 0.0);
  EXPECT_EQ(o.grad_l1, 0.0);
  EXPECT_EQ(o.grad_plus_sup, 0.0);
}

TEST(LpNorm, Examples) {
  const GridField g = GridField::sample(64, [](double x) { return kSqrt2 * std::sin(kTwoPi * x); });
  EXPECT_NEAR(lp_norm(g, 2.0), 1.0, 1e-14);
  EXPECT_EQ(lp_norm(GridField(std::vector<double>(8, 0.0)), 3.0), 0.0);
  std::vector<double> alt(16);
  for (std::size_t j = 0; j < 16; ++j) alt[j] = j % 2 ? -1.0 : 1.0;
  EXPECT_NEAR(lp_norm(GridField(alt), 4.0), 1.0, 1e-15);
  EXPECT_THROW(lp_norm(g, 0.0), DomainError);
  EXPECT_THROW(lp_norm(g, -1.0), DomainError);
}

TEST(Increments, FastPathsMatchGenericPower) {
  const GridField g = to_grid(random_band_limited(6, 31, 9), 64);
  auto slow = [&](double p, std::size_t shift) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 64; ++j) sum += std::pow(std::abs(g[(j + shift) % 64] - g[j]), p);
    return sum / 64.0;
  };
  for (double p : {0.5, 1.0, 2.0, 3.0, 1.7})
    for (std::size_t shift : {1u, 5u, 32u})
      EXPECT_NEAR(increment_moment(g.values(), p, shift), slow(p, shift), 1e-12 * slow(p, shift));
}

TEST(Increments, GridShiftAlignment) {
  EXPECT_EQ(grid_shift(0.25, 64), 16u);
  EXPECT_EQ(grid_shift(1.0 / 64, 64), 1u);
  EXPECT_THROW(grid_shift(0.001, 64), AlignmentError);
}
