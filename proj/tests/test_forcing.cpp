#include <cmath>

#include <gtest/gtest.h>

#include "burgers/errors.hpp"
#include "burgers/field.hpp"
#include "burgers/forcing.hpp"
#include "burgers/rng.hpp"
#include "burgers/stats.hpp"

using namespace burgers;

// Known-answer vectors of the Philox4x32-10 reference implementation.
TEST(Philox, KnownAnswers) {
  using C = Philox4x32::Counter;
  EXPECT_EQ(Philox4x32::generate({0, 0, 0, 0}, {0, 0}),
            (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                 {0xffffffffu, 0xffffffffu}),
            (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                 {0xa4093822u, 0x299f31d0u}),
            (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Rng, NormalMoments) {
  Moments m, m4;
  for (std::uint64_t i = 0; i < 200000; ++i) {
    const double z = standard_normal({7, 0, 1, i});
    m.add(z);
    m4.add(z * z * z * z);
  }
  EXPECT_NEAR(m.mean(), 0.0, 4.0 / std::sqrt(200000.0));
  EXPECT_NEAR(m.variance(), 1.0, 0.015);
  EXPECT_NEAR(m4.mean(), 3.0, 0.06);
}

TEST(Rng, UniformIsInUnitInterval) {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double u = uniform_open_closed({1, 2, 3, i});
    EXPECT_GT(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
}

TEST(Forcing, DefaultSpecHasUnitB0) {
  const ForcingSpec spec = ForcingSpec::inverse_s_bandlimited(4, 1.0);
  EXPECT_NEAR(b_constant(spec, 0), 1.0, 1e-15);
  EXPECT_EQ(spec.max_wavenumber(), 4);
  EXPECT_NEAR(spec.coefficient(2) / spec.coefficient(1), 0.5, 1e-15);
  EXPECT_EQ(spec.coefficient(-3), spec.coefficient(3));
  EXPECT_EQ(spec.coefficient(5), 0.0);
}

TEST(Forcing, BConstants) {
  ForcingSpec spec;
  spec.coefficients = {{1, std::sqrt(0.5)}, {-1, std::sqrt(0.5)}};
  EXPECT_NEAR(b_constant(spec, 0), 1.0, 1e-15);
  EXPECT_NEAR(b_constant(spec, 1), kTwoPi * kTwoPi, 1e-12);
  EXPECT_EQ(b_constant(ForcingSpec{}, 0), 0.0);
}

TEST(Forcing, ParseAndRuleRoundTrip) {
  const ForcingSpec a = ForcingSpec::parse("inverse_s_bandlimited(4, 1)");
  EXPECT_EQ(a.coefficients, ForcingSpec::inverse_s_bandlimited(4, 1.0).coefficients);
  const ForcingSpec b = ForcingSpec::parse(a.rule());
  EXPECT_EQ(a.coefficients, b.coefficients);
  const ForcingSpec c = ForcingSpec::parse("explicit(1:0.5, -2:0.25)");
  EXPECT_EQ(c.coefficient(1), 0.5);
  EXPECT_EQ(c.coefficient(-2), 0.25);
  EXPECT_THROW(ForcingSpec::parse("gaussian(3)"), ConfigurationError);
  EXPECT_THROW(ForcingSpec::parse("explicit(0:1)"), ConfigurationError);
  EXPECT_THROW(ForcingSpec{}.validate(), ConfigurationError);
}

TEST(Forcing, ZeroCoefficientsGiveZeroIncrement) {
  ForcingSpec spec;
  spec.coefficients = {{1, 0.0}, {-1, 0.0}};
  const NoiseIncrement inc = sample_increment(spec, 0.1, 3);
  for (const Complex& c : inc.delta.positive_modes()) EXPECT_EQ(c, Complex(0.0));
}

TEST(Forcing, IncrementMatchesBasisInPhysicalSpace) {
  ForcingSpec spec = ForcingSpec::parse("explicit(2:0.3, -2:0.7)");
  spec.seed = 99;
  spec.member_id = 4;
  const double dt = 0.01;
  const NoiseIncrement inc = sample_increment(spec, dt, 17);
  const double dbeta_cos = std::sqrt(dt) * standard_normal({99, 4, 2, 17});
  const double dbeta_sin = std::sqrt(dt) * standard_normal({99, 4, -2, 17});
  const GridField g = to_grid(inc.delta, 32);
  for (std::size_t j = 0; j < 32; ++j) {
    const double x = j / 32.0;
    const double expected = 0.3 * dbeta_cos * std::sqrt(2.0) * std::cos(2 * kTwoPi * x) +
                            0.7 * dbeta_sin * std::sqrt(2.0) * std::sin(2 * kTwoPi * x);
    EXPECT_NEAR(g[j], expected, 1e-15);
  }
}

TEST(Forcing, SingleModeVarianceMonteCarlo) {
  ForcingSpec spec = ForcingSpec::parse("explicit(1:1)");
  Moments m;
  const int n = 100000;
  for (int i = 0; i < n; ++i) m.add(sobolev_norm_sq(sample_increment(spec, 1.0, i).delta, 0));
  // |dbeta|^2 with dbeta ~ N(0,1): mean 1, variance 2
  EXPECT_NEAR(m.mean(), 1.0, 3.0 * std::sqrt(2.0 / n));
}

TEST(Forcing, IncrementEnergyIsB0Dt) {
  ForcingSpec spec = ForcingSpec::inverse_s_bandlimited(4, 1.0);
  spec.seed = 5;
  Moments m;
  for (int i = 0; i < 50000; ++i) m.add(sobolev_norm_sq(sample_increment(spec, 0.01, i).delta, 0));
  EXPECT_NEAR(m.mean(), 0.01, 3.0 * m.std_error());
}

TEST(Forcing, Reproducibility) {
  ForcingSpec spec = ForcingSpec::inverse_s_bandlimited(4, 1.0);
  spec.seed = 123;
  spec.member_id = 7;
  for (std::uint64_t step : {0ull, 1ull, 1ull << 40})
    EXPECT_EQ(sample_increment(spec, 0.003, step).delta, sample_increment(spec, 0.003, step).delta);
  EXPECT_FALSE(sample_increment(spec, 0.003, 0).delta == sample_increment(spec, 0.003, 1).delta);
  EXPECT_FALSE(sample_increment(spec, 0.003, 0).delta ==
               sample_increment(spec.for_member(8), 0.003, 0).delta);
}

TEST(Forcing, MembersAreIndependent) {
  const int n = 100000;
  double cross = 0.0, a2 = 0.0, b2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = standard_normal({1, 0, 1, std::uint64_t(i)});
    const double b = standard_normal({1, 1, 1, std::uint64_t(i)});
    cross += a * b;
    a2 += a * a;
    b2 += b * b;
  }
  EXPECT_LT(std::abs(cross / std::sqrt(a2 * b2)), 4.0 / std::sqrt(double(n)));
}

TEST(Forcing, DiscreteBasisIsOrthonormal) {
  const std::size_t n = 64;
  auto e = [](int s, double x) {
    return s > 0 ? std::sqrt(2.0) * std::cos(kTwoPi * s * x) : std::sqrt(2.0) * std::sin(kTwoPi * -s * x);
  };
  for (int s = -8; s <= 8; ++s) {
    for (int t = -8; t <= 8; ++t) {
      if (s == 0 || t == 0) continue;
      double ip = 0.0;
      for (std::size_t j = 0; j < n; ++j) ip += e(s, j / double(n)) * e(t, j / double(n));
      EXPECT_NEAR(ip / n, s == t ? 1.0 : 0.0, 1e-12) << s << "," << t;
    }
  }
}

TEST(Forcing, PathIncrementSumsFineIncrements) {
  ForcingSpec spec = ForcingSpec::inverse_s_bandlimited(4, 1.0);
  spec.seed = 3;
  const double fine = 1e-3;
  SpectralField sum(4);
  for (std::uint64_t j = 8; j < 12; ++j) sum += sample_increment(spec, fine, j).delta;
  const NoiseIncrement coarse = path_increment(spec, fine, 8, 4);
  EXPECT_DOUBLE_EQ(coarse.dt, 4 * fine);
  for (long k = 1; k <= 4; ++k) EXPECT_NEAR(std::abs(coarse.delta.at(k) - sum.at(k)), 0.0, 1e-15);
}

TEST(Forcing, HalfStepsMatchFullStepInDistribution) {
  ForcingSpec spec = ForcingSpec::parse("explicit(1:1)");
  Moments full, halves;
  for (int i = 0; i < 40000; ++i) {
    full.add(std::norm(sample_increment(spec, 0.02, i).delta.at(1)));
    halves.add(std::norm(path_increment(spec, 0.01, 2 * std::uint64_t(i) + 1000000, 2).delta.at(1)));
  }
  EXPECT_NEAR(full.mean(), 0.01, 3 * full.std_error());  // |u_1|^2 = b^2 dt / 2
  EXPECT_NEAR(halves.mean(), full.mean(), 3 * std::hypot(full.std_error(), halves.std_error()));
}

TEST(Forcing, RejectsNonPositiveDt) {
  const ForcingSpec spec = ForcingSpec::inverse_s_bandlimited(4, 1.0);
  EXPECT_THROW(sample_increment(spec, 0.0, 0), DomainError);
  EXPECT_THROW(path_increment(spec, 0.1, 0, 0), DomainError);
}
