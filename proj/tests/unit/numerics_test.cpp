#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fa_twist/errors.hpp"
#include "fa_twist/numerics.hpp"

namespace fa_twist {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void expect_rel(Complex actual, Complex expected, double tol) {
  EXPECT_LE(std::abs(actual - expected), tol * std::abs(expected))
      << "actual " << actual << " expected " << expected;
}

TEST(GammaTest, ClassicalValues) {
  expect_rel(gamma(1.0), 1.0, 1e-15);
  expect_rel(gamma(0.5), kSqrtPi, 1e-14);
  expect_rel(gamma(-0.5), -2.0 * kSqrtPi, 1e-14);
  expect_rel(gamma(5.0), 24.0, 1e-14);
}

// Reference values computed with mpmath at 40 digits.
TEST(GammaTest, ComplexReferenceValues) {
  expect_rel(gamma({3.7, 2.1}), {-1.8598252959665196133, 1.1623401526968617731}, 1e-13);
  expect_rel(gamma({-4.3, 1.2}), {0.0035965841012994517919, -0.0025521301050584618583}, 1e-13);
  expect_rel(gamma({0.2, -7.5}), {6.8599151291409852569e-6, -7.9184354334159177318e-6}, 1e-12);
  expect_rel(gamma({12.25, 0.5}), {24223493.640540324817, 68791919.947615929059}, 1e-13);
  expect_rel(gamma({-9.7, -3.3}), {1.2796381024783112613e-10, -1.3426337153400695913e-10}, 1e-12);
  expect_rel(gamma(19.5), 27724322986333718.178, 1e-13);
}

TEST(GammaTest, MatchesStdTgammaOnRealLine) {
  for (double x = -9.75; x < 20.0; x += 0.37) {
    if (std::abs(x - std::round(x)) < 0.05 && x <= 0.0) continue;
    expect_rel(gamma(x), std::tgamma(x), 1e-12);
  }
}

TEST(GammaTest, PolesThrow) {
  EXPECT_THROW(gamma(0.0), PoleError);
  EXPECT_THROW(gamma(-3.0), PoleError);
  EXPECT_THROW(gamma(Complex(-2.0, 1e-13)), PoleError);
  EXPECT_NO_THROW(gamma(-3.0 + 1e-6));
}

TEST(GammaTest, ReflectionAndRecurrenceProperties) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int checked = 0;
  while (checked < 1000) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z) > 10.0) continue;
    // distance >= 0.1 from every pole of Gamma(z) and Gamma(1 - z)
    if (std::abs(z.imag()) < 0.1 && std::abs(z.real() - std::round(z.real())) < 0.1) {
      continue;
    }
    ++checked;
    const Complex reflection =
        gamma(z) * gamma(1.0 - z) * std::sin(std::numbers::pi * z) / std::numbers::pi;
    EXPECT_LE(std::abs(reflection - 1.0), 1e-10) << z;
    EXPECT_LE(std::abs(gamma(z + 1.0) - z * gamma(z)), 1e-10 * std::abs(z * gamma(z))) << z;
  }
}

TEST(PochhammerTest, Values) {
  EXPECT_EQ(pochhammer({2.5, -1.0}, 0), Complex(1.0));
  EXPECT_EQ(pochhammer(1.0, 5), Complex(120.0));
  EXPECT_EQ(pochhammer(0.5, 2), Complex(0.75));
  EXPECT_EQ(pochhammer(-2.0, 5), Complex(0.0));
}

TEST(PochhammerTest, StepIsExactlyOneMultiplication) {
  const Complex z(0.37, -1.2);
  for (unsigned n = 0; n < 30; ++n) {
    EXPECT_EQ(pochhammer(z, n + 1), pochhammer(z, n) * (z + static_cast<double>(n)));
  }
}

TEST(CompensatedSumTest, RecoversCancelledLowOrderBits) {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), Complex(1.0));
}

TEST(IntegrateDeTest, ConstantsInOneAndTwoDimensions) {
  auto one = [](std::span<const DeNode>) { return Complex(1.0); };
  const auto r1 = integrate_de(1, one);
  EXPECT_TRUE(r1.converged);
  EXPECT_NEAR(std::abs(r1.value - 1.0), 0.0, 1e-14);
  const auto r2 = integrate_de(2, one);
  EXPECT_TRUE(r2.converged);
  EXPECT_NEAR(std::abs(r2.value - 1.0), 0.0, 1e-12);
}

TEST(IntegrateDeTest, BetaIntegralWithEndpointSingularities) {
  auto f = [](std::span<const DeNode> t) {
    return Complex(std::pow(t[0].t, -0.6) * std::pow(t[0].one_minus_t, -0.5));
  };
  const auto r = integrate_de(1, f, {.levels = 8, .target_abs_err = 1e-12});
  const Complex expected = gamma(0.4) * gamma(0.5) / gamma(0.9);
  EXPECT_NEAR(expected.real(), 3.6790939804058806742, 1e-13);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(std::abs(r.value - expected), 0.0, 1e-11);
}

TEST(IntegrateDeTest, ErrorEstimateBoundsTrueErrorOnBetaFamily) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> exponent(-0.9, 0.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double p = exponent(rng), q = exponent(rng);
    auto f = [&](std::span<const DeNode> t) {
      return Complex(std::pow(t[0].t, p) * std::pow(t[0].one_minus_t, q));
    };
    const Complex exact = gamma(p + 1.0) * gamma(q + 1.0) / gamma(p + q + 2.0);
    for (int levels = 3; levels <= 7; ++levels) {
      const auto r = integrate_de(1, f, {.levels = levels, .target_abs_err = 1e-300});
      EXPECT_LE(std::abs(r.value - exact), r.err_est + 1e-14 * std::abs(exact))
          << "p=" << p << " q=" << q << " levels=" << levels;
    }
  }
}

TEST(IntegrateDeTest, ThreeDimensionalProduct) {
  auto f = [](std::span<const DeNode> t) {
    return Complex(std::pow(t[0].t, -0.5) * t[1].t * std::pow(t[2].one_minus_t, -0.3));
  };
  const auto r = integrate_de(3, f, {.levels = 6, .target_abs_err = 1e-9});
  EXPECT_NEAR(std::abs(r.value - 2.0 * 0.5 / 0.7), 0.0, 1e-9);
}

TEST(IntegrateDeTest, FlagsNonConvergence) {
  auto f = [](std::span<const DeNode> t) { return Complex(std::pow(t[0].t, -0.95)); };
  const auto r = integrate_de(1, f, {.levels = 2, .target_abs_err = 1e-15});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.level, 2);
}

TEST(IntegrateDeTest, ResultIndependentOfThreadCount) {
  auto f = [](std::span<const DeNode> t) {
    return std::exp(Complex(0.3, 0.7) * std::log(t[0].t)) * (1.0 - 0.2 * t[1].t);
  };
  setenv("FA_TWIST_THREADS", "1", 1);
  const auto serial = integrate_de(2, f);
  setenv("FA_TWIST_THREADS", "4", 1);
  const auto parallel = integrate_de(2, f);
  unsetenv("FA_TWIST_THREADS");
  EXPECT_EQ(serial.value, parallel.value);
}

TEST(IntegrateDeTest, RejectsBadConfig) {
  auto one = [](std::span<const DeNode>) { return Complex(1.0); };
  EXPECT_THROW(integrate_de(4, one), std::invalid_argument);
  EXPECT_THROW(integrate_de(1, one, {.levels = 0}), std::invalid_argument);
  EXPECT_THROW(integrate_de(1, one, {.levels = 3, .target_abs_err = 0.0}),
               std::invalid_argument);
}

}  // namespace
}  // namespace fa_twist
