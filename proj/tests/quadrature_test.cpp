#include <cmath>

#include <gtest/gtest.h>

#include "curvelab/quadrature.hpp"

using namespace curvelab;

TEST(Quadrature, SimpsonPolynomialAndTranscendental) {
  const auto r = adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
  EXPECT_NEAR(r.value, 4.0, 1e-12);
  const auto s = adaptive_simpson([](double x) { return std::cosh(x); }, -1.0, 1.5, 1e-10);
  EXPECT_NEAR(s.value, std::sinh(1.5) + std::sinh(1.0), 1e-10);
  EXPECT_TRUE(s.converged);
}

TEST(Quadrature, GaussLegendre) {
  EXPECT_NEAR(gauss_legendre16([](double x) { return std::pow(x, 31); }, 0.0, 1.0), 1.0 / 32, 1e-15);
  const auto r = adaptive_gauss_legendre([](double x) { return 1.0 / (1.0 + 25 * x * x); }, -1.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value, 0.4 * std::atan(5.0), 1e-12);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, BudgetStopsRefinement) {
  // Oscillation below the resolution of every panel never converges.
  const auto r = adaptive_gauss_legendre([](double x) { return std::sin(1e6 * x * x); }, 0.0, 1.0, 1e-14, 30, 2000);
  EXPECT_FALSE(r.converged);
  EXPECT_LT(r.evaluations, 4000);
}
