#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "curvelab/errors.hpp"
#include "curvelab/jet.hpp"

using namespace curvelab;
using J = Jet<double>;

namespace {

void expect_coeffs(const J& j, std::array<double, 5> expected, double tol) {
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(j[k], expected[k], tol * std::max(1.0, std::abs(expected[k]))) << "k=" << k;
}

}  // namespace

TEST(Jet, SinhOfIdentity) {
  expect_coeffs(sinh(J::variable(0.0)), {0, 1, 0, 1.0 / 6, 0}, 0);
}

TEST(Jet, SquareOfIdentity) {
  const J t = J::variable(1.0);
  expect_coeffs(t * t, {1, 2, 1, 0, 0}, 0);
}

TEST(Jet, DivisionByVanishingConstantTerm) {
  try {
    (void)(J(1.0) / sin(J::variable(0.0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionNearZero);
  }
}

TEST(Jet, SqrtOfNonPositive) {
  try {
    (void)sqrt(J::variable(-1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SqrtNonPositive);
  }
}

// Reference coefficients from sympy series expansions.
TEST(Jet, Compositions) {
  expect_coeffs(cosh(sin(J::variable(0.7))),
                {1.2147848436440047406, 0.52752059814334883283, 0.13315235305363491308, -0.33576563481208937976,
                 -0.084564747203417162606},
                1e-14);
  const J t = J::variable(0.3);
  expect_coeffs(sqrt(1.0 + exp(t)) / cos(t),
                {1.6045916140981433020, 0.95723117468888135122, 1.2626522839108668940, 0.81610931246959830438,
                 0.76985371045086556118},
                1e-14);
  const J u = J::variable(0.5);
  expect_coeffs(powi(1.0 + u * u, -3), {0.512, -1.2288, 0.73728, 1.31072, -2.752512}, 1e-14);
}

TEST(Jet, ChainRuleAgreesWithDirectComposite) {
  // sin(t)^2 + cos(t)^2 == 1 and cosh^2 - sinh^2 == 1 as whole series.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 50; ++n) {
    const J t = J::variable(u(rng));
    const J f = sin(t) * sin(t) + cos(t) * cos(t);
    const J h = cosh(t) * cosh(t) - sinh(t) * sinh(t);
    expect_coeffs(f, {1, 0, 0, 0, 0}, 8 * 2.2e-16);
    expect_coeffs(h, {1, 0, 0, 0, 0}, 8 * 2.2e-16 * std::cosh(2 * t.value()));
    // compose(exp, 2t) against exp(2t)
    const J inner = 2.0 * t;
    const J direct = exp(inner);
    const J composed = compose(exp(J::variable(inner.value())), inner);
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(composed[k], direct[k], 8 * 2.2e-16 * std::abs(direct[k]) + 1e-300);
  }
}

TEST(Jet, RevertInvertsSeries) {
  const J s = sinh(J::variable(0.4)) + 2.0 * J::variable(0.4);
  const J d = revert(s);
  const J back = compose(s, d);
  EXPECT_NEAR(back[1], 1.0, 1e-14);
  for (int k = 2; k < 5; ++k) EXPECT_NEAR(back[k], 0.0, 1e-13);
}

TEST(Jet, DifferentiateAndIntegrate) {
  const J t = J::variable(0.2);
  const J e = exp(t);
  const J de = differentiate(e);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(de[k], e[k], 1e-15);
  EXPECT_EQ(de[4], 0.0);
  const J ie = integrate(e);
  EXPECT_EQ(ie[0], 0.0);
  for (int k = 1; k < 5; ++k) EXPECT_NEAR(ie[k] * k, e[k - 1], 1e-15);
}

TEST(Jet, DerivativeAccessor) {
  const J e = exp(J::variable(0.0));
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(e.derivative(k), 1.0, 1e-15);
}
