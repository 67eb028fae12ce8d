#include <cmath>

#include <gtest/gtest.h>

#include "curvelab/errors.hpp"
#include "curvelab/frenet.hpp"
#include "curvelab/rectifying.hpp"

using namespace curvelab;

namespace {

struct FlipGuard {
  FlipGuard() { test_hooks::set_frenet_sign_flip(true); }
  ~FlipGuard() { test_hooks::set_frenet_sign_flip(false); }
};

double max_of(const std::array<double, 4>& r) { return *std::max_element(r.begin(), r.end()); }

}  // namespace

// Reference values: hand Gram-Schmidt on the closed-form derivatives of the
// (A, B) = (1, sqrt 2) helix gives k1^2 = 3, k2^2 = 8/3, k3^2 = 1/3, eps = -1.
TEST(Frenet, HelixCurvatures) {
  const ArclengthMap map(make_curve("lorentz_helix"));
  double lo1 = 1e9, hi1 = -1e9, lo2 = 1e9, hi2 = -1e9, lo3 = 1e9, hi3 = -1e9;
  for (double s : uniform_samples(map, 100)) {
    const FrenetData f = frenet_apparatus(map, s);
    EXPECT_EQ(f.eps, -1);
    EXPECT_NEAR(f.kappa1, std::sqrt(3.0), 1e-10);
    EXPECT_NEAR(f.kappa2, std::sqrt(8.0 / 3.0), 1e-10);
    EXPECT_NEAR(f.kappa3, std::sqrt(1.0 / 3.0), 1e-10);
    lo1 = std::min(lo1, f.kappa1), hi1 = std::max(hi1, f.kappa1);
    lo2 = std::min(lo2, f.kappa2), hi2 = std::max(hi2, f.kappa2);
    lo3 = std::min(lo3, f.kappa3), hi3 = std::max(hi3, f.kappa3);
  }
  EXPECT_LT(hi1 - lo1, 1e-8);
  EXPECT_LT(hi2 - lo2, 1e-8);
  EXPECT_LT(hi3 - lo3, 1e-8);
}

TEST(Frenet, GramConditionsAndEps) {
  for (const char* id : {"hyperbolic_clelia", "lorentz_helix"}) {
    SCOPED_TRACE(id);
    const ArclengthMap map(make_curve(id));
    for (double s : uniform_samples(map, 25)) {
      const FrenetData f = frenet_apparatus(map, s);
      EXPECT_LT(gram_defect(f), kFrameTol);
      EXPECT_EQ(f.eps, minkowski_square(f.B1) > 0 ? 1 : -1);
      EXPECT_NEAR(minkowski_square(f.B2), -f.eps, kFrameTol);
      EXPECT_GT(f.kappa1, 0);
      EXPECT_GT(f.kappa2, 0);
      EXPECT_GT(f.kappa3, 0);
    }
  }
}

TEST(Frenet, ConstructedCurveFrame) {
  const CurveSpec spec = construct_rectifying(make_curve("hyperbolic_clelia"), {1.0, 0.3});
  const ArclengthMap map(spec);
  for (double s : uniform_samples(map, 20)) EXPECT_LT(gram_defect(frenet_apparatus(map, s)), 1e-8);
}

TEST(Frenet, PlanarCurvesAreDegenerate) {
  for (const char* id : {"hyperbolic_geodesic", "paper_example"}) {
    const ArclengthMap map(make_curve(id));
    try {
      frenet_apparatus(map, 0.5);
      FAIL() << id;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DegenerateFrame) << id;
      EXPECT_EQ(e.level(), 2) << id;
    }
  }
}

TEST(Frenet, OdeResidualOnHelix) {
  const ArclengthMap map(make_curve("lorentz_helix"));
  for (double s : {0.5, 1.5, 2.5}) {
    const auto r = frenet_ode_residual(map, s, 1e-4);
    EXPECT_LT(r[0], 1e-7);
    EXPECT_LT(r[3], 1e-7);
    EXPECT_LT(max_of(r), 1e-7);
  }
}

TEST(Frenet, OdeResidualIsSecondOrder) {
  const ArclengthMap map(construct_rectifying(make_curve("hyperbolic_clelia"), {10.0, 0.3}));
  const double s = 0.5 * map.length();
  const double r1 = max_of(frenet_ode_residual(map, s, 1e-2));
  const double r2 = max_of(frenet_ode_residual(map, s, 5e-3));
  EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.2);
}

TEST(Frenet, OdeResidualRejectsLargeStep) {
  const ArclengthMap map(make_curve("lorentz_helix"));
  EXPECT_THROW(frenet_ode_residual(map, 1.0, 2.0), Error);
}

TEST(Frenet, SignFlipBreaksExtraction) {
  const ArclengthMap map(construct_rectifying(make_curve("hyperbolic_clelia"), {10.0, 0.3}));
  const double s = 0.5 * map.length();
  const double clean = max_of(frenet_ode_residual(map, s, 1e-4));
  double flipped = 0.0;
  {
    FlipGuard guard;
    try {
      flipped = max_of(frenet_ode_residual(map, s, 1e-4));
    } catch (const Error&) {
      flipped = INFINITY;
    }
  }
  EXPECT_FALSE(test_hooks::frenet_sign_flip());
  EXPECT_GT(flipped, 1e3 * clean);
}

TEST(Frenet, MatrixLayout) {
  const Eigen::Matrix4d K = frenet_matrix(2.0, 3.0, 5.0, -1);
  Eigen::Matrix4d expected;
  expected << 0, 2, 0, 0, -2, 0, 3, 0, 0, 3, 0, 5, 0, 0, 5, 0;
  EXPECT_EQ(K, expected);
  EXPECT_EQ(frenet_matrix(2.0, 3.0, 5.0, 1)(2, 1), -3.0);
}
