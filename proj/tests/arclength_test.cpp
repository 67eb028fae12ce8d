#include <cmath>

#include <gtest/gtest.h>

#include "curvelab/arclength.hpp"
#include "curvelab/errors.hpp"

using namespace curvelab;

TEST(Arclength, UnitSpeedIsIdentity) {
  for (const char* id : {"hyperbolic_geodesic", "lorentz_helix"}) {
    const CurveSpec spec = make_curve(id);
    const ArclengthMap map(spec);
    for (int i = 0; i <= 20; ++i) {
      const double t = spec.domain.lo + spec.domain.length() * i / 20.0;
      EXPECT_NEAR(map.s_of_t(t), t - spec.domain.lo, 1e-10) << id;
      EXPECT_NEAR(map.t_of_s(t - spec.domain.lo), t, 1e-10) << id;
    }
  }
}

TEST(Arclength, CleliaLengthMatchesReference) {
  // sympy numeric integral of the speed over [0.1, 0.4].
  const ArclengthMap map(make_curve("hyperbolic_clelia"));
  EXPECT_NEAR(map.length(), 0.31154966111585804034, 1e-10);
  EXPECT_LT(map.error_bound(), 1e-10);
}

TEST(Arclength, InverseRoundTrip) {
  const ArclengthMap map(make_curve("paper_example"));
  for (int i = 0; i <= 50; ++i) {
    const double s = map.length() * i / 50.0;
    EXPECT_NEAR(map.s_of_t(map.t_of_s(s)), s, 1e-10);
  }
}

TEST(Arclength, EmptyDomain) {
  try {
    ArclengthMap map(make_curve("hyperbolic_geodesic", {}, Interval{0.5, 0.5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfDomain);
  }
}

TEST(Arclength, DerivativesOfUnitSpeedCurve) {
  const CurveSpec helix = make_curve("lorentz_helix");
  const ArclengthMap map(helix);
  for (double s : {0.0, 0.4, 1.7, 3.0}) {
    const auto d = derivatives_by_arclength(map, s);
    EXPECT_TRUE((d[0] - derivative_vector(eval_curve(helix, s), 1)).isZero(1e-10));
    EXPECT_NEAR(minkowski_square(d[0]), 1.0, 1e-12);
  }
}

TEST(Arclength, HigherDerivativesAgainstFiniteDifferences) {
  const ArclengthMap map(make_curve("paper_example"));
  for (double s : {0.3, 0.8, 1.4}) {
    // Smaller steps where the speed collapses toward the end of the domain.
    const double h = s > 1.2 ? 1e-4 : 1e-3;
    const auto d = derivatives_by_arclength(map, s);
    const auto dm2 = derivatives_by_arclength(map, s - 2 * h), dm1 = derivatives_by_arclength(map, s - h);
    const auto dp1 = derivatives_by_arclength(map, s + h), dp2 = derivatives_by_arclength(map, s + 2 * h);
    for (int k = 1; k < 4; ++k) {
      const Vec4 fd = (dm2[k - 1] - 8 * dm1[k - 1] + 8 * dp1[k - 1] - dp2[k - 1]) / (12 * h);
      EXPECT_LT((fd - d[k]).norm() / std::max(d[k].norm(), 1.0), 1e-6) << "s=" << s << " k=" << k + 1;
    }
  }
}
