#include <cmath>

#include <gtest/gtest.h>

#include "curvelab/arclength.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/synthesis.hpp"

using namespace curvelab;

namespace {

CurvatureProfile constant_profile(double k, Interval range, int eps = 1) {
  return make_profile("constant", {{"k1", k}, {"k2", k}, {"k3", k}}, eps, range);
}

SynthesisResult run(const CurvatureProfile& p, double ds, SynthesisOptions opt = {}) {
  return synthesize_curve(p, standard_initial_frame(p.eps, p.s_range.lo), Vec4::Zero(), ds, opt);
}

}  // namespace

TEST(Synthesis, StandardFrameIsAdmissible) {
  for (int eps : {1, -1}) {
    const FrenetData f = standard_initial_frame(eps, 0.0);
    EXPECT_EQ(gram_defect(f), 0.0);
    EXPECT_EQ(minkowski_square(f.B1), double(eps));
  }
}

TEST(Synthesis, ZeroLengthRangeReturnsInitialData) {
  const FrenetData init = standard_initial_frame(1, 2.0);
  const Vec4 p0(1, 2, 3, 4);
  const SynthesisResult r = synthesize_curve(constant_profile(1.0, {2.0, 2.0}), init, p0, 1e-3);
  EXPECT_EQ(r.max_drift, 0.0);
  EXPECT_EQ(r.s_end, 2.0);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(r.final_frame.frame(i), init.frame(i));
  EXPECT_EQ(position(eval_curve(r.curve, 2.0)), p0);
}

TEST(Synthesis, ConstantProfileDrift) {
  const SynthesisResult r = run(constant_profile(1.0, {0.0, 5.0}), 1e-3);
  EXPECT_LT(r.max_drift, 1e-8);
  EXPECT_FALSE(r.drift_exceeded);
  EXPECT_EQ(r.s_end, 5.0);
}

// The Gram conditions are quadratic invariants, which classical RK4 preserves
// one order better than its local error suggests: drift scales like ds^5.
TEST(Synthesis, DriftConvergenceRate) {
  SynthesisOptions opt;
  opt.synth_tol = 1.0;
  const auto p = constant_profile(1.0, {0.0, 5.0});
  const double ratio = run(p, 0.1, opt).max_drift / run(p, 0.05, opt).max_drift;
  EXPECT_GT(ratio, 16.0);
  EXPECT_LT(ratio, 40.0);
}

TEST(Synthesis, InvalidStep) {
  const auto p = constant_profile(1.0, {0.0, 1.0});
  for (double ds : {-1e-3, 0.0, double(NAN)}) {
    try {
      run(p, ds);
      FAIL() << ds;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
  }
}

TEST(Synthesis, DriftLimit) {
  const auto p = constant_profile(1.0, {0.0, 5.0});
  SynthesisOptions opt;
  opt.synth_tol = 1e-9;
  opt.throw_on_drift = true;
  try {
    run(p, 0.1, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FrameDriftExceeded);
  }
  opt.throw_on_drift = false;
  const SynthesisResult partial = run(p, 0.1, opt);
  EXPECT_TRUE(partial.drift_exceeded);
  EXPECT_LT(partial.s_end, 5.0);
}

TEST(Synthesis, ReprojectionKeepsFrame) {
  SynthesisOptions opt;
  opt.synth_tol = 1.0;
  const auto p = constant_profile(1.0, {0.0, 5.0});
  opt.reproject = true;
  const double projected = run(p, 0.1, opt).max_drift;
  opt.reproject = false;
  EXPECT_LT(projected, 1e-3 * run(p, 0.1, opt).max_drift);
}

TEST(Synthesis, ScalingCovariance) {
  // kappa -> 2 kappa with s -> s / 2 is the same linear system.
  const SynthesisResult a = run(constant_profile(1.0, {0.0, 4.0}), 1e-3);
  const SynthesisResult b = run(constant_profile(2.0, {0.0, 2.0}), 5e-4);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE((a.final_frame.frame(i) - b.final_frame.frame(i)).isZero(1e-8)) << i;
  for (double s : {0.5, 1.3, 3.7}) {
    const ArclengthMap ma(a.curve), mb(b.curve);
    const auto da = derivatives_by_arclength(ma, s);
    const auto db = derivatives_by_arclength(mb, s / 2);
    EXPECT_TRUE((da[0] - db[0]).isZero(1e-8));
    EXPECT_TRUE((position(eval_curve(a.curve, s)) - 2 * position(eval_curve(b.curve, s / 2))).isZero(1e-8));
  }
}

TEST(Synthesis, ExtractedCurvaturesMatchProfile) {
  const auto p = make_profile("rectifying_family", {{"A", 1.0}, {"B", 0.0}, {"c", 0.0}, {"k2", 1.0}, {"k3", 1.0}},
                              1, {0.5, 2.5});
  const SynthesisResult r = run(p, 1e-3);
  const ArclengthMap map(r.curve);
  for (double u : {0.1, 0.9, 1.7}) {
    const FrenetData f = frenet_apparatus(map, u);
    const double s = 0.5 + u;
    EXPECT_EQ(f.eps, 1);
    EXPECT_NEAR(f.kappa1, std::cosh(s) / s, 1e-8);
    EXPECT_NEAR(f.kappa2, 1.0, 1e-8);
    EXPECT_NEAR(f.kappa3, 1.0, 1e-8);
  }
}

TEST(Synthesis, ProfileMustBePositive) {
  EXPECT_THROW(make_profile("constant", {{"k1", 1.0}, {"k2", 0.0}, {"k3", 1.0}}, 1, {0.0, 1.0}), Error);
  // (s + c) crosses zero inside the range.
  EXPECT_THROW(make_profile("rectifying_family", {{"A", 1.0}, {"B", 0.0}, {"c", -1.0}}, 1, {0.5, 2.5}), Error);
  EXPECT_THROW(make_profile("no_such_profile", {}, 1, {0.0, 1.0}), Error);
  EXPECT_THROW(make_profile("constant", {}, 0, {0.0, 1.0}), Error);
}
