#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "curvelab/errors.hpp"
#include "curvelab/rectifying.hpp"
#include "curvelab/synthesis.hpp"

using namespace curvelab;
using std::numbers::pi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

CurveSpec constructed(double a = 1.0, double t0 = 0.3) {
  return construct_rectifying(make_curve("hyperbolic_clelia"), {a, t0});
}

CurveSpec synthesized_family() {
  const auto p = make_profile("rectifying_family", {{"A", 1.0}, {"B", 0.0}, {"c", 0.0}, {"k2", 1.0}, {"k3", 1.0}},
                              1, {0.5, 2.5});
  return synthesize_curve(p, standard_initial_frame(1, 0.5), Vec4::Zero(), 1e-3).curve;
}

JetFunction sech_profile(double a) {
  return [a](double u) { return a / cosh(JetD::variable(u)); };
}

}  // namespace

TEST(Rectifying, ConstructedCurveIsRectifying) {
  const ArclengthMap map(constructed());
  for (double s : uniform_samples(map, 40)) EXPECT_LT(std::abs(rectifying_residual(map, s)), 1e-10);
}

TEST(Rectifying, ConstructionIsScaleCovariant) {
  const CurveSpec one = constructed(1.0), ten = constructed(10.0);
  for (double t : {0.1, 0.25, 0.4}) {
    EXPECT_TRUE((10 * position(eval_curve(one, t)) - position(eval_curve(ten, t))).isZero(1e-12));
  }
}

TEST(Rectifying, ConstructionErrors) {
  EXPECT_EQ(kind_of([] { constructed(0.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { construct_rectifying(make_curve("lorentz_helix"), {}); }), ErrorKind::NotOnHyperbolicSphere);
  EXPECT_EQ(kind_of([] {
              construct_rectifying(make_curve("hyperbolic_geodesic"), {1.0, 0.0, RadialProfile::Sine});
            }),
            ErrorKind::PoleEncountered);
  EXPECT_THROW(parse_radial_profile("cosine"), Error);
  EXPECT_EQ(parse_radial_profile(to_string(RadialProfile::Sine)), RadialProfile::Sine);
}

TEST(Rectifying, SineProfileReproducesExampleCoordinates) {
  const CurveSpec spec =
      construct_rectifying(make_curve("hyperbolic_geodesic", {}, Interval{1.0, 2.0}), {1.0, 0.0, RadialProfile::Sine});
  const Vec4 p = position(eval_curve(spec, pi / 2));
  EXPECT_NEAR(p(0), std::cosh(pi / 2), 1e-14);
  EXPECT_NEAR(p(1), 0.0, 1e-14);
  EXPECT_NEAR(p(2), std::sinh(pi / 2), 1e-14);
  EXPECT_NEAR(p(3), 0.0, 1e-14);
}

TEST(Rectifying, RadialProfileResiduals) {
  const JetFunction unit = [](double) { return JetD(1.0); };
  // a / sin u with unit speed: rho'' - rho = 2 a cos^2 u / sin^3 u.
  const JetFunction sine = [](double u) { return 2.0 / sin(JetD::variable(u)); };
  for (double u : {0.4, 1.0, 2.0}) {
    const double expected = 4 * std::pow(std::cos(u), 2) / std::pow(std::sin(u), 3);
    EXPECT_NEAR(rho_ode_residual(sine, unit, u), expected, 1e-12 * std::max(1.0, expected));
  }
  const JetFunction flat = [](double) { return JetD(3.0); };
  EXPECT_NEAR(rho_ode_residual(flat, unit, 0.7), -3.0, 1e-15);
  EXPECT_NEAR(radial_rectifying_residual(flat, unit, 0.7), 3.0, 1e-15);

  // a sech u has cone speed a sech^2 u and zero radial residual.
  const JetFunction rho = sech_profile(2.5);
  const JetFunction v = [&](double u) { return cone_speed(rho(u)); };
  for (double u : {-1.0, 0.0, 0.3, 2.0}) {
    EXPECT_NEAR(v(u).value(), 2.5 / std::pow(std::cosh(u), 2), 1e-14);
    EXPECT_NEAR(radial_rectifying_residual(rho, v, u), 0.0, 1e-12);
  }
  // a / sin u does not.
  const JetFunction lit = [](double u) { return 1.0 / sin(JetD::variable(u)); };
  const JetFunction vlit = [&](double u) { return cone_speed(lit(u)); };
  EXPECT_GT(std::abs(radial_rectifying_residual(lit, vlit, 1.2)), 1e-2);
  EXPECT_EQ(kind_of([&] { cone_speed(lit(0.3)); }), ErrorKind::SqrtNonPositive);
}

TEST(Rectifying, FitOnSynthesizedFamily) {
  // Profile s in [0.5, 2.5] maps to arclength u = s - 0.5, so
  // cosh s = cosh 0.5 cosh u + sinh 0.5 sinh u.
  const ArclengthMap map(synthesized_family());
  const CharacterizationFit fit = fit_characterization(map, uniform_samples(map, 50));
  EXPECT_NEAR(fit.c, 0.5, 1e-8);
  EXPECT_NEAR(fit.A, std::cosh(0.5), 1e-8);
  EXPECT_NEAR(fit.B, std::sinh(0.5), 1e-8);
  EXPECT_EQ(fit.eps, 1);
  EXPECT_LT(fit.rms_residual, 1e-10);
}

TEST(Rectifying, ConstantVectorIsConstant) {
  const ArclengthMap map(synthesized_family());
  const RectifyingSamples rs = collect_samples(map, uniform_samples(map, 30));
  const CharacterizationFit fit = fit_characterization(rs);
  const Vec4 X0 = constant_vector_X(rs.frames.front(), rs.t.front(), fit);
  for (std::size_t i = 0; i < rs.s.size(); ++i) {
    EXPECT_TRUE((constant_vector_X(rs.frames[i], rs.t[i], fit) - X0).isZero(1e-8)) << rs.s[i];
  }
  // Moving the origin to X makes the curve rectifying.
  const ArclengthMap shifted(translated(map.curve(), -X0));
  for (double s : uniform_samples(shifted, 20)) EXPECT_LT(std::abs(rectifying_residual(shifted, s)), 1e-8);
}

TEST(Rectifying, ReportOnConstructedCurve) {
  const ArclengthMap map(constructed());
  const RectifyingReport r = rectifying_report(map, uniform_samples(map, 100));
  EXPECT_TRUE(r.verdict);
  EXPECT_TRUE(r.fit_pass);
  EXPECT_TRUE(r.distance_quadratic.pass);
  EXPECT_NEAR(r.distance_quadratic.leading, 1.0, 1e-8);
  EXPECT_TRUE(r.tangential_linear.pass);
  EXPECT_NEAR(r.tangential_linear.slope, 1.0, 1e-8);
  EXPECT_TRUE(r.normal_constancy.pass);
  EXPECT_TRUE(r.binormal_components.pass);
  EXPECT_TRUE(r.constant_vector.isZero(1e-10));
  EXPECT_GT(r.binormal_components.b2_alternative_residual, 1e-2);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Rectifying, ReportOnHelix) {
  const ArclengthMap map(make_curve("lorentz_helix"));
  const RectifyingReport r = rectifying_report(map, uniform_samples(map, 100));
  EXPECT_FALSE(r.verdict);
  EXPECT_GT(r.fit.rms_residual, 1e-2);
}

TEST(Rectifying, HelixHasNoRectifyingOrigin) {
  const ArclengthMap map(make_curve("lorentz_helix"));
  const RectifyingSamples rs = collect_samples(map, uniform_samples(map, 60));
  EXPECT_GT(best_origin_shift(rs.frames).max_residual, 1e-2);
}

TEST(Rectifying, OriginShiftRecoversTranslation) {
  const Vec4 d(0.3, -1.2, 0.7, 2.0);
  const ArclengthMap map(translated(constructed(), d));
  const RectifyingSamples rs = collect_samples(map, uniform_samples(map, 40));
  const OriginShift o = best_origin_shift(rs.frames);
  EXPECT_LT(o.max_residual, 1e-10);
  EXPECT_TRUE((o.d - d).isZero(1e-8));
}

TEST(Rectifying, FitNeedsEnoughSamples) {
  const ArclengthMap map(constructed());
  EXPECT_EQ(kind_of([&] { fit_characterization(map, uniform_samples(map, 5)); }), ErrorKind::IllConditionedFit);
  EXPECT_EQ(kind_of([&] { rectifying_report(map, uniform_samples(map, 7)); }), ErrorKind::IllConditionedFit);
}

TEST(Rectifying, FixedCFitAgreesWithJointFit) {
  const ArclengthMap map(constructed());
  const RectifyingSamples rs = collect_samples(map, uniform_samples(map, 50));
  const CharacterizationFit joint = fit_characterization(rs);
  const CharacterizationFit fixed = fit_characterization_fixed_c(rs, joint.c);
  EXPECT_NEAR(fixed.A, joint.A, 1e-8);
  EXPECT_NEAR(fixed.B, joint.B, 1e-8);
  EXPECT_NEAR(joint.c_tangential, joint.c, 1e-8);
}

TEST(Rectifying, ComponentsReconstructPosition) {
  const ArclengthMap map(constructed());
  const RectifyingSamples rs = collect_samples(map, uniform_samples(map, 20));
  const CharacterizationFit fit = fit_characterization(rs);
  for (const FrenetData& f : rs.frames) {
    const ComponentTriple c = component_functions(f, fit.c);
    EXPECT_LT(c.reconstruction_error, 1e-10);
    EXPECT_NEAR(*c.lambda_curvature, c.lambda, 1e-8);
    EXPECT_NEAR(*c.mu_curvature, c.mu, 1e-8);
    EXPECT_NEAR(*c.nu_curvature, c.nu, 1e-7);
  }
}

TEST(Rectifying, Kappa3Integral) {
  // Constant kappa3 = 1/sqrt 3 on the helix.
  const ArclengthMap map(make_curve("lorentz_helix"));
  EXPECT_NEAR(integrate_kappa3(map, 2.0), 2.0 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(integrate_kappa3(map, 2.0, 1.0), 1.0 / std::sqrt(3.0), 1e-9);
}

TEST(Rectifying, SphericalCenter) {
  // Helix sits on g(x, x) = A^2 + B^2 = 3 about the origin.
  const ArclengthMap helix(make_curve("lorentz_helix"));
  const SphericalCenter h = spherical_center(helix, uniform_samples(helix, 50));
  EXPECT_TRUE(h.spherical);
  EXPECT_FALSE(h.hyperbolic);
  EXPECT_NEAR(h.radius_sq, 3.0, 1e-8);
  EXPECT_TRUE(h.m.isZero(1e-8));

  const ArclengthMap clelia(make_curve("hyperbolic_clelia"));
  const SphericalCenter c = spherical_center(clelia, uniform_samples(clelia, 50));
  EXPECT_TRUE(c.hyperbolic);
  EXPECT_NEAR(c.radius_sq, -1.0, 1e-8);

  const ArclengthMap rect(constructed());
  EXPECT_FALSE(spherical_center(rect, uniform_samples(rect, 50)).spherical);
}

TEST(Rectifying, UniformTolerances) {
  const RectifyingTolerances t = RectifyingTolerances::uniform(1e-3);
  EXPECT_EQ(t.recon, 1e-3);
  EXPECT_EQ(t.slope, 1e-3);
  EXPECT_EQ(t.center, 1e-3);
  EXPECT_EQ(t.rho_variation, RectifyingTolerances{}.rho_variation);
}
