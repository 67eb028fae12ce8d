#include <gtest/gtest.h>

#include "curvelab/catalog.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/rectifying.hpp"
#include "curvelab/synthesis.hpp"

using namespace curvelab;

namespace {

void expect_same_curve(const CurveSpec& a, const CurveSpec& b) {
  EXPECT_EQ(a.domain.lo, b.domain.lo);
  EXPECT_EQ(a.domain.hi, b.domain.hi);
  for (int i = 0; i <= 4; ++i) {
    const double t = a.domain.lo + a.domain.length() * i / 4.0;
    const CurveJet ja = eval_curve(a, t), jb = eval_curve(b, t);
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(derivative_vector(ja, k), derivative_vector(jb, k)) << "t=" << t;
  }
}

}  // namespace

TEST(Descriptor, ParseAndPrint) {
  const Descriptor d = parse_descriptor(" constructed( sphere = hyperbolic_clelia(lo=0.1,hi=0.4), a=2, t0=-0.3 )");
  EXPECT_EQ(d.name, "constructed");
  EXPECT_EQ(d.number("a"), 2.0);
  EXPECT_EQ(d.number("t0"), -0.3);
  ASSERT_NE(d.child("sphere"), nullptr);
  EXPECT_EQ(d.child("sphere")->number("hi"), 0.4);
  EXPECT_EQ(d.str(), "constructed(sphere=hyperbolic_clelia(lo=0.1,hi=0.4),a=2,t0=-0.3)");
  EXPECT_EQ(parse_descriptor(d.str()).str(), d.str());
}

TEST(Descriptor, Malformed) {
  for (const char* text : {"", "a(", "a(b=)", "a(b=1,,c=2)", "a(b=1)x", "(b=1)", "a(1)"}) {
    EXPECT_THROW(parse_descriptor(text), Error) << text;
  }
}

TEST(Catalog, BuiltinsRoundTrip) {
  for (const auto& id : builtin_curve_ids()) {
    const CurveSpec spec = make_curve(id);
    expect_same_curve(spec, resolve_curve(spec.descriptor));
    expect_same_curve(spec, resolve_curve(spec.descriptor.str()));
  }
}

TEST(Catalog, DomainOverride) {
  const CurveSpec spec = resolve_curve("lorentz_helix(lo=0.5,hi=1)");
  EXPECT_EQ(spec.domain.lo, 0.5);
  EXPECT_EQ(spec.domain.hi, 1.0);
}

TEST(Catalog, ConstructedRoundTrip) {
  const CurveSpec spec = construct_rectifying(make_curve("hyperbolic_clelia"), {2.0, 0.3});
  expect_same_curve(spec, resolve_curve(spec.descriptor.str()));
}

TEST(Catalog, SynthesizedRoundTrip) {
  const auto p = make_profile("constant", {{"k1", 1.0}, {"k2", 0.5}, {"k3", 0.7}}, -1, {0.0, 1.0});
  const SynthesisResult r = synthesize_curve(p, standard_initial_frame(-1, 0.0), Vec4::Zero(), 1e-2);
  expect_same_curve(r.curve, resolve_curve(r.curve.descriptor.str()));
}

TEST(Catalog, TranslatedRoundTrip) {
  const CurveSpec spec = translated(make_curve("hyperbolic_clelia"), Vec4(0.1, 0.2, -0.3, 4.0));
  expect_same_curve(spec, resolve_curve(spec.descriptor.str()));
}

TEST(Catalog, RejectsUnknownArguments) {
  for (const char* text : {"nothing", "hyperbolic_clelia(x=1)", "constructed(a=1)", "constructed(sphere=hyperbolic_clelia,b=1)",
                           "synthesized(profile=constant,s0=0,s1=1,ds=0.1,custom_initial_data=1)",
                           "synthesized(profile=constant,s0=0,s1=1,ds=0.1,eps=2)"}) {
    try {
      resolve_curve(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument) << text;
    }
  }
}
