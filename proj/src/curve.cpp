#include "curvelab/curve.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "curvelab/errors.hpp"

namespace curvelab {

std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

namespace {

constexpr double kPoleGuard = 1e-6;

Descriptor describe(const std::string& id, const std::map<std::string, double>& params,
                    const Interval& domain) {
  Descriptor d;
  d.name = id;
  for (const auto& [k, v] : params) d.set_number(k, v);
  d.set_number("lo", domain.lo);
  d.set_number("hi", domain.hi);
  return d;
}

// alpha(t) = a / sin(t + s0) * (cosh t, 0, sinh t, 0)
class SineConeCurve final : public CurveModel {
 public:
  SineConeCurve(double a, double s0) : a_(a), s0_(s0) {}

  CurveJet evaluate(double t) const override {
    if (std::abs(std::sin(t + s0_)) <= kPoleGuard) {
      throw Error(ErrorKind::PoleEncountered,
                  "paper_example: sin(t + s0) vanishes at t = " + format_number(t));
    }
    const JetD x = JetD::variable(t);
    const JetD rho = JetD(a_) / sin(x + s0_);
    return CurveJet(rho * cosh(x), JetD(0.0), rho * sinh(x), JetD(0.0));
  }

 private:
  double a_, s0_;
};

// y(t) = (cosh t, 0, sinh t, 0), a unit-speed geodesic of H_0^3(1).
class HyperbolicGeodesic final : public CurveModel {
 public:
  CurveJet evaluate(double t) const override {
    const JetD x = JetD::variable(t);
    return CurveJet(cosh(x), JetD(0.0), sinh(x), JetD(0.0));
  }
};

// y(t) = (cosh t, sinh t cos t, sinh t sin t cos t, sinh t sin^2 t): radial
// distance t in H_0^3(1) along a Clelia-type direction on the unit 2-sphere.
class HyperbolicClelia final : public CurveModel {
 public:
  CurveJet evaluate(double t) const override {
    const JetD x = JetD::variable(t);
    const JetD sh = sinh(x);
    const JetD s = sin(x);
    const JetD c = cos(x);
    return CurveJet(cosh(x), sh * c, sh * s * c, sh * s * s);
  }
};

// alpha(t) = (A sinh pt, A cosh pt, B cos qt, B sin qt)
class LorentzHelix final : public CurveModel {
 public:
  LorentzHelix(double A, double p, double B, double q) : A_(A), p_(p), B_(B), q_(q) {}

  CurveJet evaluate(double t) const override {
    const JetD pt = JetD::variable(t) * p_;
    const JetD qt = JetD::variable(t) * q_;
    return CurveJet(A_ * sinh(pt), A_ * cosh(pt), B_ * cos(qt), B_ * sin(qt));
  }

 private:
  double A_, p_, B_, q_;
};

class TranslatedCurve final : public CurveModel {
 public:
  TranslatedCurve(std::shared_ptr<const CurveModel> inner, Vec4 offset)
      : inner_(std::move(inner)), offset_(std::move(offset)) {}

  CurveJet evaluate(double t) const override {
    CurveJet j = inner_->evaluate(t);
    for (int i = 0; i < 4; ++i) j(i)[0] += offset_(i);
    return j;
  }

 private:
  std::shared_ptr<const CurveModel> inner_;
  Vec4 offset_;
};

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  double v = it->second;
  params.erase(it);
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "parameter " + key + " is not finite");
  return v;
}

void reject_leftovers(const std::string& id, const std::map<std::string, double>& params) {
  if (params.empty()) return;
  throw Error(ErrorKind::InvalidArgument,
              "curve " + id + " has no parameter named '" + params.begin()->first + "'");
}

}  // namespace

CurveJet eval_curve(const CurveSpec& spec, double t) {
  if (!spec.model) throw Error(ErrorKind::InvalidArgument, "curve spec has no model");
  if (!std::isfinite(t)) throw Error(ErrorKind::OutOfDomain, "non-finite parameter");
  const double slack = 1e-12 * std::max(1.0, std::abs(t));
  if (!spec.domain.contains(t, slack)) {
    throw Error(ErrorKind::OutOfDomain, "t = " + format_number(t) + " outside [" +
                                            format_number(spec.domain.lo) + ", " +
                                            format_number(spec.domain.hi) + "] of " +
                                            spec.catalog_id);
  }
  CurveJet j;
  try {
    j = spec.model->evaluate(t);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DivisionNearZero || e.kind() == ErrorKind::SqrtNonPositive) {
      throw Error(ErrorKind::PoleEncountered, spec.catalog_id + " at t = " + format_number(t) +
                                                  " (" + e.what() + ")");
    }
    throw;
  }
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < JetD::kSize; ++k) {
      if (!std::isfinite(j(i)[k])) {
        throw Error(ErrorKind::PoleEncountered,
                    spec.catalog_id + " is not finite at t = " + format_number(t));
      }
    }
  }
  return j;
}

Vec4 position(const CurveJet& j) { return derivative_vector(j, 0); }

Vec4 derivative_vector(const CurveJet& j, int k) {
  return Vec4(j(0).derivative(k), j(1).derivative(k), j(2).derivative(k), j(3).derivative(k));
}

CurveJet differentiate(const CurveJet& j) {
  return CurveJet(differentiate(j(0)), differentiate(j(1)), differentiate(j(2)),
                  differentiate(j(3)));
}

double speed(const CurveSpec& spec, double t) {
  const Vec4 v = derivative_vector(eval_curve(spec, t), 1);
  if (v.isZero(0.0) || causal_character(v) != CausalCharacter::Spacelike) {
    throw Error(ErrorKind::NonSpacelikeVelocity,
                spec.catalog_id + " velocity is " +
                    (v.isZero(0.0) ? std::string("zero") : std::string(to_string(causal_character(v)))) +
                    " at t = " + format_number(t));
  }
  return pseudo_norm(v);
}

std::vector<std::string> builtin_curve_ids() {
  return {"paper_example", "hyperbolic_geodesic", "hyperbolic_clelia", "lorentz_helix"};
}

CurveSpec make_curve(const std::string& id, const std::map<std::string, double>& params_in,
                     std::optional<Interval> domain) {
  using std::numbers::pi;
  std::map<std::string, double> rest = params_in;
  CurveSpec spec;
  spec.catalog_id = id;
  if (id == "paper_example") {
    const double a = take(rest, "a", 1.0);
    const double s0 = take(rest, "s0", 0.0);
    reject_leftovers(id, rest);
    if (a == 0.0) throw Error(ErrorKind::InvalidArgument, "paper_example requires a != 0");
    spec.params = {{"a", a}, {"s0", s0}};
    // Velocity is spacelike only while cos(2(t + s0)) < 0.
    spec.domain = {pi / 4 - s0 + 0.01, 3 * pi / 4 - s0 - 0.01};
    spec.model = std::make_shared<SineConeCurve>(a, s0);
  } else if (id == "hyperbolic_geodesic") {
    reject_leftovers(id, rest);
    spec.domain = {-2.0, 2.0};
    spec.parameterization = Parameterization::Arclength;
    spec.model = std::make_shared<HyperbolicGeodesic>();
  } else if (id == "hyperbolic_clelia") {
    reject_leftovers(id, rest);
    spec.domain = {0.1, 0.4};
    spec.model = std::make_shared<HyperbolicClelia>();
  } else if (id == "lorentz_helix") {
    const double A = take(rest, "A", 1.0);
    const double p = take(rest, "p", 1.0);
    const double B = take(rest, "B", std::sqrt(2.0));
    const double q = take(rest, "q", 1.0);
    reject_leftovers(id, rest);
    const double g = B * B * q * q - A * A * p * p;
    if (!(g > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "lorentz_helix needs B^2 q^2 > A^2 p^2 (spacelike)");
    }
    spec.params = {{"A", A}, {"p", p}, {"B", B}, {"q", q}};
    spec.domain = {0.0, 3.0};
    spec.parameterization =
        std::abs(g - 1.0) <= 1e-12 ? Parameterization::Arclength : Parameterization::Arbitrary;
    spec.model = std::make_shared<LorentzHelix>(A, p, B, q);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown curve id '" + id + "'");
  }
  if (domain) {
    if (!(domain->lo <= domain->hi) || !std::isfinite(domain->lo) || !std::isfinite(domain->hi)) {
      throw Error(ErrorKind::InvalidArgument, "domain must satisfy lo <= hi");
    }
    spec.domain = *domain;
  }
  spec.descriptor = describe(id, spec.params, spec.domain);
  return spec;
}

CurveSpec with_domain(const CurveSpec& spec, Interval domain) {
  if (!(domain.lo <= domain.hi)) throw Error(ErrorKind::InvalidArgument, "domain must satisfy lo <= hi");
  CurveSpec out = spec;
  out.domain = domain;
  out.descriptor.set_number("lo", domain.lo);
  out.descriptor.set_number("hi", domain.hi);
  return out;
}

CurveSpec translated(const CurveSpec& spec, const Vec4& offset) {
  require_finite(offset, "translation offset");
  CurveSpec out = spec;
  out.model = std::make_shared<TranslatedCurve>(spec.model, offset);
  out.params = {{"d0", offset(0)}, {"d1", offset(1)}, {"d2", offset(2)}, {"d3", offset(3)}};
  out.catalog_id = "translated";
  out.descriptor = Descriptor{};
  out.descriptor.name = "translated";
  out.descriptor.set_child("curve", spec.descriptor);
  for (int i = 0; i < 4; ++i) out.descriptor.set_number("d" + std::to_string(i), offset(i));
  return out;
}

}  // namespace curvelab
