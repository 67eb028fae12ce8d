#include "curvelab/catalog.hpp"

#include <algorithm>
#include <set>

#include "curvelab/errors.hpp"
#include "curvelab/rectifying.hpp"
#include "curvelab/synthesis.hpp"

namespace curvelab {

namespace {

void check_keys(const Descriptor& d, const std::set<std::string>& numbers,
                const std::set<std::string>& children) {
  for (const auto& [k, v] : d.numbers) {
    if (!numbers.count(k) && k != "lo" && k != "hi") {
      throw Error(ErrorKind::InvalidArgument, d.name + " has no numeric argument '" + k + "'");
    }
  }
  for (const auto& k : d.child_keys) {
    if (!children.count(k)) throw Error(ErrorKind::InvalidArgument, d.name + " has no argument '" + k + "'");
  }
}

const Descriptor& required_child(const Descriptor& d, const char* key) {
  const Descriptor* c = d.child(key);
  if (!c) throw Error(ErrorKind::InvalidArgument, d.name + " needs " + key + "=<descriptor>");
  return *c;
}

double required_number(const Descriptor& d, const char* key) {
  const auto v = d.number(key);
  if (!v) throw Error(ErrorKind::InvalidArgument, d.name + " needs " + key + "=<number>");
  return *v;
}

CurveSpec apply_domain(const Descriptor& d, CurveSpec spec) {
  const auto lo = d.number("lo");
  const auto hi = d.number("hi");
  if (!lo && !hi) return spec;
  return with_domain(spec, {lo.value_or(spec.domain.lo), hi.value_or(spec.domain.hi)});
}

int as_eps(double v) {
  if (v != 1.0 && v != -1.0) throw Error(ErrorKind::InvalidArgument, "eps must be +1 or -1");
  return static_cast<int>(v);
}

}  // namespace

CurveSpec resolve_curve(const Descriptor& d) {
  const auto ids = builtin_curve_ids();
  if (std::find(ids.begin(), ids.end(), d.name) != ids.end()) {
    if (!d.children.empty()) {
      throw Error(ErrorKind::InvalidArgument, d.name + " takes numeric arguments only");
    }
    std::map<std::string, double> params;
    for (const auto& [k, v] : d.numbers) {
      if (k != "lo" && k != "hi") params[k] = v;
    }
    return apply_domain(d, make_curve(d.name, params));
  }
  if (d.name == "constructed") {
    check_keys(d, {"a", "t0"}, {"sphere", "profile"});
    ConstructionParams p;
    p.a = required_number(d, "a");
    p.t0 = d.number("t0").value_or(0.0);
    if (const Descriptor* prof = d.child("profile")) p.profile = parse_radial_profile(prof->str());
    return apply_domain(d, construct_rectifying(resolve_curve(required_child(d, "sphere")), p));
  }
  if (d.name == "synthesized") {
    check_keys(d, {"eps", "s0", "s1", "ds", "reproject", "custom_initial_data"}, {"profile"});
    if (d.number("custom_initial_data")) {
      throw Error(ErrorKind::InvalidArgument,
                  "synthesized curve used custom initial data and cannot be rebuilt from its descriptor");
    }
    const Descriptor& pd = required_child(d, "profile");
    if (!pd.children.empty()) throw Error(ErrorKind::InvalidArgument, "profile takes numeric arguments only");
    const int eps = as_eps(d.number("eps").value_or(1.0));
    const Interval range{required_number(d, "s0"), required_number(d, "s1")};
    std::map<std::string, double> params(pd.numbers.begin(), pd.numbers.end());
    const CurvatureProfile profile = make_profile(pd.name, params, eps, range);
    SynthesisOptions opt;
    opt.reproject = d.number("reproject").value_or(0.0) != 0.0;
    const double ds = required_number(d, "ds");
    return apply_domain(
        d, synthesize_curve(profile, standard_initial_frame(eps, range.lo), Vec4::Zero(), ds, opt).curve);
  }
  if (d.name == "translated") {
    check_keys(d, {"d0", "d1", "d2", "d3"}, {"curve"});
    Vec4 off;
    for (int i = 0; i < 4; ++i) off(i) = d.number("d" + std::to_string(i)).value_or(0.0);
    return apply_domain(d, translated(resolve_curve(required_child(d, "curve")), off));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown curve id '" + d.name + "'");
}

CurveSpec resolve_curve(std::string_view text) { return resolve_curve(parse_descriptor(text)); }

}  // namespace curvelab
