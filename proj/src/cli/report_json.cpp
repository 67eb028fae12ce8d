#include "curvelab/cli/report_json.hpp"

#include <cmath>
#include <set>

namespace curvelab::cli {

namespace {

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

std::string check_keys(const nlohmann::json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) return where + " is not an object";
  for (const auto& k : keys) {
    if (!j.contains(k)) return where + " lacks key " + k;
  }
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) return where + " has unexpected key " + k;
  }
  return {};
}

}  // namespace

nlohmann::json report_to_json(const RectifyingReport& r) {
  using nlohmann::json;
  const auto& q = r.distance_quadratic;
  const auto& l = r.tangential_linear;
  const auto& n = r.normal_constancy;
  const auto& b = r.binormal_components;
  const auto& t = r.tolerances;
  json out;
  out["curve"] = r.curve;
  out["samples"] = r.samples;
  out["thm31"] = {{"c", num(r.fit.c)},
                  {"A", num(r.fit.A)},
                  {"B", num(r.fit.B)},
                  {"eps", r.fit.eps},
                  {"rms_residual", num(r.fit.rms_residual)}};
  out["thm33"] = {
      {"distance_quadratic",
       {{"c1", num(q.c1)}, {"c2", num(q.c2)}, {"leading", num(q.leading)}, {"fit_residual", num(q.rms)}, {"pass", q.pass}}},
      {"tangential_linear", {{"c", num(l.c)}, {"slope", num(l.slope)}, {"fit_residual", num(l.rms)}, {"pass", l.pass}}},
      {"normal_constancy",
       {{"a", num(n.mean)},
        {"a_fit", num(n.a_fit)},
        {"max_deviation", num(n.max_deviation)},
        {"rho_sq_spread", num(n.rho_sq_spread)},
        {"pass", n.pass}}},
      {"binormal_components",
       {{"b1_residual", num(b.b1_residual)},
        {"b2_residual", num(b.b2_residual)},
        {"b2_alternative_residual", num(b.b2_alternative_residual)},
        {"pass", b.pass}}}};
  out["constant_vector_drift"] = num(r.constant_vector_drift);
  out["verdict"] = r.verdict;
  out["tolerances"] = {{"recon", t.recon},
                       {"fit_rms", t.fit_rms},
                       {"leading_coefficient", t.leading_coefficient},
                       {"slope", t.slope},
                       {"normal_constancy", t.normal_constancy},
                       {"rho_variation", t.rho_variation},
                       {"binormal", t.binormal},
                       {"constant_vector", t.constant_vector},
                       {"center", t.center}};
  out["warnings"] = r.warnings;
  return out;
}

std::string validate_report_json(const nlohmann::json& j) {
  std::string e = check_keys(j, {"curve", "samples", "thm31", "thm33", "constant_vector_drift", "verdict",
                                 "tolerances", "warnings"},
                             "report");
  if (!e.empty()) return e;
  if (!j["curve"].is_string()) return "curve is not a string";
  if (!j["samples"].is_number_unsigned()) return "samples is not a count";
  if (!j["verdict"].is_boolean()) return "verdict is not a boolean";
  if (!j["warnings"].is_array()) return "warnings is not an array";
  for (const auto& w : j["warnings"]) {
    if (!w.is_string()) return "warning is not a string";
  }
  if (!(e = check_keys(j["thm31"], {"c", "A", "B", "eps", "rms_residual"}, "thm31")).empty()) return e;
  if (!(e = check_keys(j["thm33"], {"distance_quadratic", "tangential_linear", "normal_constancy",
                                    "binormal_components"},
                       "thm33"))
           .empty()) {
    return e;
  }
  for (const auto& [k, v] : j["thm33"].items()) {
    if (!v.is_object() || !v.contains("pass") || !v["pass"].is_boolean()) return "thm33." + k + " lacks pass";
  }
  if (!j["tolerances"].is_object()) return "tolerances is not an object";
  return {};
}

}  // namespace curvelab::cli
