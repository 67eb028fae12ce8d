#include "curvelab/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "curvelab/catalog.hpp"
#include "curvelab/errors.hpp"

namespace curvelab::cli {

namespace {

std::string descriptor_from_json(const nlohmann::json& j, const char* key) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
    throw UsageError(std::string(key) + " must be a descriptor string or {\"id\": ..., \"params\": {...}}");
  }
  Descriptor d;
  d.name = j["id"].get<std::string>();
  if (j.contains("params")) {
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_number()) throw UsageError(std::string(key) + ".params." + k + " must be a number");
      d.set_number(k, v.get<double>());
    }
  }
  for (const auto& [k, v] : j.items()) {
    if (k != "id" && k != "params") throw UsageError("unknown key " + std::string(key) + "." + k);
  }
  return d.str();
}

template <typename T>
T get(const nlohmann::json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "curve") {
      cfg.curve = descriptor_from_json(v, "curve");
    } else if (key == "sphere") {
      cfg.sphere = descriptor_from_json(v, "sphere");
    } else if (key == "domain") {
      const auto d = get<std::vector<double>>(v, key);
      if (d.size() != 2) throw UsageError("domain must be [lo, hi]");
      cfg.domain = Interval{d[0], d[1]};
    } else if (key == "samples") {
      cfg.samples = get<int>(v, key);
    } else if (key == "t") {
      cfg.t_values = v.is_array() ? get<std::vector<double>>(v, key) : std::vector<double>{get<double>(v, key)};
    } else if (key == "tolerance") {
      cfg.tolerance = get<double>(v, key);
    } else if (key == "output") {
      cfg.output = get<std::string>(v, key);
    } else if (key == "format") {
      const auto f = get<std::string>(v, key);
      if (f == "csv") cfg.format = OutputFormat::Csv;
      else if (f == "json") cfg.format = OutputFormat::Json;
      else throw UsageError("format must be csv or json");
    } else if (key == "a") {
      cfg.a = get<double>(v, key);
    } else if (key == "t0") {
      cfg.t0 = get<double>(v, key);
    } else if (key == "profile") {
      cfg.profile = get<std::string>(v, key);
    } else if (key == "curvature_profile") {
      cfg.curvature_profile = descriptor_from_json(v, "curvature_profile");
    } else if (key == "eps") {
      cfg.eps = get<int>(v, key);
    } else if (key == "s0") {
      cfg.s0 = get<double>(v, key);
    } else if (key == "s1") {
      cfg.s1 = get<double>(v, key);
    } else if (key == "ds") {
      cfg.ds = get<double>(v, key);
    } else if (key == "synth_tol") {
      cfg.synth_tol = get<double>(v, key);
    } else if (key == "reproject") {
      cfg.reproject = get<bool>(v, key);
    } else if (key == "translate_by_x") {
      cfg.translate_by_x = get<bool>(v, key);
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

void apply_json_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
  apply_json(cfg, j);
}

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("CURVELAB_TOL");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string("CURVELAB_TOL must be a positive number, got '") + raw + "'");
  }
  return v;
}

CurveSpec config_curve(const RunConfig& cfg) {
  if (cfg.curve.empty()) throw UsageError("no curve given (--curve or config \"curve\")");
  CurveSpec spec = resolve_curve(cfg.curve);
  if (cfg.domain) spec = with_domain(spec, *cfg.domain);
  return spec;
}

}  // namespace curvelab::cli
