#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvelab/curve.hpp"

namespace curvelab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitUsage = 64;

/// Bad flags, config files or environment; maps to exit 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string curve;
  std::optional<Interval> domain;
  int samples = 100;
  std::vector<double> t_values;
  std::optional<double> tolerance;
  std::string output;
  OutputFormat format = OutputFormat::Csv;

  // construct
  std::string sphere;
  double a = 1.0;
  double t0 = 0.0;
  std::string profile = "sech";

  // synthesize
  std::string curvature_profile;
  int eps = 1;
  double s0 = 0.0;
  double s1 = 1.0;
  double ds = 1e-3;
  double synth_tol = 1e-6;
  bool reproject = false;
  bool translate_by_x = false;
};

/// Merges a JSON config object into cfg. Accepted keys mirror the long flag
/// names with '-' written as '_'; "curve" and "sphere" take a descriptor
/// string or {"id": ..., "params": {...}}, "domain" takes [lo, hi].
void apply_json(RunConfig& cfg, const nlohmann::json& j);
void apply_json_file(RunConfig& cfg, const std::string& path);

/// CURVELAB_TOL, if set. Throws UsageError unless it parses as a positive
/// finite number.
std::optional<double> env_tolerance();

/// Resolved curve with the domain override applied.
CurveSpec config_curve(const RunConfig& cfg);

}  // namespace curvelab::cli
