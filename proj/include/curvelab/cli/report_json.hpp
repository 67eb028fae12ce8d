#pragma once

#include <json.hpp>

#include "curvelab/rectifying.hpp"

namespace curvelab::cli {

/// Top-level keys: curve, samples, thm31, thm33, constant_vector_drift,
/// verdict, tolerances, warnings. Non-finite numbers become null.
nlohmann::json report_to_json(const RectifyingReport& r);

/// Empty when j has the documented shape, otherwise the first problem.
std::string validate_report_json(const nlohmann::json& j);

}  // namespace curvelab::cli
