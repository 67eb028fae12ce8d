#pragma once

#include <optional>
#include <string>
#include <vector>

namespace curvelab::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

enum class Suite { All, Lorentz, Frenet, Rectifying };

std::optional<Suite> parse_suite(const std::string& name);
std::vector<int> suite_criteria(Suite s);

inline constexpr int kCriterionCount = 9;

/// Runs one acceptance criterion (1..9). Exceptions count as failure and
/// land in detail.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite(Suite s);

/// "PASS  3 construction-rectifying  max|g(a,N)| = ..."
std::string format_result(const CriterionResult& r);

}  // namespace curvelab::cli
