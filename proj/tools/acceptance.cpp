// One line per acceptance criterion; exit status 0 iff all pass.
#include <iostream>

#include "curvelab/cli/suites.hpp"

int main() {
  using namespace curvelab::cli;
  int failed = 0;
  for (int id = 1; id <= kCriterionCount; ++id) {
    const CriterionResult r = run_criterion(id);
    std::cout << format_result(r) << std::endl;
    if (!r.pass) ++failed;
  }
  std::cout << (kCriterionCount - failed) << "/" << kCriterionCount << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
