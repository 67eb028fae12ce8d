#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvelab {

enum class ErrorKind {
  InvalidArgument,
  OutOfDomain,
  PoleEncountered,
  DivisionNearZero,
  SqrtNonPositive,
  NonSpacelikeVelocity,
  NonSpacelikePrincipalNormal,
  DegenerateFrame,
  FrameDriftExceeded,
  IllConditionedFit,
  NotOnHyperbolicSphere,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `level()` is only meaningful for
/// DegenerateFrame, where it names the Frenet residual (1..3) that vanished.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int level = 0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        level_(level) {}

  ErrorKind kind() const noexcept { return kind_; }
  int level() const noexcept { return level_; }

 private:
  ErrorKind kind_;
  int level_;
};

}  // namespace curvelab
