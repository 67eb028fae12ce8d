#include "curvelab/lorentz.hpp"

#include <string>

#include "curvelab/errors.hpp"

namespace curvelab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::PoleEncountered: return "PoleEncountered";
    case ErrorKind::DivisionNearZero: return "DivisionNearZero";
    case ErrorKind::SqrtNonPositive: return "SqrtNonPositive";
    case ErrorKind::NonSpacelikeVelocity: return "NonSpacelikeVelocity";
    case ErrorKind::NonSpacelikePrincipalNormal: return "NonSpacelikePrincipalNormal";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::FrameDriftExceeded: return "FrameDriftExceeded";
    case ErrorKind::IllConditionedFit: return "IllConditionedFit";
    case ErrorKind::NotOnHyperbolicSphere: return "NotOnHyperbolicSphere";
  }
  return "Unknown";
}

std::string_view to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Null: return "null";
  }
  return "unknown";
}

bool is_finite(const Vec4& v) { return v.allFinite(); }

void require_finite(const Vec4& v, std::string_view what) {
  if (!v.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " has a non-finite coordinate");
  }
}

CausalCharacter causal_character(const Vec4& v, double tol) {
  require_finite(v, "causal_character argument");
  if (!(tol >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be >= 0");
  if (v.isZero(0.0)) return CausalCharacter::Spacelike;
  const double q = minkowski_square(v);
  const double band = tol * v.squaredNorm();
  if (q > band) return CausalCharacter::Spacelike;
  if (q < -band) return CausalCharacter::Timelike;
  return CausalCharacter::Null;
}

bool on_hyperbolic_sphere(const Vec4& p, double tol) {
  require_finite(p, "on_hyperbolic_sphere argument");
  if (!(tol >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be >= 0");
  return std::abs(minkowski_square(p) + 1.0) <= tol;
}

}  // namespace curvelab
