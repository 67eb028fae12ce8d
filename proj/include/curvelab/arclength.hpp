#pragma once

#include <array>
#include <vector>

#include "curvelab/curve.hpp"

namespace curvelab {

inline constexpr double kReparamTol = 1e-10;

/// Monotone arclength table s(t) = integral of the speed from domain.lo, with
/// the inverse t(s). Holds its curve, so downstream operations take the map
/// alone.
class ArclengthMap {
 public:
  /// Throws OutOfDomain for an empty interior, NonSpacelikeVelocity or
  /// PoleEncountered if the speed cannot be evaluated on the domain.
  explicit ArclengthMap(CurveSpec spec, double tol = kReparamTol);

  const CurveSpec& curve() const { return spec_; }
  double length() const { return s_nodes_.back(); }
  Interval s_range() const { return {0.0, length()}; }
  Interval parameter_range() const { return spec_.domain; }
  /// Sum of per-panel quadrature error estimates.
  double error_bound() const { return error_bound_; }
  std::size_t panel_count() const { return t_nodes_.size() - 1; }

  double s_of_t(double t) const;
  /// Safeguarded Newton on s(t) - s with bisection fallback.
  double t_of_s(double s) const;
  double speed_at(double t) const;

 private:
  CurveSpec spec_;
  std::vector<double> t_nodes_;
  std::vector<double> s_nodes_;
  double error_bound_ = 0.0;
};

inline ArclengthMap arclength_map(const CurveSpec& spec, double tol = kReparamTol) {
  return ArclengthMap(spec, tol);
}

/// Jet of the curve in its arclength parameter at s: the curve jet in t
/// composed with the reverted series of s(t).
CurveJet arclength_jet(const ArclengthMap& map, double s);

/// d^k alpha / ds^k for k = 1..4.
std::array<Vec4, 4> derivatives_by_arclength(const ArclengthMap& map, double s);

}  // namespace curvelab
