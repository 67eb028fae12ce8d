#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/descriptor.hpp"
#include "curvelab/jet.hpp"
#include "curvelab/lorentz.hpp"

namespace curvelab {

using JetD = Jet<double>;

/// One jet per coordinate: position and derivatives through order 4 of a
/// curve at one parameter value.
using CurveJet = Vec4T<JetD>;

enum class Parameterization { Arbitrary, Arclength };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double t, double slack = 0.0) const { return t >= lo - slack && t <= hi + slack; }
};

/// Closed-form (or otherwise jet-evaluable) curve. Implementations are
/// immutable and safe to share across threads.
class CurveModel {
 public:
  virtual ~CurveModel() = default;

  /// Jet of the curve at t. May throw PoleEncountered or propagate jet
  /// errors; eval_curve normalises those.
  virtual CurveJet evaluate(double t) const = 0;
};

struct CurveSpec {
  std::string catalog_id;
  std::map<std::string, double> params;
  Interval domain;
  Parameterization parameterization = Parameterization::Arbitrary;
  std::shared_ptr<const CurveModel> model;
  /// resolve_curve(descriptor) rebuilds an equivalent spec.
  Descriptor descriptor;
};

/// Position and derivatives at t. Throws OutOfDomain outside spec.domain and
/// PoleEncountered when the model hits a singularity (including jet
/// DivisionNearZero / SqrtNonPositive and non-finite results).
CurveJet eval_curve(const CurveSpec& spec, double t);

Vec4 position(const CurveJet& j);

/// k-th derivative vector (k = 0 gives the position).
Vec4 derivative_vector(const CurveJet& j, int k);

CurveJet differentiate(const CurveJet& j);

/// Pseudo-norm of the velocity. Throws NonSpacelikeVelocity unless the
/// velocity is spacelike and nonzero.
double speed(const CurveSpec& spec, double t);

/// Built-in catalog entries: "paper_example" (a, s0), "hyperbolic_geodesic",
/// "hyperbolic_clelia", "lorentz_helix" (A, p, B, q). Missing parameters take
/// catalog defaults; unknown ids or parameter names throw InvalidArgument.
CurveSpec make_curve(const std::string& id, const std::map<std::string, double>& params = {},
                     std::optional<Interval> domain = std::nullopt);

std::vector<std::string> builtin_curve_ids();

/// Same curve on a sub-interval (or any interval the model tolerates).
CurveSpec with_domain(const CurveSpec& spec, Interval domain);

/// Rigid translation alpha(t) + offset.
CurveSpec translated(const CurveSpec& spec, const Vec4& offset);

/// Shortest round-trip decimal for a double.
std::string format_number(double x);

}  // namespace curvelab
