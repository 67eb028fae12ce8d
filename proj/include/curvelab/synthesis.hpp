#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/frenet.hpp"

namespace curvelab {

class ProfileModel {
 public:
  virtual ~ProfileModel() = default;
  /// Jets of (kappa1, kappa2, kappa3) at arclength s.
  virtual std::array<JetD, 3> kappas(double s) const = 0;
};

/// Prescribed curvature functions of arclength plus the binormal sign.
struct CurvatureProfile {
  std::string id;
  std::map<std::string, double> params;
  int eps = 1;
  Interval s_range;
  std::shared_ptr<const ProfileModel> model;
  Descriptor descriptor;

  std::array<JetD, 3> kappas(double s) const { return model->kappas(s); }
};

/// Profile catalog:
///   "constant"          kappa_i = k1, k2, k3
///   "rectifying_family" kappa1 = eps k2 (A cosh(k3 s) + B sinh(k3 s)) / (s + c),
///                       kappa2 = k2, kappa3 = k3
/// Throws InvalidArgument unless every curvature is positive on s_range.
CurvatureProfile make_profile(const std::string& id, const std::map<std::string, double>& params,
                              int eps, Interval s_range);

/// T = e1, N = e2 and (B1, B2) = (e3, e0) for eps = 1 or (e0, e3) for
/// eps = -1, at the origin.
FrenetData standard_initial_frame(int eps, double s0);

struct SynthesisOptions {
  double synth_tol = 1e-6;
  /// Pseudo-Gram-Schmidt projection of the frame after every step.
  bool reproject = false;
  /// When false, drift past synth_tol stops integration and returns the
  /// partial curve instead of throwing.
  bool throw_on_drift = true;
};

struct SynthesisResult {
  CurveSpec curve;
  double max_drift = 0.0;
  bool drift_exceeded = false;
  /// Arclength reached; equals s_range.hi unless integration stopped early.
  double s_end = 0.0;
  FrenetData final_frame;
};

/// Integrates the Frenet system together with alpha' = T by classical RK4
/// with uniform step at most ds. The returned curve is parameterized by
/// arclength on the covered range and evaluates to exact jets by restarting
/// one RK4 step from the nearest node and expanding the ODE in Taylor series.
SynthesisResult synthesize_curve(const CurvatureProfile& profile, const FrenetData& init_frame,
                                 const Vec4& init_pos, double ds, const SynthesisOptions& options = {});

}  // namespace curvelab
