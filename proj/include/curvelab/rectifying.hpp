#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/arclength.hpp"
#include "curvelab/frenet.hpp"

namespace curvelab {

struct RectifyingTolerances {
  double recon = 1e-6;
  double fit_rms = 1e-6;
  double leading_coefficient = 1e-6;
  double slope = 1e-8;
  double normal_constancy = 1e-7;
  /// Minimum spread of g(alpha, alpha) for "rho is not constant".
  double rho_variation = 1e-6;
  double binormal = 1e-6;
  double constant_vector = 1e-6;
  double center = 1e-5;

  /// Every residual threshold set to tol (rho_variation is a lower bound and
  /// keeps its default).
  static RectifyingTolerances uniform(double tol);
};

/// alpha = lambda T + mu B1 + nu B2 + (residual along N).
struct ComponentTriple {
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  /// lambda = s + c, mu = eps kappa1 (s + c) / kappa2, nu = -mu' / kappa3;
  /// present only when c is supplied.
  std::optional<double> lambda_curvature, mu_curvature, nu_curvature;

  /// Euclidean norm of lambda T + mu B1 + nu B2 - alpha.
  double reconstruction_error = 0.0;
};

/// g(alpha(s), N(s)).
double rectifying_residual(const ArclengthMap& map, double s);

ComponentTriple component_functions(const FrenetData& f, std::optional<double> c = std::nullopt);
ComponentTriple component_functions(const ArclengthMap& map, double s,
                                    std::optional<double> c = std::nullopt);

/// Integral of kappa3 over arclength from s_base to s (adaptive, 1e-10).
double integrate_kappa3(const ArclengthMap& map, double s, double s_base = 0.0);

/// Frames and t(s) = integral of kappa3 from s_base, at every sample.
struct RectifyingSamples {
  double s_base = 0.0;
  std::vector<double> s;
  std::vector<FrenetData> frames;
  std::vector<double> t;
};

/// n equally spaced arclength samples covering [0, length] inclusive.
std::vector<double> uniform_samples(const ArclengthMap& map, int n);

RectifyingSamples collect_samples(const ArclengthMap& map, const std::vector<double>& samples,
                                  double s_base = 0.0);

struct CharacterizationFit {
  double c = 0.0;
  double A = 0.0;
  double B = 0.0;
  int eps = 1;
  double rms_residual = 0.0;
  /// Mean of g(alpha, T) - s; equals c only when alpha is rectifying about
  /// the current origin.
  double c_tangential = 0.0;
  double condition_number = 0.0;
  double s_base = 0.0;
};

/// Solves eps kappa1 (s + c) / kappa2 = A cosh t + B sinh t for (c, A, B) by
/// linear least squares. Uses curvatures only, so the result does not depend
/// on where the origin sits. Throws IllConditionedFit with fewer than 8
/// samples or a column-scaled condition number above 1e8, InvalidArgument if
/// eps is not constant across samples.
CharacterizationFit fit_characterization(const RectifyingSamples& samples);
CharacterizationFit fit_characterization(const ArclengthMap& map, const std::vector<double>& samples);

/// Same relation with c held fixed; fits (A, B) only.
CharacterizationFit fit_characterization_fixed_c(const RectifyingSamples& samples, double c);

/// X = alpha - (s + c) T - (A cosh t + B sinh t) B1 + (A sinh t + B cosh t) B2.
Vec4 constant_vector_X(const FrenetData& f, double t, const CharacterizationFit& fit);
Vec4 constant_vector_X(const ArclengthMap& map, double s, const CharacterizationFit& fit);

struct QuadraticCheck {
  double c1 = 0.0, c2 = 0.0, leading = 0.0, rms = 0.0;
  bool pass = false;
};

struct LinearCheck {
  double c = 0.0, slope = 0.0, rms = 0.0;
  bool pass = false;
};

struct NormalCheck {
  double mean = 0.0;
  /// eps (A^2 - B^2) from the fit.
  double a_fit = 0.0;
  double max_deviation = 0.0;
  double rho_sq_spread = 0.0;
  bool pass = false;
};

struct BinormalCheck {
  /// max |g(alpha, B1) - eps (A cosh t + B sinh t)|
  double b1_residual = 0.0;
  /// max |g(alpha, B2) - eps (A sinh t + B cosh t)|
  double b2_residual = 0.0;
  /// max |g(alpha, B2) - eps (A sinh t - B cosh t)|, reported for comparison.
  double b2_alternative_residual = 0.0;
  bool pass = false;
};

struct RectifyingReport {
  std::string curve;
  std::size_t samples = 0;
  CharacterizationFit fit;
  bool fit_pass = false;
  QuadraticCheck distance_quadratic;
  LinearCheck tangential_linear;
  NormalCheck normal_constancy;
  BinormalCheck binormal_components;
  Vec4 constant_vector = Vec4::Zero();
  double constant_vector_drift = 0.0;
  bool constant_vector_pass = false;
  double max_rectifying_residual = 0.0;
  RectifyingTolerances tolerances;
  std::vector<std::string> warnings;
  bool verdict = false;
};

/// Throws IllConditionedFit with fewer than 8 samples.
RectifyingReport rectifying_report(const RectifyingSamples& samples, const std::string& curve,
                                  const RectifyingTolerances& tol = {});
RectifyingReport rectifying_report(const ArclengthMap& map, const std::vector<double>& samples,
                                  const RectifyingTolerances& tol = {});

struct SphericalCenter {
  /// Mean of the pointwise centers.
  Vec4 m = Vec4::Zero();
  double max_drift = 0.0;
  /// Mean and spread of g(alpha - m, alpha - m).
  double radius_sq = 0.0;
  double radius_sq_spread = 0.0;
  /// Centers agree and g(alpha - m, alpha - m) is constant, within center_tol.
  bool spherical = false;
  /// spherical with g(alpha - m, alpha - m) < 0, i.e. on a hyperbolic sphere
  /// rather than a pseudo-sphere.
  bool hyperbolic = false;
};

/// Pointwise center
///   m = alpha + N / k1 + eps (1/k2) (1/k1)' B1 - (1/k3) [k2/k1 + eps ((1/k2)(1/k1)')'] B2.
Vec4 spherical_center_at(const FrenetData& f);
SphericalCenter spherical_center(const ArclengthMap& map, const std::vector<double>& samples,
                                 double center_tol = 1e-5);

/// Origin d minimising the sum of g(alpha - d, N)^2 over the frames, and the
/// resulting max |g(alpha - d, N)|.
struct OriginShift {
  Vec4 d = Vec4::Zero();
  double max_residual = 0.0;
};
OriginShift best_origin_shift(const std::vector<FrenetData>& frames);

using JetFunction = std::function<JetD(double)>;

/// (rho' / v)' - rho / v at t.
double rho_ode_residual(const JetFunction& rho, const JetFunction& v, double t);

/// (rho' / v)' + rho / v at t. Zero for the radial profile of a rectifying
/// curve rho y with y unit-speed on the hyperbolic sphere and v the speed.
double radial_rectifying_residual(const JetFunction& rho, const JetFunction& v, double t);

/// Speed sqrt(rho^2 - rho'^2) of rho y for unit-speed y on the hyperbolic
/// sphere. Throws SqrtNonPositive where the velocity is not spacelike.
JetD cone_speed(const JetD& rho);

enum class RadialProfile {
  /// rho = a / cosh(u + t0): rectifying.
  HyperbolicSecant,
  /// rho = a / sin(u + t0): the literal profile; not rectifying in general.
  Sine,
};

std::string to_string(RadialProfile p);
RadialProfile parse_radial_profile(const std::string& name);

struct ConstructionParams {
  double a = 1.0;
  double t0 = 0.0;
  RadialProfile profile = RadialProfile::HyperbolicSecant;
};

/// alpha(tau) = rho(u(tau)) y(tau), u the arclength of y (u = tau when y is
/// declared arclength-parameterized, otherwise measured from its domain
/// start). Throws InvalidArgument for a = 0, NotOnHyperbolicSphere,
/// NonSpacelikeVelocity (of y) and PoleEncountered (sine profile).
CurveSpec construct_rectifying(const CurveSpec& sphere, const ConstructionParams& params);

}  // namespace curvelab
