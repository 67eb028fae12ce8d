#include "curvelab/rectifying.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "curvelab/errors.hpp"
#include "curvelab/quadrature.hpp"

namespace curvelab {

namespace {

constexpr double kKappa3QuadTol = 1e-10;
constexpr double kMaxCondition = 1e8;
constexpr int kKappa3Budget = 20000;
constexpr std::size_t kMinFitSamples = 8;
constexpr double kSphereTol = 1e-10;
constexpr double kSinePoleFloor = 1e-6;

struct LinearFit {
  Eigen::VectorXd coef;
  double rms = 0.0;
  double condition = 0.0;
};

// Least squares with unit-norm columns; condition number of the scaled
// design.
LinearFit least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    if (scale(j) == 0.0) scale(j) = 1.0;
  }
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  LinearFit out;
  out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : HUGE_VAL;
  out.coef = svd.solve(b).cwiseQuotient(scale);
  out.rms = std::sqrt((A * out.coef - b).squaredNorm() / double(b.size()));
  return out;
}

// Polynomial fit in a centered and scaled variable, coefficients returned in
// powers of s (constant first).
Eigen::VectorXd polyfit(const std::vector<double>& s, const std::vector<double>& y, int degree,
                        double& rms) {
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  const double m = 0.5 * (*lo + *hi);
  const double w = std::max(0.5 * (*hi - *lo), 1e-300);
  const Eigen::Index n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = (s[i] - m) / w;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k, p *= x) A(i, k) = p;
    b(i) = y[i];
  }
  const Eigen::VectorXd a = A.colPivHouseholderQr().solve(b);
  rms = std::sqrt((A * a - b).squaredNorm() / double(n));
  // sum a_k ((s - m) / w)^k expanded in powers of s.
  Eigen::VectorXd out = Eigen::VectorXd::Zero(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    const double ak = a(k) / std::pow(w, k);
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      out(j) += ak * binom * std::pow(-m, k - j);
      binom = binom * double(k - j) / double(j + 1);
    }
  }
  return out;
}

void require_samples(std::size_t n, std::size_t need, const char* what) {
  if (n < need) {
    throw Error(ErrorKind::IllConditionedFit, std::string(what) + " needs at least " +
                                                  std::to_string(need) + " samples, got " +
                                                  std::to_string(n));
  }
}

int common_eps(const RectifyingSamples& rs) {
  const int eps = rs.frames.front().eps;
  for (const auto& f : rs.frames) {
    if (f.eps != eps) {
      throw Error(ErrorKind::InvalidArgument,
                  "eps changes sign between samples (at s = " + format_number(f.s) + ")");
    }
  }
  return eps;
}

double fit_residual(const FrenetData& f, double t, const CharacterizationFit& fit) {
  return fit.eps * f.kappa1 * (f.s + fit.c) / f.kappa2 - (fit.A * std::cosh(t) + fit.B * std::sinh(t));
}

double fit_rms(const RectifyingSamples& rs, const CharacterizationFit& fit) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rs.frames.size(); ++i) {
    const double r = fit_residual(rs.frames[i], rs.t[i], fit);
    acc += r * r;
  }
  return std::sqrt(acc / double(rs.frames.size()));
}

double tangential_offset(const RectifyingSamples& rs) {
  double acc = 0.0;
  for (const auto& f : rs.frames) acc += minkowski_dot(f.position, f.T) - f.s;
  return acc / double(rs.frames.size());
}

template <typename F>
auto as_pole(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DivisionNearZero || e.kind() == ErrorKind::SqrtNonPositive) {
      throw Error(ErrorKind::PoleEncountered, e.what());
    }
    throw;
  }
}

class ConstructedCurve final : public CurveModel {
 public:
  ConstructedCurve(CurveSpec sphere, std::optional<ArclengthMap> map, ConstructionParams p)
      : sphere_(std::move(sphere)), map_(std::move(map)), p_(p) {}

  CurveJet evaluate(double tau) const override {
    const CurveJet y = eval_curve(sphere_, tau);
    JetD u;
    if (map_) {
      u = integrate(sqrt(minkowski_square(differentiate(y))));
      u[0] = map_->s_of_t(tau);
    } else {
      u = JetD::variable(tau);
    }
    const JetD arg = u + p_.t0;
    JetD rho;
    if (p_.profile == RadialProfile::Sine) {
      const JetD sn = sin(arg);
      if (std::abs(sn.value()) <= kSinePoleFloor) {
        throw Error(ErrorKind::PoleEncountered, "sin(u + t0) vanishes at tau = " + format_number(tau));
      }
      rho = p_.a / sn;
    } else {
      rho = p_.a / cosh(arg);
    }
    CurveJet out;
    for (int i = 0; i < 4; ++i) out(i) = rho * y(i);
    return out;
  }

 private:
  CurveSpec sphere_;
  std::optional<ArclengthMap> map_;
  ConstructionParams p_;
};

}  // namespace

RectifyingTolerances RectifyingTolerances::uniform(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorKind::InvalidArgument, "tolerance must be > 0");
  RectifyingTolerances t;
  t.recon = t.fit_rms = t.leading_coefficient = t.slope = t.normal_constancy = t.binormal =
      t.constant_vector = t.center = tol;
  return t;
}

double rectifying_residual(const ArclengthMap& map, double s) {
  const FrenetData f = frenet_apparatus(map, s);
  return minkowski_dot(f.position, f.N);
}

ComponentTriple component_functions(const FrenetData& f, std::optional<double> c) {
  ComponentTriple out;
  out.lambda = minkowski_dot(f.position, f.T);
  out.mu = f.eps * minkowski_dot(f.position, f.B1);
  out.nu = -f.eps * minkowski_dot(f.position, f.B2);
  out.reconstruction_error = (out.lambda * f.T + out.mu * f.B1 + out.nu * f.B2 - f.position).norm();
  if (c) {
    const double lam = f.s + *c;
    out.lambda_curvature = lam;
    out.mu_curvature = f.eps * f.kappa1 * lam / f.kappa2;
    // mu' with mu = eps k1 (s + c) / k2.
    const double dmu = f.eps * ((f.dkappa1 * lam + f.kappa1) * f.kappa2 - f.kappa1 * lam * f.dkappa2) /
                       (f.kappa2 * f.kappa2);
    out.nu_curvature = -dmu / f.kappa3;
  }
  return out;
}

ComponentTriple component_functions(const ArclengthMap& map, double s, std::optional<double> c) {
  return component_functions(frenet_apparatus(map, s), c);
}

double integrate_kappa3(const ArclengthMap& map, double s, double s_base) {
  if (s == s_base) return 0.0;
  const ScalarFunction k3 = [&map](double x) { return frenet_apparatus(map, x).kappa3; };
  const double lo = std::min(s, s_base), hi = std::max(s, s_base);
  const QuadratureResult q = adaptive_gauss_legendre(k3, lo, hi, kKappa3QuadTol, 30, kKappa3Budget);
  if (!q.converged) {
    throw Error(ErrorKind::DegenerateFrame,
                "kappa3 quadrature on [" + format_number(lo) + ", " + format_number(hi) +
                    "] did not converge; the frame is close to degenerate there",
                3);
  }
  return s >= s_base ? q.value : -q.value;
}

std::vector<double> uniform_samples(const ArclengthMap& map, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sample count must be >= 1");
  if (n == 1) return {0.5 * map.length()};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = map.length() * double(i) / double(n - 1);
  out.back() = map.length();
  return out;
}

RectifyingSamples collect_samples(const ArclengthMap& map, const std::vector<double>& samples,
                                  double s_base) {
  RectifyingSamples rs;
  rs.s_base = s_base;
  rs.s = samples;
  rs.frames.reserve(samples.size());
  for (double s : samples) rs.frames.push_back(frenet_apparatus(map, s));

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return samples[a] < samples[b]; });
  rs.t.assign(samples.size(), 0.0);
  double prev_s = s_base, prev_t = 0.0;
  for (std::size_t idx : order) {
    prev_t += integrate_kappa3(map, samples[idx], prev_s);
    prev_s = samples[idx];
    rs.t[idx] = prev_t;
  }
  return rs;
}

CharacterizationFit fit_characterization(const RectifyingSamples& rs) {
  require_samples(rs.frames.size(), kMinFitSamples, "characterization fit");
  const int eps = common_eps(rs);
  const Eigen::Index n = static_cast<Eigen::Index>(rs.frames.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const FrenetData& f = rs.frames[i];
    const double q = eps * f.kappa1 / f.kappa2;
    A(i, 0) = q;
    A(i, 1) = -std::cosh(rs.t[i]);
    A(i, 2) = -std::sinh(rs.t[i]);
    b(i) = -q * f.s;
  }
  const LinearFit lf = least_squares(A, b);
  if (!(lf.condition <= kMaxCondition)) {
    throw Error(ErrorKind::IllConditionedFit,
                "design condition number " + format_number(lf.condition) + " exceeds 1e8");
  }
  CharacterizationFit fit;
  fit.c = lf.coef(0);
  fit.A = lf.coef(1);
  fit.B = lf.coef(2);
  fit.eps = eps;
  fit.condition_number = lf.condition;
  fit.s_base = rs.s_base;
  fit.c_tangential = tangential_offset(rs);
  fit.rms_residual = fit_rms(rs, fit);
  return fit;
}

CharacterizationFit fit_characterization(const ArclengthMap& map, const std::vector<double>& samples) {
  require_samples(samples.size(), kMinFitSamples, "characterization fit");
  return fit_characterization(collect_samples(map, samples));
}

CharacterizationFit fit_characterization_fixed_c(const RectifyingSamples& rs, double c) {
  require_samples(rs.frames.size(), kMinFitSamples, "characterization fit");
  const int eps = common_eps(rs);
  const Eigen::Index n = static_cast<Eigen::Index>(rs.frames.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const FrenetData& f = rs.frames[i];
    A(i, 0) = std::cosh(rs.t[i]);
    A(i, 1) = std::sinh(rs.t[i]);
    b(i) = eps * f.kappa1 * (f.s + c) / f.kappa2;
  }
  const LinearFit lf = least_squares(A, b);
  if (!(lf.condition <= kMaxCondition)) {
    throw Error(ErrorKind::IllConditionedFit,
                "design condition number " + format_number(lf.condition) + " exceeds 1e8");
  }
  CharacterizationFit fit;
  fit.c = c;
  fit.A = lf.coef(0);
  fit.B = lf.coef(1);
  fit.eps = eps;
  fit.condition_number = lf.condition;
  fit.s_base = rs.s_base;
  fit.c_tangential = tangential_offset(rs);
  fit.rms_residual = fit_rms(rs, fit);
  return fit;
}

Vec4 constant_vector_X(const FrenetData& f, double t, const CharacterizationFit& fit) {
  const double ch = std::cosh(t), sh = std::sinh(t);
  return f.position - (f.s + fit.c) * f.T - (fit.A * ch + fit.B * sh) * f.B1 +
         (fit.A * sh + fit.B * ch) * f.B2;
}

Vec4 constant_vector_X(const ArclengthMap& map, double s, const CharacterizationFit& fit) {
  return constant_vector_X(frenet_apparatus(map, s), integrate_kappa3(map, s, fit.s_base), fit);
}

RectifyingReport rectifying_report(const RectifyingSamples& rs, const std::string& curve,
                                  const RectifyingTolerances& tol) {
  require_samples(rs.frames.size(), kMinFitSamples, "rectifying report");
  RectifyingReport r;
  r.curve = curve;
  r.samples = rs.frames.size();
  r.tolerances = tol;
  r.fit = fit_characterization(rs);
  r.fit_pass = r.fit.rms_residual <= tol.fit_rms;
  const CharacterizationFit& fit = r.fit;
  const int eps = fit.eps;

  std::vector<double> s, rho_sq, tangential;
  for (const auto& f : rs.frames) {
    s.push_back(f.s);
    rho_sq.push_back(minkowski_square(f.position));
    tangential.push_back(minkowski_dot(f.position, f.T));
    r.max_rectifying_residual = std::max(r.max_rectifying_residual, std::abs(minkowski_dot(f.position, f.N)));
  }

  {
    QuadraticCheck& q = r.distance_quadratic;
    const Eigen::VectorXd p = polyfit(s, rho_sq, 2, q.rms);
    q.c2 = p(0);
    q.c1 = p(1);
    q.leading = p(2);
    q.pass = std::abs(q.leading - 1.0) <= tol.leading_coefficient && q.rms <= tol.fit_rms;
  }
  {
    LinearCheck& l = r.tangential_linear;
    const Eigen::VectorXd p = polyfit(s, tangential, 1, l.rms);
    l.c = p(0);
    l.slope = p(1);
    l.pass = std::abs(l.slope - 1.0) <= tol.slope && l.rms <= tol.fit_rms;
  }
  {
    NormalCheck& nc = r.normal_constancy;
    std::vector<double> q;
    for (const auto& f : rs.frames) {
      const Vec4 an = f.position - minkowski_dot(f.position, f.T) * f.T;
      q.push_back(minkowski_square(an));
    }
    nc.mean = std::accumulate(q.begin(), q.end(), 0.0) / double(q.size());
    for (double v : q) nc.max_deviation = std::max(nc.max_deviation, std::abs(v - nc.mean));
    const auto [lo, hi] = std::minmax_element(rho_sq.begin(), rho_sq.end());
    nc.rho_sq_spread = *hi - *lo;
    nc.a_fit = eps * (fit.A * fit.A - fit.B * fit.B);
    nc.pass = nc.max_deviation <= tol.normal_constancy && nc.rho_sq_spread > tol.rho_variation;
  }
  {
    BinormalCheck& bc = r.binormal_components;
    for (std::size_t i = 0; i < rs.frames.size(); ++i) {
      const FrenetData& f = rs.frames[i];
      const double ch = std::cosh(rs.t[i]), sh = std::sinh(rs.t[i]);
      const double gb1 = minkowski_dot(f.position, f.B1);
      const double gb2 = minkowski_dot(f.position, f.B2);
      bc.b1_residual = std::max(bc.b1_residual, std::abs(gb1 - eps * (fit.A * ch + fit.B * sh)));
      bc.b2_residual = std::max(bc.b2_residual, std::abs(gb2 - eps * (fit.A * sh + fit.B * ch)));
      bc.b2_alternative_residual =
          std::max(bc.b2_alternative_residual, std::abs(gb2 - eps * (fit.A * sh - fit.B * ch)));
    }
    bc.pass = bc.b1_residual <= tol.binormal && bc.b2_residual <= tol.binormal;
    if (bc.pass && bc.b2_alternative_residual > tol.binormal) {
      r.warnings.push_back("second binormal component: the form eps*(A sinh t - B cosh t) misses by " +
                           format_number(bc.b2_alternative_residual) +
                           "; checked against eps*(A sinh t + B cosh t), which matches");
    }
  }
  {
    r.constant_vector = constant_vector_X(rs.frames[0], rs.t[0], fit);
    for (std::size_t i = 1; i < rs.frames.size(); ++i) {
      const Vec4 X = constant_vector_X(rs.frames[i], rs.t[i], fit);
      r.constant_vector_drift = std::max(r.constant_vector_drift, (X - r.constant_vector).norm());
    }
    r.constant_vector_pass = r.constant_vector_drift <= tol.constant_vector;
  }
  if (std::abs(fit.c - fit.c_tangential) > tol.recon && r.fit_pass) {
    r.warnings.push_back("curvatures satisfy the characterization but g(alpha,T) - s averages " +
                         format_number(fit.c_tangential) + " instead of c = " + format_number(fit.c) +
                         ": the curve is rectifying only after translation by the constant vector");
  }
  r.verdict = r.fit_pass && r.distance_quadratic.pass && r.tangential_linear.pass &&
              r.normal_constancy.pass && r.binormal_components.pass && r.constant_vector_pass;
  return r;
}

RectifyingReport rectifying_report(const ArclengthMap& map, const std::vector<double>& samples,
                                  const RectifyingTolerances& tol) {
  require_samples(samples.size(), kMinFitSamples, "rectifying report");
  return rectifying_report(collect_samples(map, samples), map.curve().descriptor.str(), tol);
}

Vec4 spherical_center_at(const FrenetData& f) {
  const JetD k1 = JetD::from_coefficients({f.kappa1, f.dkappa1, 0.5 * f.d2kappa1, 0.0, 0.0});
  const JetD k2 = JetD::from_coefficients({f.kappa2, f.dkappa2, 0.0, 0.0, 0.0});
  // w = (1/k2)(1/k1)'; exact through first order.
  const JetD w = differentiate(1.0 / k1) / k2;
  const double dw = w.derivative(1);
  return f.position + f.N / f.kappa1 + (f.eps * w.value()) * f.B1 -
         ((f.kappa2 / f.kappa1 + f.eps * dw) / f.kappa3) * f.B2;
}

SphericalCenter spherical_center(const ArclengthMap& map, const std::vector<double>& samples,
                                 double center_tol) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "spherical_center needs samples");
  std::vector<FrenetData> frames;
  std::vector<Vec4> centers;
  for (double s : samples) {
    frames.push_back(frenet_apparatus(map, s));
    centers.push_back(spherical_center_at(frames.back()));
  }
  SphericalCenter out;
  for (const Vec4& m : centers) out.m += m;
  out.m /= double(centers.size());
  std::vector<double> r2;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    out.max_drift = std::max(out.max_drift, (centers[i] - centers[0]).norm());
    r2.push_back(minkowski_square(Vec4(frames[i].position - out.m)));
  }
  out.radius_sq = std::accumulate(r2.begin(), r2.end(), 0.0) / double(r2.size());
  const auto [lo, hi] = std::minmax_element(r2.begin(), r2.end());
  out.radius_sq_spread = *hi - *lo;
  out.spherical = out.max_drift < center_tol && out.radius_sq_spread < center_tol;
  out.hyperbolic = out.spherical && out.radius_sq < 0.0;
  return out;
}

OriginShift best_origin_shift(const std::vector<FrenetData>& frames) {
  if (frames.empty()) throw Error(ErrorKind::InvalidArgument, "best_origin_shift needs frames");
  const Eigen::Index n = static_cast<Eigen::Index>(frames.size());
  Eigen::MatrixXd A(n, 4);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec4 gn = frames[i].N;
    gn(0) = -gn(0);
    A.row(i) = gn.transpose();
    b(i) = minkowski_dot(frames[i].position, frames[i].N);
  }
  OriginShift out;
  out.d = A.completeOrthogonalDecomposition().solve(b);
  out.max_residual = (A * out.d - b).cwiseAbs().maxCoeff();
  return out;
}

double rho_ode_residual(const JetFunction& rho, const JetFunction& v, double t) {
  return as_pole([&] {
    const JetD r = rho(t), vv = v(t);
    return differentiate(differentiate(r) / vv).value() - (r / vv).value();
  });
}

double radial_rectifying_residual(const JetFunction& rho, const JetFunction& v, double t) {
  return as_pole([&] {
    const JetD r = rho(t), vv = v(t);
    return differentiate(differentiate(r) / vv).value() + (r / vv).value();
  });
}

JetD cone_speed(const JetD& rho) {
  const JetD d = differentiate(rho);
  return sqrt(rho * rho - d * d);
}

std::string to_string(RadialProfile p) { return p == RadialProfile::Sine ? "sine" : "sech"; }

RadialProfile parse_radial_profile(const std::string& name) {
  if (name == "sech") return RadialProfile::HyperbolicSecant;
  if (name == "sine") return RadialProfile::Sine;
  throw Error(ErrorKind::InvalidArgument, "unknown radial profile '" + name + "' (sech|sine)");
}

CurveSpec construct_rectifying(const CurveSpec& sphere, const ConstructionParams& params) {
  if (!(params.a != 0.0) || !std::isfinite(params.a)) {
    throw Error(ErrorKind::InvalidArgument, "construction needs a nonzero finite a");
  }
  if (!std::isfinite(params.t0)) throw Error(ErrorKind::InvalidArgument, "t0 must be finite");
  const Interval d = sphere.domain;
  if (!(d.lo < d.hi)) throw Error(ErrorKind::OutOfDomain, "sphere curve needs a nonempty domain");

  constexpr int kChecks = 64;
  for (int i = 0; i <= kChecks; ++i) {
    const double tau = d.lo + d.length() * double(i) / kChecks;
    const Vec4 p = position(eval_curve(sphere, tau));
    if (!on_hyperbolic_sphere(p, kSphereTol)) {
      throw Error(ErrorKind::NotOnHyperbolicSphere,
                  sphere.catalog_id + " has g(y,y) = " + format_number(minkowski_square(p)) +
                      " at t = " + format_number(tau));
    }
    speed(sphere, tau);
  }

  std::optional<ArclengthMap> map;
  if (sphere.parameterization != Parameterization::Arclength) map.emplace(sphere);
  const double u_lo = map ? 0.0 : d.lo;
  const double u_hi = map ? map->length() : d.hi;

  CurveSpec out;
  out.catalog_id = "constructed";
  out.params = {{"a", params.a}, {"t0", params.t0}};
  out.domain = d;
  out.parameterization = Parameterization::Arbitrary;
  out.model = std::make_shared<ConstructedCurve>(sphere, std::move(map), params);
  out.descriptor.name = "constructed";
  out.descriptor.set_child("sphere", sphere.descriptor);
  out.descriptor.set_child("profile", Descriptor{to_string(params.profile), {}, {}, {}});
  out.descriptor.set_number("a", params.a);
  out.descriptor.set_number("t0", params.t0);

  if (params.profile == RadialProfile::Sine) {
    // u is increasing, so sin(u + t0) has a zero on the domain iff a multiple
    // of pi lies in [u(lo), u(hi)] + t0 (or comes within the pole floor).
    const double lo = u_lo + params.t0, hi = u_hi + params.t0;
    const double k = std::ceil(lo / std::numbers::pi);
    if (k * std::numbers::pi <= hi || std::abs(std::sin(lo)) <= kSinePoleFloor ||
        std::abs(std::sin(hi)) <= kSinePoleFloor) {
      throw Error(ErrorKind::PoleEncountered,
                  "sin(u + t0) vanishes near u + t0 = " + format_number(std::min(k * std::numbers::pi, hi)));
    }
  }
  return out;
}

}  // namespace curvelab
