#include "curvelab/frenet.hpp"

#include <atomic>
#include <cmath>

#include "curvelab/errors.hpp"

namespace curvelab {

namespace test_hooks {
namespace {
std::atomic<bool> g_sign_flip{false};
}
void set_frenet_sign_flip(bool on) { g_sign_flip.store(on); }
bool frenet_sign_flip() { return g_sign_flip.load(); }
}  // namespace test_hooks

const Vec4& FrenetData::frame(int i) const {
  switch (i) {
    case 0: return T;
    case 1: return N;
    case 2: return B1;
    default: return B2;
  }
}

Eigen::Matrix4d frenet_gram_signature(int eps) {
  return Eigen::Vector4d(1.0, 1.0, eps, -eps).asDiagonal();
}

double gram_defect(const FrenetData& f) {
  const Eigen::Matrix4d eta = frenet_gram_signature(f.eps);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      worst = std::max(worst, std::abs(minkowski_dot(f.frame(i), f.frame(j)) - eta(i, j)));
    }
  }
  return worst;
}

namespace {

Vec4 value(const CurveJet& j) { return position(j); }

CurveJet scale(const CurveJet& v, const JetD& a) {
  return CurveJet(v(0) * a, v(1) * a, v(2) * a, v(3) * a);
}

CurveJet divide(const CurveJet& v, const JetD& a) {
  return CurveJet(v(0) / a, v(1) / a, v(2) / a, v(3) / a);
}

[[noreturn]] void degenerate(int level, double s, const char* why) {
  throw Error(ErrorKind::DegenerateFrame,
              std::string("level ") + std::to_string(level) + " at s = " + format_number(s) + ": " + why,
              level);
}

// Euclidean rank test of the osculating flag d1..d4: level k is degenerate
// when d_{k+1} lies in span{d_1..d_k} to relative precision kCurvatureFloor.
void check_flag(const std::array<Vec4, 4>& d, double s) {
  const double n2 = d[1].norm();
  if (n2 <= kCurvatureFloor * d[0].norm()) degenerate(1, s, "second derivative vanishes");
  std::array<Vec4, 4> q;
  q[0] = d[0].normalized();
  for (int k = 1; k < 4; ++k) {
    Vec4 r = d[k];
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) r -= q[j].dot(r) * q[j];
    }
    const double rn = r.norm();
    if (k >= 2 && rn <= kCurvatureFloor * d[k].norm()) {
      degenerate(k, s, k == 2 ? "curve is planar" : "curve lies in a 3-flat");
    }
    if (rn == 0.0) degenerate(k, s, "osculating flag collapsed");
    q[k] = r / rn;
  }
}

}  // namespace

FrenetData frenet_from_arclength_jet(const CurveJet& alpha_s, double s) {
  const CurveJet T = differentiate(alpha_s);  // exact through order 3
  const CurveJet Tp = differentiate(T);       // order 2
  check_flag({value(T), value(Tp), derivative_vector(Tp, 1), derivative_vector(Tp, 2)}, s);

  const Vec4 tp0 = value(Tp);
  const double g_tp = minkowski_square(tp0);
  const double band_tp = kNullBand * tp0.squaredNorm();
  if (g_tp < -band_tp) {
    throw Error(ErrorKind::NonSpacelikePrincipalNormal,
                "T' is timelike at s = " + format_number(s));
  }
  if (g_tp <= band_tp) degenerate(1, s, "T' is null");

  const JetD k1 = sqrt(minkowski_square(Tp));
  const CurveJet N = divide(Tp, k1);

  const JetD zero(0.0);
  const CurveJet R1 = differentiate(N) - scale(T, frenet_matrix(k1, zero, zero, 1)(1, 0));
  const Vec4 r1 = value(R1);
  const double g_r1 = minkowski_square(r1);
  if (std::abs(g_r1) <= kNullBand * r1.squaredNorm()) degenerate(2, s, "first binormal residual is null");
  const int eps = g_r1 > 0.0 ? 1 : -1;
  const JetD k2 = sqrt(minkowski_square(R1) * double(eps));
  if (k2.value() < kCurvatureFloor * std::max(1.0, derivative_vector(Tp, 1).norm())) {
    degenerate(2, s, "second curvature below floor");
  }
  const CurveJet B1 = divide(R1, k2);

  const CurveJet R2 = differentiate(B1) - scale(N, frenet_matrix(k1, k2, zero, eps)(2, 1));
  const Vec4 r2 = value(R2);
  const double g_r2 = minkowski_square(r2);
  if (std::abs(g_r2) <= kNullBand * r2.squaredNorm()) degenerate(3, s, "second binormal residual is null");
  const double k3 = std::sqrt(std::abs(g_r2));
  if (k3 < kCurvatureFloor * std::max(1.0, derivative_vector(Tp, 2).norm())) {
    degenerate(3, s, "third curvature below floor");
  }

  FrenetData f;
  f.s = s;
  f.position = value(alpha_s);
  f.T = value(T);
  f.N = value(N);
  f.B1 = value(B1);
  f.B2 = r2 / k3;
  f.kappa1 = k1.value();
  f.kappa2 = k2.value();
  f.kappa3 = k3;
  f.eps = eps;
  f.dkappa1 = k1.derivative(1);
  f.d2kappa1 = k1.derivative(2);
  f.dkappa2 = k2.derivative(1);
  return f;
}

FrenetData frenet_apparatus(const ArclengthMap& map, double s) {
  return frenet_from_arclength_jet(arclength_jet(map, s), s);
}

std::array<double, 4> frenet_ode_residual(const ArclengthMap& map, double s, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "step h must be > 0");
  const double L = map.length();
  if (2.0 * h > L) throw Error(ErrorKind::InvalidArgument, "step h too large for the arclength range");
  const FrenetData f0 = frenet_apparatus(map, s);
  // Central difference inside, second-order one-sided stencil at the ends.
  std::array<Vec4, 4> numeric;
  if (s - h >= 0.0 && s + h <= L) {
    const FrenetData fp = frenet_apparatus(map, s + h);
    const FrenetData fm = frenet_apparatus(map, s - h);
    for (int i = 0; i < 4; ++i) numeric[i] = (fp.frame(i) - fm.frame(i)) / (2.0 * h);
  } else {
    const double dir = (s - h < 0.0) ? 1.0 : -1.0;
    const FrenetData f1 = frenet_apparatus(map, s + dir * h);
    const FrenetData f2 = frenet_apparatus(map, s + dir * 2.0 * h);
    for (int i = 0; i < 4; ++i) {
      numeric[i] = dir * (-3.0 * f0.frame(i) + 4.0 * f1.frame(i) - f2.frame(i)) / (2.0 * h);
    }
  }
  const Eigen::Matrix4d K = frenet_matrix(f0.kappa1, f0.kappa2, f0.kappa3, f0.eps);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    Vec4 rhs = Vec4::Zero();
    for (int j = 0; j < 4; ++j) rhs += K(i, j) * f0.frame(j);
    out[i] = (numeric[i] - rhs).norm();
  }
  return out;
}

}  // namespace curvelab
