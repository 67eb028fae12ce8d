#pragma once

#include <array>

#include <Eigen/Core>

#include "curvelab/arclength.hpp"

namespace curvelab {

inline constexpr double kCurvatureFloor = 1e-10;
inline constexpr double kNullBand = 1e-10;
inline constexpr double kFrameTol = 1e-8;

/// Frenet apparatus of a unit-speed spacelike curve with spacelike principal
/// normal: g(T,T) = g(N,N) = 1, g(B1,B1) = eps, g(B2,B2) = -eps.
struct FrenetData {
  double s = 0.0;
  Vec4 position = Vec4::Zero();
  Vec4 T = Vec4::Zero();
  Vec4 N = Vec4::Zero();
  Vec4 B1 = Vec4::Zero();
  Vec4 B2 = Vec4::Zero();
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double kappa3 = 0.0;
  int eps = 1;
  // Arclength derivatives of the curvatures, exact from the jets.
  double dkappa1 = 0.0;
  double d2kappa1 = 0.0;
  double dkappa2 = 0.0;

  /// 0 = T, 1 = N, 2 = B1, 3 = B2.
  const Vec4& frame(int i) const;
};

namespace test_hooks {
/// Flips the sign of the -eps*kappa2 entry of the Frenet coefficient matrix
/// everywhere it is used (extraction, residuals, synthesis). Test-only.
void set_frenet_sign_flip(bool on);
bool frenet_sign_flip();
}  // namespace test_hooks

/// Coefficient matrix K of (T, N, B1, B2)' = K (T, N, B1, B2):
///   [    0      k1    0   0 ]
///   [  -k1       0   k2   0 ]
///   [    0  -eps k2   0  k3 ]
///   [    0       0   k3   0 ]
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> frenet_matrix(const Scalar& k1, const Scalar& k2, const Scalar& k3,
                                          int eps) {
  Eigen::Matrix<Scalar, 4, 4> K;
  K.setConstant(Scalar(0.0));
  const double row3_sign = test_hooks::frenet_sign_flip() ? 1.0 : -1.0;
  K(0, 1) = k1;
  K(1, 0) = -k1;
  K(1, 2) = k2;
  K(2, 1) = k2 * Scalar(row3_sign * eps);
  K(2, 3) = k3;
  K(3, 2) = k3;
  return K;
}

/// Expected Gram matrix diag(1, 1, eps, -eps).
Eigen::Matrix4d frenet_gram_signature(int eps);

/// Largest deviation among the 10 Gram conditions g(E_i, E_j) = eta_ij.
double gram_defect(const FrenetData& f);

/// Frame and curvatures from a jet in the arclength parameter (as returned by
/// arclength_jet). Throws DegenerateFrame(level) when the osculating flag
/// collapses or a residual is null, NonSpacelikePrincipalNormal when T' is
/// timelike.
FrenetData frenet_from_arclength_jet(const CurveJet& alpha_s, double s);

FrenetData frenet_apparatus(const ArclengthMap& map, double s);

/// Euclidean norms of (difference quotient of each frame vector with step h)
/// minus the Frenet right-hand side at s, ordered T, N, B1, B2. Central
/// differences where s +- h is in range, one-sided second order otherwise.
std::array<double, 4> frenet_ode_residual(const ArclengthMap& map, double s, double h);

}  // namespace curvelab
