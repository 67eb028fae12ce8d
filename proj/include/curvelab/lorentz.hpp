#pragma once

// Minkowski space E_1^4 with signature (-,+,+,+). Coordinate x0 carries the
// minus sign; x1..x3 are the spacelike coordinates.

#include <cmath>
#include <string_view>

#include <Eigen/Core>

namespace curvelab {

template <typename Scalar>
using Vec4T = Eigen::Matrix<Scalar, 4, 1>;

using Vec4 = Vec4T<double>;

enum class CausalCharacter { Spacelike, Timelike, Null };

std::string_view to_string(CausalCharacter c);

inline constexpr double kDefaultCausalTolerance = 1e-12;

/// g(v, w) = -v0 w0 + v1 w1 + v2 w2 + v3 w3. Works for any scalar type with
/// ring operations, so the same routine handles plain vectors and jets.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar minkowski_dot(const Eigen::MatrixBase<DerivedA>& v,
                                        const Eigen::MatrixBase<DerivedB>& w) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedA, 4);
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedB, 4);
  return -(v(0) * w(0)) + v(1) * w(1) + v(2) * w(2) + v(3) * w(3);
}

template <typename Derived>
typename Derived::Scalar minkowski_square(const Eigen::MatrixBase<Derived>& v) {
  return minkowski_dot(v, v);
}

/// sqrt(|g(v, v)|); zero on null vectors.
inline double pseudo_norm(const Vec4& v) {
  return std::sqrt(std::abs(minkowski_square(v)));
}

/// Spacelike if g(v,v) > tol |v|_E^2 or v = 0, timelike if g(v,v) <
/// -tol |v|_E^2, null otherwise. Throws InvalidArgument on non-finite input
/// or negative tolerance.
CausalCharacter causal_character(const Vec4& v, double tol = kDefaultCausalTolerance);

/// |g(p,p) + 1| <= tol, i.e. p lies on the hyperbolic unit sphere H_0^3(1).
bool on_hyperbolic_sphere(const Vec4& p, double tol);

bool is_finite(const Vec4& v);

/// Throws InvalidArgument naming `what` unless every coordinate is finite.
void require_finite(const Vec4& v, std::string_view what);

}  // namespace curvelab
