#pragma once

#include <functional>

namespace curvelab {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  /// False when the depth limit or evaluation budget cut refinement short.
  bool converged = true;
};

using ScalarFunction = std::function<double(double)>;

/// Adaptive Simpson with Richardson correction. `tol` is an absolute
/// tolerance on the whole interval; recursion stops at `max_depth`.
QuadratureResult adaptive_simpson(const ScalarFunction& f, double a, double b, double tol,
                                  int max_depth = 40);

/// 16-point Gauss-Legendre rule on [a, b]. Smooth in both endpoints, which
/// matters when the result is later differentiated numerically.
double gauss_legendre16(const ScalarFunction& f, double a, double b);

/// Gauss-Legendre on adaptively bisected panels: a panel is accepted once the
/// 16-point rule agrees with the sum over its halves to within the panel's
/// share of `tol`.
QuadratureResult adaptive_gauss_legendre(const ScalarFunction& f, double a, double b, double tol,
                                         int max_depth = 30, int max_evaluations = 1 << 20);

}  // namespace curvelab
