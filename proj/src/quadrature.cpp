#include "curvelab/quadrature.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>

namespace curvelab {

namespace {

constexpr double kRoundingFloor = 64.0 * std::numeric_limits<double>::epsilon();

struct SimpsonPanel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

void simpson_recurse(const ScalarFunction& f, const SimpsonPanel& p, double tol, int depth,
                     QuadratureResult& out) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  out.evaluations += 2;
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  const double floor = kRoundingFloor * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= std::max(15.0 * tol, floor)) {
    if (std::abs(delta) > std::max(15.0 * tol, floor)) out.converged = false;
    out.value += left + right + delta / 15.0;
    out.error_estimate += std::abs(delta) / 15.0;
    return;
  }
  simpson_recurse(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1, out);
  simpson_recurse(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1, out);
}

constexpr std::array<std::array<double, 2>, 8> kGL16 = {{
    {0.095012509837637440185, 0.18945061045506849629},
    {0.28160355077925891323, 0.18260341504492358887},
    {0.45801677765722738634, 0.16915651939500253819},
    {0.61787624440264374845, 0.14959598881657673208},
    {0.7554044083550030339, 0.12462897125553387205},
    {0.86563120238783174388, 0.09515851168249278481},
    {0.94457502307323257608, 0.062253523938647892863},
    {0.9894009349916499326, 0.027152459411754094852},
}};

void gl_recurse(const ScalarFunction& f, double a, double b, double whole, double tol, int depth,
                int budget, QuadratureResult& out) {
  const double m = 0.5 * (a + b);
  const double left = gauss_legendre16(f, a, m);
  const double right = gauss_legendre16(f, m, b);
  out.evaluations += 32;
  const double delta = left + right - whole;
  // Below the rounding floor further bisection only chases noise.
  const double floor = kRoundingFloor * (std::abs(left) + std::abs(right));
  if (depth <= 0 || out.evaluations >= budget || std::abs(delta) <= std::max(tol, floor)) {
    if (std::abs(delta) > std::max(tol, floor)) out.converged = false;
    out.value += left + right;
    out.error_estimate += std::abs(delta);
    return;
  }
  gl_recurse(f, a, m, left, 0.5 * tol, depth - 1, budget, out);
  gl_recurse(f, m, b, right, 0.5 * tol, depth - 1, budget, out);
}

}  // namespace

QuadratureResult adaptive_simpson(const ScalarFunction& f, double a, double b, double tol,
                                  int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  out.evaluations = 3;
  simpson_recurse(f, {a, b, fa, fm, fb, simpson(a, b, fa, fm, fb)}, tol, max_depth, out);
  return out;
}

double gauss_legendre16(const ScalarFunction& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (const auto& [x, w] : kGL16) acc += w * (f(mid - half * x) + f(mid + half * x));
  return acc * half;
}

QuadratureResult adaptive_gauss_legendre(const ScalarFunction& f, double a, double b, double tol,
                                         int max_depth, int max_evaluations) {
  QuadratureResult out;
  if (a == b) return out;
  const double whole = gauss_legendre16(f, a, b);
  out.evaluations = 16;
  gl_recurse(f, a, b, whole, tol, max_depth, max_evaluations, out);
  return out;
}

}  // namespace curvelab
