#include "curvelab/arclength.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvelab/errors.hpp"
#include "curvelab/quadrature.hpp"

namespace curvelab {

namespace {

constexpr int kInitialPanels = 16;
constexpr int kMaxPanelDepth = 24;

struct Panel {
  double a, b, value, error;
};

void refine(const ScalarFunction& v, double a, double b, double whole, double tol_per_unit,
            int depth, std::vector<Panel>& out) {
  const double m = 0.5 * (a + b);
  const double left = gauss_legendre16(v, a, m);
  const double right = gauss_legendre16(v, m, b);
  const double delta = std::abs(left + right - whole);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
  if (delta <= std::max(tol_per_unit * (b - a), floor) || depth <= 0) {
    out.push_back({a, b, whole, delta});
    return;
  }
  refine(v, a, m, left, tol_per_unit, depth - 1, out);
  refine(v, m, b, right, tol_per_unit, depth - 1, out);
}

}  // namespace

ArclengthMap::ArclengthMap(CurveSpec spec, double tol) : spec_(std::move(spec)) {
  const Interval d = spec_.domain;
  if (!(d.lo < d.hi)) {
    throw Error(ErrorKind::OutOfDomain, "arclength map needs a domain with nonempty interior");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "reparameterization tolerance must be > 0");
  const ScalarFunction v = [this](double t) { return speed(spec_, t); };
  speed(spec_, d.lo);
  speed(spec_, d.hi);

  std::vector<Panel> panels;
  const double tol_per_unit = tol / d.length();
  const double h = d.length() / kInitialPanels;
  for (int i = 0; i < kInitialPanels; ++i) {
    const double a = d.lo + i * h;
    const double b = (i + 1 == kInitialPanels) ? d.hi : d.lo + (i + 1) * h;
    refine(v, a, b, gauss_legendre16(v, a, b), tol_per_unit, kMaxPanelDepth, panels);
  }
  t_nodes_.reserve(panels.size() + 1);
  s_nodes_.reserve(panels.size() + 1);
  t_nodes_.push_back(d.lo);
  s_nodes_.push_back(0.0);
  for (const Panel& p : panels) {
    t_nodes_.push_back(p.b);
    s_nodes_.push_back(s_nodes_.back() + p.value);
    error_bound_ += p.error;
  }
}

double ArclengthMap::speed_at(double t) const { return speed(spec_, t); }

double ArclengthMap::s_of_t(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t));
  if (!spec_.domain.contains(t, slack)) {
    throw Error(ErrorKind::OutOfDomain, "t = " + format_number(t) + " outside arclength table");
  }
  t = std::clamp(t, t_nodes_.front(), t_nodes_.back());
  auto it = std::upper_bound(t_nodes_.begin(), t_nodes_.end(), t);
  std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - t_nodes_.begin()) - 1));
  if (k + 1 >= t_nodes_.size()) k = t_nodes_.size() - 2;
  if (t == t_nodes_[k]) return s_nodes_[k];
  const ScalarFunction v = [this](double x) { return speed(spec_, x); };
  return s_nodes_[k] + gauss_legendre16(v, t_nodes_[k], t);
}

double ArclengthMap::t_of_s(double s) const {
  const double L = length();
  const double slack = 1e-12 * std::max(1.0, L);
  if (!(s >= -slack && s <= L + slack)) {
    throw Error(ErrorKind::OutOfDomain, "s = " + format_number(s) + " outside [0, " +
                                            format_number(L) + "]");
  }
  s = std::clamp(s, 0.0, L);
  auto it = std::upper_bound(s_nodes_.begin(), s_nodes_.end(), s);
  std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - s_nodes_.begin()) - 1));
  if (k + 1 >= s_nodes_.size()) k = s_nodes_.size() - 2;
  double lo = t_nodes_[k], hi = t_nodes_[k + 1];
  if (s == s_nodes_[k]) return lo;
  if (s == s_nodes_[k + 1]) return hi;

  const double frac = (s - s_nodes_[k]) / (s_nodes_[k + 1] - s_nodes_[k]);
  double t = lo + frac * (hi - lo);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = s_of_t(t) - s;
    if (f > 0.0) hi = t;
    else if (f < 0.0) lo = t;
    else return t;
    double next = t - f / speed(spec_, t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

CurveJet arclength_jet(const ArclengthMap& map, double s) {
  const double t = map.t_of_s(s);
  const CurveJet j = eval_curve(map.curve(), t);
  const CurveJet dj = differentiate(j);
  JetD v;
  try {
    v = sqrt(minkowski_square(dj));
  } catch (const Error&) {
    throw Error(ErrorKind::NonSpacelikeVelocity,
                map.curve().catalog_id + " velocity not spacelike at t = " + format_number(t));
  }
  // s(t0 + d) - s(t0) as a series in d, then its inverse d(sigma).
  const JetD d = revert(integrate(v));
  CurveJet out;
  for (int i = 0; i < 4; ++i) out(i) = compose(j(i), d);
  return out;
}

std::array<Vec4, 4> derivatives_by_arclength(const ArclengthMap& map, double s) {
  const CurveJet j = arclength_jet(map, s);
  return {derivative_vector(j, 1), derivative_vector(j, 2), derivative_vector(j, 3),
          derivative_vector(j, 4)};
}

}  // namespace curvelab
