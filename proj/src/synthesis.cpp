#include "curvelab/synthesis.hpp"

#include <cmath>

#include "curvelab/errors.hpp"

namespace curvelab {

namespace {

class ConstantProfile final : public ProfileModel {
 public:
  ConstantProfile(double k1, double k2, double k3) : k_{k1, k2, k3} {}
  std::array<JetD, 3> kappas(double) const override {
    return {JetD(k_[0]), JetD(k_[1]), JetD(k_[2])};
  }

 private:
  std::array<double, 3> k_;
};

class RectifyingFamily final : public ProfileModel {
 public:
  RectifyingFamily(double A, double B, double c, double k2, double k3, int eps)
      : A_(A), B_(B), c_(c), k2_(k2), k3_(k3), eps_(eps) {}

  std::array<JetD, 3> kappas(double s) const override {
    const JetD x = JetD::variable(s);
    const JetD t = x * k3_;
    const JetD k1 = (double(eps_) * k2_) * (A_ * cosh(t) + B_ * sinh(t)) / (x + c_);
    return {k1, JetD(k2_), JetD(k3_)};
  }

 private:
  double A_, B_, c_, k2_, k3_;
  int eps_;
};

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "profile parameter " + key + " is not finite");
  return v;
}

struct State {
  Vec4 pos;
  Eigen::Matrix4d frame;  // rows: T, N, B1, B2
};

State derivative(const CurvatureProfile& profile, double s, const State& x) {
  const auto k = profile.kappas(s);
  const Eigen::Matrix4d K =
      frenet_matrix(k[0].value(), k[1].value(), k[2].value(), profile.eps);
  return {x.frame.row(0).transpose(), K * x.frame};
}

State axpy(const State& x, double h, const State& d) {
  return {x.pos + h * d.pos, x.frame + h * d.frame};
}

State rk4_step(const CurvatureProfile& profile, double s, const State& x, double h) {
  const State k1 = derivative(profile, s, x);
  const State k2 = derivative(profile, s + 0.5 * h, axpy(x, 0.5 * h, k1));
  const State k3 = derivative(profile, s + 0.5 * h, axpy(x, 0.5 * h, k2));
  const State k4 = derivative(profile, s + h, axpy(x, h, k3));
  return {x.pos + (h / 6.0) * (k1.pos + 2.0 * k2.pos + 2.0 * k3.pos + k4.pos),
          x.frame + (h / 6.0) * (k1.frame + 2.0 * k2.frame + 2.0 * k3.frame + k4.frame)};
}

double drift(const Eigen::Matrix4d& frame, int eps) {
  const Eigen::Matrix4d g = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
  return (frame * g * frame.transpose() - frenet_gram_signature(eps)).cwiseAbs().maxCoeff();
}

void reproject(Eigen::Matrix4d& frame, int eps) {
  const Eigen::Vector4d eta(1.0, 1.0, eps, -eps);
  for (int i = 0; i < 4; ++i) {
    Vec4 v = frame.row(i).transpose();
    for (int j = 0; j < i; ++j) {
      const Vec4 e = frame.row(j).transpose();
      v -= (minkowski_dot(v, e) / eta(j)) * e;
    }
    frame.row(i) = (v / std::sqrt(std::abs(minkowski_square(v)))).transpose();
  }
}

FrenetData to_frenet(const CurvatureProfile& profile, double s, const State& x) {
  const auto k = profile.kappas(s);
  FrenetData f;
  f.s = s;
  f.position = x.pos;
  f.T = x.frame.row(0).transpose();
  f.N = x.frame.row(1).transpose();
  f.B1 = x.frame.row(2).transpose();
  f.B2 = x.frame.row(3).transpose();
  f.kappa1 = k[0].value();
  f.kappa2 = k[1].value();
  f.kappa3 = k[2].value();
  f.eps = profile.eps;
  f.dkappa1 = k[0].derivative(1);
  f.d2kappa1 = k[0].derivative(2);
  f.dkappa2 = k[1].derivative(1);
  return f;
}

class SynthesizedCurve final : public CurveModel {
 public:
  SynthesizedCurve(CurvatureProfile profile, double s0, double h, std::vector<State> nodes)
      : profile_(std::move(profile)), s0_(s0), h_(h), nodes_(std::move(nodes)) {}

  CurveJet evaluate(double s) const override {
    std::size_t k = 0;
    if (h_ > 0.0) {
      const double idx = std::floor((s - s0_) / h_);
      k = static_cast<std::size_t>(std::clamp(idx, 0.0, double(nodes_.size() - 1)));
    }
    const double sk = s0_ + double(k) * h_;
    const State x = (s == sk) ? nodes_[k] : rk4_step(profile_, sk, nodes_[k], s - sk);

    // Taylor coefficients of the frame from F' = K(s) F:
    //   F_{m+1} = 1/(m+1) sum_j K_j F_{m-j}.
    const auto kj = profile_.kappas(s);
    const Eigen::Matrix<JetD, 4, 4> Kjet = frenet_matrix(kj[0], kj[1], kj[2], profile_.eps);
    std::array<Eigen::Matrix4d, JetD::kSize> Kc;
    for (int m = 0; m < JetD::kSize; ++m) {
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) Kc[m](r, c) = Kjet(r, c)[m];
    }
    std::array<Eigen::Matrix4d, kJetOrder> F;
    F[0] = x.frame;
    for (int m = 0; m + 1 < kJetOrder; ++m) {
      Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
      for (int j = 0; j <= m; ++j) acc += Kc[j] * F[m - j];
      F[m + 1] = acc / double(m + 1);
    }
    CurveJet out;
    for (int i = 0; i < 4; ++i) {
      out(i)[0] = x.pos(i);
      for (int m = 0; m < kJetOrder; ++m) out(i)[m + 1] = F[m](0, i) / double(m + 1);
    }
    return out;
  }

 private:
  CurvatureProfile profile_;
  double s0_;
  double h_;
  std::vector<State> nodes_;
};

}  // namespace

CurvatureProfile make_profile(const std::string& id, const std::map<std::string, double>& params_in,
                              int eps, Interval s_range) {
  if (eps != 1 && eps != -1) throw Error(ErrorKind::InvalidArgument, "eps must be +1 or -1");
  if (!(s_range.lo <= s_range.hi)) throw Error(ErrorKind::InvalidArgument, "profile range must satisfy lo <= hi");
  std::map<std::string, double> rest = params_in;
  CurvatureProfile p;
  p.id = id;
  p.eps = eps;
  p.s_range = s_range;
  if (id == "constant") {
    const double k1 = take(rest, "k1", 1.0);
    const double k2 = take(rest, "k2", 1.0);
    const double k3 = take(rest, "k3", 1.0);
    p.params = {{"k1", k1}, {"k2", k2}, {"k3", k3}};
    p.model = std::make_shared<ConstantProfile>(k1, k2, k3);
  } else if (id == "rectifying_family") {
    const double A = take(rest, "A", 1.0);
    const double B = take(rest, "B", 0.0);
    const double c = take(rest, "c", 0.0);
    const double k2 = take(rest, "k2", 1.0);
    const double k3 = take(rest, "k3", 1.0);
    p.params = {{"A", A}, {"B", B}, {"c", c}, {"k2", k2}, {"k3", k3}};
    p.model = std::make_shared<RectifyingFamily>(A, B, c, k2, k3, eps);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown curvature profile '" + id + "'");
  }
  if (!rest.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                "profile " + id + " has no parameter named '" + rest.begin()->first + "'");
  }
  p.descriptor.name = id;
  for (const auto& [k, v] : p.params) p.descriptor.set_number(k, v);

  constexpr int kChecks = 1000;
  for (int i = 0; i <= kChecks; ++i) {
    const double s = s_range.lo + s_range.length() * double(i) / kChecks;
    std::array<JetD, 3> k;
    try {
      k = p.kappas(s);
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidArgument, "profile " + id + " is singular at s = " + format_number(s));
    }
    for (int j = 0; j < 3; ++j) {
      if (!(k[j].value() > 0.0) || !std::isfinite(k[j].value())) {
        throw Error(ErrorKind::InvalidArgument, "profile " + id + " curvature " + std::to_string(j + 1) +
                                                    " is not positive at s = " + format_number(s));
      }
    }
    if (s_range.length() == 0.0) break;
  }
  return p;
}

FrenetData standard_initial_frame(int eps, double s0) {
  if (eps != 1 && eps != -1) throw Error(ErrorKind::InvalidArgument, "eps must be +1 or -1");
  FrenetData f;
  f.s = s0;
  f.T = Vec4::UnitY();
  f.N = Vec4::UnitZ();
  f.B1 = eps == 1 ? Vec4::UnitW() : Vec4::UnitX();
  f.B2 = eps == 1 ? Vec4::UnitX() : Vec4::UnitW();
  f.eps = eps;
  return f;
}

SynthesisResult synthesize_curve(const CurvatureProfile& profile, const FrenetData& init_frame,
                                 const Vec4& init_pos, double ds, const SynthesisOptions& options) {
  if (!(ds > 0.0) || !std::isfinite(ds)) throw Error(ErrorKind::InvalidArgument, "step ds must be > 0");
  require_finite(init_pos, "initial position");
  if (init_frame.eps != profile.eps) {
    throw Error(ErrorKind::InvalidArgument, "initial frame eps differs from the profile's");
  }
  if (gram_defect(init_frame) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "initial frame violates the Gram conditions");
  }

  const double s0 = profile.s_range.lo;
  const double L = profile.s_range.length();
  const int steps = L > 0.0 ? static_cast<int>(std::ceil(L / ds - 1e-9)) : 0;
  const double h = steps > 0 ? L / steps : 0.0;

  State x{init_pos, Eigen::Matrix4d::Zero()};
  for (int i = 0; i < 4; ++i) x.frame.row(i) = init_frame.frame(i).transpose();

  std::vector<State> nodes{x};
  nodes.reserve(static_cast<std::size_t>(steps) + 1);
  SynthesisResult result;
  result.max_drift = drift(x.frame, profile.eps);
  result.s_end = s0;
  for (int i = 0; i < steps; ++i) {
    const double s = s0 + i * h;
    State next = rk4_step(profile, s, x, h);
    if (options.reproject) reproject(next.frame, profile.eps);
    const double d = drift(next.frame, profile.eps);
    if (!(d <= options.synth_tol)) {
      result.drift_exceeded = true;
      result.max_drift = std::max(result.max_drift, std::isfinite(d) ? d : HUGE_VAL);
      if (options.throw_on_drift) {
        throw Error(ErrorKind::FrameDriftExceeded, "Gram drift " + format_number(d) + " exceeds " +
                                                       format_number(options.synth_tol) +
                                                       " at s = " + format_number(s + h));
      }
      break;
    }
    result.max_drift = std::max(result.max_drift, d);
    x = next;
    nodes.push_back(x);
    result.s_end = s0 + (i + 1) * h;
  }
  if (steps > 0 && !result.drift_exceeded) result.s_end = profile.s_range.hi;

  result.final_frame = to_frenet(profile, result.s_end, x);
  if (steps == 0) {
    result.final_frame = init_frame;
    result.final_frame.position = init_pos;
  }

  CurveSpec& spec = result.curve;
  spec.catalog_id = "synthesized";
  spec.params = {{"eps", double(profile.eps)}, {"ds", ds}};
  spec.domain = {s0, result.s_end};
  spec.parameterization = Parameterization::Arclength;
  spec.model = std::make_shared<SynthesizedCurve>(profile, s0, h, std::move(nodes));
  spec.descriptor.name = "synthesized";
  spec.descriptor.set_child("profile", profile.descriptor);
  spec.descriptor.set_number("eps", profile.eps);
  spec.descriptor.set_number("s0", profile.s_range.lo);
  spec.descriptor.set_number("s1", profile.s_range.hi);
  spec.descriptor.set_number("ds", ds);
  if (options.reproject) spec.descriptor.set_number("reproject", 1);
  const FrenetData standard = standard_initial_frame(profile.eps, s0);
  bool custom = !init_pos.isZero(0.0);
  for (int i = 0; i < 4; ++i) custom = custom || init_frame.frame(i) != standard.frame(i);
  if (custom) spec.descriptor.set_number("custom_initial_data", 1);
  return result;
}

}  // namespace curvelab
