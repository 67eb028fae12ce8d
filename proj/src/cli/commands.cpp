#include "curvelab/cli/commands.hpp"

#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "curvelab/catalog.hpp"
#include "curvelab/cli/csv.hpp"
#include "curvelab/cli/report_json.hpp"
#include "curvelab/cli/suites.hpp"
#include "curvelab/frenet.hpp"
#include "curvelab/rectifying.hpp"
#include "curvelab/synthesis.hpp"

namespace curvelab::cli {

namespace {

constexpr double kOdeStep = 1e-4;

// Runs body with either the configured output file or `out`.
int with_output(const RunConfig& cfg, std::ostream& out, const std::function<int(std::ostream&)>& body) {
  if (cfg.output.empty()) return body(out);
  std::ofstream file(cfg.output);
  if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + cfg.output);
  const int code = body(file);
  file.flush();
  if (!file) throw Error(ErrorKind::InvalidArgument, "write to " + cfg.output + " failed");
  return code;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

std::optional<double> effective_tolerance(const RunConfig& cfg) {
  if (cfg.tolerance) {
    if (!(*cfg.tolerance > 0.0)) throw UsageError("tolerance must be > 0");
    return cfg.tolerance;
  }
  return env_tolerance();
}

void require_range_samples(const RunConfig& cfg) {
  if (cfg.samples < 2) throw UsageError("sample count must be >= 2, got " + std::to_string(cfg.samples));
}

std::vector<double> parameter_samples(const Interval& d, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? d.lo : d.lo + d.length() * double(i) / double(n - 1));
  if (n > 1) out.back() = d.hi;
  return out;
}

void write_positions(std::ostream& os, const CurveSpec& spec, const std::vector<double>& ts, const char* param) {
  write_csv_header(os, {param, "x0", "x1", "x2", "x3"});
  for (double t : ts) {
    const Vec4 p = position(eval_curve(spec, t));
    write_csv_row(os, {t, p(0), p(1), p(2), p(3)});
  }
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return kExitUsage;
    case ErrorKind::FrameDriftExceeded: return kExitFail;
    default: return kExitError;
  }
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.t_values.empty()) throw UsageError("classify needs at least one --t");
    const CurveSpec spec = config_curve(cfg);
    return with_output(cfg, out, [&](std::ostream& os) {
      for (double t : cfg.t_values) {
        const Vec4 v = derivative_vector(eval_curve(spec, t), 1);
        os << "t=" << format_number(t) << ": " << to_string(causal_character(v)) << '\n';
      }
      return kExitPass;
    });
  });
}

int cmd_frenet(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_range_samples(cfg);
    const ArclengthMap map(config_curve(cfg));
    const double h = std::min(kOdeStep, 0.25 * map.length());
    return with_output(cfg, out, [&](std::ostream& os) {
      write_csv_header(os, {"s",   "x0",  "x1",  "x2",  "x3",  "T0",     "T1",     "T2",     "T3",
                            "N0",  "N1",  "N2",  "N3",  "B10", "B11",    "B12",    "B13",    "B20",
                            "B21", "B22", "B23", "kappa1", "kappa2", "kappa3", "eps", "ode_residual_max"});
      int degenerate = 0;
      for (double s : uniform_samples(map, cfg.samples)) {
        FrenetData f;
        try {
          f = frenet_apparatus(map, s);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DegenerateFrame) throw;
          ++degenerate;
          continue;
        }
        double residual = std::numeric_limits<double>::quiet_NaN();
        try {
          const auto r = frenet_ode_residual(map, s, h);
          residual = *std::max_element(r.begin(), r.end());
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DegenerateFrame) throw;
        }
        std::vector<double> row{s};
        for (const Vec4* v : {&f.position, &f.T, &f.N, &f.B1, &f.B2}) {
          for (int i = 0; i < 4; ++i) row.push_back((*v)(i));
        }
        row.insert(row.end(), {f.kappa1, f.kappa2, f.kappa3, double(f.eps), residual});
        write_csv_row(os, row);
      }
      os << "# degenerate_samples=" << degenerate << '\n';
      return kExitPass;
    });
  });
}

int cmd_rectify_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_range_samples(cfg);
    const auto tol = effective_tolerance(cfg);
    const RectifyingTolerances tolerances = tol ? RectifyingTolerances::uniform(*tol) : RectifyingTolerances{};
    const ArclengthMap map(config_curve(cfg));
    const RectifyingReport report = rectifying_report(map, uniform_samples(map, cfg.samples), tolerances);
    return with_output(cfg, out, [&](std::ostream& os) {
      os << report_to_json(report).dump(2) << '\n';
      return report.verdict ? kExitPass : kExitFail;
    });
  });
}

int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_range_samples(cfg);
    const std::string sphere_text = cfg.sphere.empty() ? cfg.curve : cfg.sphere;
    if (sphere_text.empty()) throw UsageError("construct needs --sphere");
    if (!(cfg.a != 0.0)) throw UsageError("a must be nonzero");
    CurveSpec sphere = resolve_curve(sphere_text);
    if (cfg.domain) sphere = with_domain(sphere, *cfg.domain);
    const CurveSpec spec = construct_rectifying(sphere, {cfg.a, cfg.t0, parse_radial_profile(cfg.profile)});
    const std::string id = spec.descriptor.str();
    const auto ts = cfg.t_values.empty() ? parameter_samples(spec.domain, cfg.samples) : cfg.t_values;
    const int code = with_output(cfg, out, [&](std::ostream& os) {
      os << "# id=" << id << '\n';
      write_positions(os, spec, ts, "t");
      return kExitPass;
    });
    if (!cfg.output.empty()) out << id << '\n';
    return code;
  });
}

int cmd_synthesize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_range_samples(cfg);
    if (!(cfg.ds > 0.0)) throw UsageError("ds must be > 0");
    if (!(cfg.synth_tol > 0.0)) throw UsageError("synth-tol must be > 0");
    if (cfg.curvature_profile.empty()) throw UsageError("synthesize needs --profile");
    const Descriptor pd = parse_descriptor(cfg.curvature_profile);
    if (!pd.children.empty()) throw UsageError("profile takes numeric arguments only");
    const CurvatureProfile profile = make_profile(
        pd.name, std::map<std::string, double>(pd.numbers.begin(), pd.numbers.end()), cfg.eps, {cfg.s0, cfg.s1});
    SynthesisOptions opt;
    opt.synth_tol = cfg.synth_tol;
    opt.reproject = cfg.reproject;
    opt.throw_on_drift = false;
    const SynthesisResult result =
        synthesize_curve(profile, standard_initial_frame(cfg.eps, cfg.s0), Vec4::Zero(), cfg.ds, opt);

    CurveSpec spec = result.curve;
    if (cfg.translate_by_x && !result.drift_exceeded) {
      const ArclengthMap map(spec);
      const RectifyingSamples rs = collect_samples(map, uniform_samples(map, std::max(cfg.samples, 8)));
      const CharacterizationFit fit = fit_characterization(rs);
      spec = translated(spec, -constant_vector_X(rs.frames.front(), rs.t.front(), fit));
    }
    const std::string id = spec.descriptor.str();
    const int code = with_output(cfg, out, [&](std::ostream& os) {
      os << "# id=" << id << '\n';
      os << "# max_drift=" << format_number(result.max_drift) << '\n';
      if (result.drift_exceeded) os << "# drift_exceeded_at=" << format_number(result.s_end) << '\n';
      write_positions(os, spec, parameter_samples(spec.domain, spec.domain.length() > 0 ? cfg.samples : 1), "s");
      return result.drift_exceeded ? kExitFail : kExitPass;
    });
    if (!cfg.output.empty()) out << id << '\n';
    out << "max_drift=" << format_number(result.max_drift) << '\n';
    if (result.drift_exceeded) {
      err << "error: FrameDriftExceeded: Gram drift passed " << format_number(cfg.synth_tol) << " at s = "
          << format_number(result.s_end) << "; output is partial\n";
    }
    return code;
  });
}

int cmd_verify(const std::string& suite, bool inject_sign_flip, std::ostream& out, std::ostream& err) {
  const auto s = parse_suite(suite);
  if (!s) {
    err << "usage error: unknown suite '" << suite << "' (all|lorentz|frenet|rectifying)\n";
    return kExitUsage;
  }
  const bool before = test_hooks::frenet_sign_flip();
  if (inject_sign_flip) test_hooks::set_frenet_sign_flip(true);
  bool all = true;
  try {
    for (int id : suite_criteria(*s)) {
      const CriterionResult r = run_criterion(id);
      out << format_result(r) << '\n';
      all = all && r.pass;
    }
  } catch (...) {
    test_hooks::set_frenet_sign_flip(before);
    throw;
  }
  test_hooks::set_frenet_sign_flip(before);
  out << (all ? "all criteria passed" : "some criteria failed") << '\n';
  return all ? kExitPass : kExitFail;
}

namespace {

// Flags are applied after the config file so they take precedence.
class Binder {
 public:
  template <typename T, typename Set>
  CLI::Option* option(CLI::App* app, const std::string& name, Set set, const std::string& desc) {
    auto value = std::make_shared<T>();
    CLI::Option* o = app->add_option(name, *value, desc);
    items_.push_back({o, [value, set](RunConfig& c) { set(c, *value); }});
    return o;
  }

  template <typename Set>
  void flag(CLI::App* app, const std::string& name, Set set, const std::string& desc) {
    auto value = std::make_shared<bool>(false);
    CLI::Option* o = app->add_flag(name, *value, desc);
    items_.push_back({o, [value, set](RunConfig& c) { set(c, *value); }});
  }

  void apply(RunConfig& c) const {
    for (const auto& [o, f] : items_) {
      if (o->count() > 0) f(c);
    }
  }

 private:
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> items_;
};

void common_options(Binder& b, CLI::App* app, bool with_curve) {
  if (with_curve) {
    b.option<std::string>(app, "--curve", [](RunConfig& c, const std::string& v) { c.curve = v; },
                          "Curve descriptor, e.g. 'lorentz_helix(B=2)'");
  }
  b.option<std::vector<double>>(
       app, "--domain",
       [](RunConfig& c, const std::vector<double>& v) { c.domain = Interval{v[0], v[1]}; },
       "Parameter domain override: LO HI")
      ->expected(2);
  b.option<int>(app, "--samples", [](RunConfig& c, int v) { c.samples = v; }, "Number of samples");
  b.option<std::string>(app, "-o,--output", [](RunConfig& c, const std::string& v) { c.output = v; },
                        "Output file (default stdout)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frenet apparatus and rectifying-curve checks for spacelike curves in Minkowski 4-space",
               "curvelab"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration; flags override its values");

  Binder classify_b, frenet_b, rectify_b, construct_b, synth_b;

  CLI::App* classify = app.add_subcommand("classify", "Causal character of the velocity at given t");
  common_options(classify_b, classify, true);
  classify_b.option<std::vector<double>>(
      classify, "--t", [](RunConfig& c, const std::vector<double>& v) { c.t_values = v; }, "Parameter values");

  CLI::App* frenet = app.add_subcommand("frenet", "Frenet frame and curvatures as CSV");
  common_options(frenet_b, frenet, true);

  CLI::App* rectify = app.add_subcommand("rectify-check", "Rectifying-curve report as JSON");
  common_options(rectify_b, rectify, true);
  rectify_b.option<double>(rectify, "--tol", [](RunConfig& c, double v) { c.tolerance = v; },
                           "Residual tolerance for every check");

  CLI::App* construct = app.add_subcommand("construct", "Rectifying curve from a curve on the hyperbolic sphere");
  common_options(construct_b, construct, false);
  construct_b.option<std::string>(construct, "--sphere", [](RunConfig& c, const std::string& v) { c.sphere = v; },
                                  "Descriptor of a curve on g(y,y) = -1");
  construct_b.option<double>(construct, "--a", [](RunConfig& c, double v) { c.a = v; }, "Scale (nonzero)");
  construct_b.option<double>(construct, "--t0", [](RunConfig& c, double v) { c.t0 = v; }, "Phase");
  construct_b.option<std::string>(construct, "--profile", [](RunConfig& c, const std::string& v) { c.profile = v; },
                                  "Radial profile: sech (default) or sine");
  construct_b.option<std::vector<double>>(
      construct, "--t", [](RunConfig& c, const std::vector<double>& v) { c.t_values = v; },
      "Sample at these parameter values instead of a uniform grid");

  CLI::App* synth = app.add_subcommand("synthesize", "Integrate the Frenet system from curvature functions");
  common_options(synth_b, synth, false);
  synth_b.option<std::string>(synth, "--profile", [](RunConfig& c, const std::string& v) { c.curvature_profile = v; },
                              "Curvature profile, e.g. 'rectifying_family(A=1,B=0,c=0)'");
  synth_b.option<int>(synth, "--eps", [](RunConfig& c, int v) { c.eps = v; }, "Sign of g(B1,B1)");
  synth_b.option<double>(synth, "--s0", [](RunConfig& c, double v) { c.s0 = v; }, "Start arclength");
  synth_b.option<double>(synth, "--s1", [](RunConfig& c, double v) { c.s1 = v; }, "End arclength");
  synth_b.option<double>(synth, "--ds", [](RunConfig& c, double v) { c.ds = v; }, "Maximum RK4 step");
  synth_b.option<double>(synth, "--synth-tol", [](RunConfig& c, double v) { c.synth_tol = v; },
                         "Gram drift limit");
  synth_b.flag(synth, "--reproject", [](RunConfig& c, bool v) { c.reproject = v; },
               "Re-orthonormalise the frame after every step");
  synth_b.flag(synth, "--translate-by-x", [](RunConfig& c, bool v) { c.translate_by_x = v; },
               "Translate the result by the fitted constant vector");

  CLI::App* verify = app.add_subcommand("verify", "Run acceptance suites");
  std::string suite = "all";
  bool inject = false;
  verify->add_option("suite", suite, "all, lorentz, frenet or rectifying");
  verify->add_flag("--inject-sign-flip", inject)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const auto build = [&](const Binder& b) {
    RunConfig cfg;
    if (!config_path.empty()) apply_json_file(cfg, config_path);
    b.apply(cfg);
    return cfg;
  };
  const std::pair<CLI::App*, std::function<int()>> routes[] = {
      {classify, [&] { return cmd_classify(build(classify_b), out, err); }},
      {frenet, [&] { return cmd_frenet(build(frenet_b), out, err); }},
      {rectify, [&] { return cmd_rectify_check(build(rectify_b), out, err); }},
      {construct, [&] { return cmd_construct(build(construct_b), out, err); }},
      {synth, [&] { return cmd_synthesize(build(synth_b), out, err); }},
      {verify, [&] { return cmd_verify(suite, inject, out, err); }},
  };
  try {
    for (const auto& [sub, run] : routes) {
      if (sub->parsed()) return run();
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace curvelab::cli
