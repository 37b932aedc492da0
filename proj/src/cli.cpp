#include "wavestrata/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <algorithm>
#include <boost/version.hpp>
#include <cmath>
#include <exception>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include "wavestrata/curves.hpp"
#include "wavestrata/dispersion.hpp"
#include "wavestrata/emit.hpp"
#include "wavestrata/normalform.hpp"
#include "wavestrata/odes.hpp"
#include "wavestrata/operator.hpp"

namespace wavestrata {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::vector<std::string> command;
  double rho = 0.0, h = 1.0;
  std::optional<double> beta, alpha, k, delta, kappa, epsilon;
  std::optional<double> k_min, k_max, x_min, x_max;
  std::optional<int> n;
  int grid_n = 64;
  int jobs = 1;
  std::string output;
  std::string format = "csv";
  // subcommand specific
  std::string curve = "c2";
  double P = -2.0, q = 1.0, c = 0.0, L = 30.0;
  std::optional<double> u0, u2;
  bool negate = false;
  std::string branch = "plus";
  std::string profile_case;
  std::string kind = "bright";
  std::optional<double> c1, c3;
  double scale = 1.0;
};

struct Result {
  std::optional<Dataset> data;
  std::optional<json> doc;
  json params = json::object();
  json tolerances = json::object();
  json residual_summary = json::object();
  int grid_n = 0;
};

double need(const std::optional<double>& v, const char* name) {
  if (!v) throw Error(ErrorCode::InvalidArgument, std::string("--") + name + " is required");
  return *v;
}

PhysicalParams params_of(const RunConfig& cfg, Result& r) {
  const PhysicalParams p = validate_params(cfg.rho, cfg.h);
  r.params["rho"] = p.rho;
  r.params["h"] = p.h;
  return p;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "--n must be positive");
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  if (n > 1) x[n - 1] = b;
  return x;
}

// Runs f(i) for i in [0, n) on `jobs` threads with a fixed stride; the first
// exception by index is rethrown.
template <class F>
void parallel_for(int n, int jobs, F f) {
  std::vector<std::exception_ptr> errs(n);
  auto work = [&](int start, int stride) {
    for (int i = start; i < n; i += stride) {
      try {
        f(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  jobs = std::clamp(jobs, 1, std::max(1, n));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------

Result cmd_curves(const RunConfig& cfg) {
  Result r;
  const PhysicalParams p = params_of(cfg, r);
  const CurveId id = parse_curve(cfg.curve);
  double lo = 0.1, hi = 5.0;
  if (id == CurveId::C1) hi = 0.9 * std::min(std::numbers::pi, std::numbers::pi / p.h);
  if (id == CurveId::C3) lo = beta0(p) + 0.01, hi = beta0(p) + 1.0;
  lo = cfg.k_min.value_or(lo);
  hi = cfg.k_max.value_or(hi);
  const int n = cfg.n.value_or(100);
  const auto pts = sample_curve(id, lo, hi, n, p, cfg.jobs);

  Dataset ds{{id == CurveId::C3 ? "beta_param" : "k0", "beta", "alpha", "res_f", "res_fp"}, {}};
  double worst = 0.0;
  for (const auto& cp : pts) {
    ds.rows.push_back({cp.k0, cp.point.beta, cp.point.alpha, cp.res_f, cp.res_fp});
    worst = std::max({worst, cp.res_f, cp.res_fp});
  }
  r.data = std::move(ds);
  r.params["curve"] = curve_name(id);
  r.params["k_min"] = lo;
  r.params["k_max"] = hi;
  r.params["n"] = n;
  r.tolerances["double_root_residual"] = 1e-9;
  r.residual_summary["max_double_root_residual"] = worst;
  r.grid_n = n;
  return r;
}

DispersionContext context_of(const RunConfig& cfg, Result& r) {
  const PhysicalParams p = params_of(cfg, r);
  const BifurcationPoint pt{need(cfg.beta, "beta"), need(cfg.alpha, "alpha")};
  r.params["beta"] = pt.beta;
  r.params["alpha"] = pt.alpha;
  return {p, pt};
}

json root_json(const LocatedRoot& lr) {
  return {{"re", lr.location.real()},
          {"im", lr.location.imag()},
          {"multiplicity", lr.multiplicity},
          {"axis", axis_name(lr.axis)},
          {"flagged", lr.flagged}};
}

Result cmd_classify(const RunConfig& cfg) {
  Result r;
  const DispersionContext ctx = context_of(cfg, r);
  const SpectralSignature sig = spectral_signature(ctx);
  json roots = json::array();
  for (const auto& lr : sig.roots) roots.push_back(root_json(lr));
  r.doc = json{{"label", label_name(sig.label)},
               {"strip_halfwidth", sig.strip_halfwidth},
               {"im_halfheight", sig.im_halfheight},
               {"contour_count", sig.contour_count},
               {"roots", roots}};
  r.tolerances["contour_count"] = 1e-10;
  r.residual_summary["multiplicity_total"] = full_multiplicity(sig.roots);
  r.residual_summary["contour_count"] = sig.contour_count;
  return r;
}

// All roots represented by the nonnegative list, with multiplicity.
std::vector<cplx> expand_roots(const std::vector<LocatedRoot>& roots) {
  std::vector<cplx> all;
  for (const auto& lr : roots) {
    const cplx z = lr.location;
    std::vector<cplx> images;
    if (std::abs(z) == 0.0)
      images = {cplx(0.0, 0.0)};
    else if (lr.axis == Axis::OffAxis)
      images = {z, -z, std::conj(z), -std::conj(z)};
    else
      images = {z, -z};
    for (const cplx& w : images)
      for (int m = 0; m < lr.multiplicity; ++m) all.push_back(w);
  }
  std::sort(all.begin(), all.end(), [](cplx a, cplx b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return all;
}

Result cmd_spectrum(const RunConfig& cfg) {
  Result r;
  const DispersionContext ctx = context_of(cfg, r);
  const SpectralSignature sig = spectral_signature(ctx);
  const auto roots = expand_roots(sig.roots);
  const auto eig = discretized_spectrum(ctx.point, ctx.params, cfg.grid_n);

  Dataset ds{{"index", "root_re", "root_im", "eig_re", "eig_im", "abs_err"}, {}};
  double worst = 0.0;
  const int m = std::min<int>(4, static_cast<int>(roots.size()));
  for (int i = 0; i < m; ++i) {
    cplx best(std::nan(""), std::nan(""));
    double err = std::numeric_limits<double>::infinity();
    for (const cplx& e : eig)
      if (std::abs(e - roots[i]) < err) err = std::abs(e - roots[i]), best = e;
    ds.rows.push_back({std::int64_t{i}, roots[i].real(), roots[i].imag(), best.real(), best.imag(), err});
    worst = std::max(worst, err);
  }
  r.data = std::move(ds);
  r.tolerances["root_match"] = 1e-6;
  r.residual_summary["max_abs_err"] = worst;
  r.residual_summary["label"] = label_name(sig.label);
  r.grid_n = cfg.grid_n;
  return r;
}

Result cmd_coeffs_hopf(const RunConfig& cfg) {
  Result r;
  const PhysicalParams p = params_of(cfg, r);
  const double k = need(cfg.k, "k");
  if (!(k > 0.0)) throw Error(ErrorCode::OutOfDomain, "k must be positive");
  r.params["k"] = k;
  const HopfCoeffs hc = hopf_coeffs(k, p);
  // without --delta, report the sign of delta for which solutions exist
  HopfClass cls;
  if (cfg.delta) {
    r.params["delta"] = *cfg.delta;
    cls = classify_hopf(*cfg.delta, hc.c3);
  } else {
    cls = classify_hopf(hc.c3 > 0.0 ? 1.0 : -1.0, hc.c3);
  }
  r.doc = json{{"k", k},
               {"c1", hc.c1},
               {"c3", hc.c3},
               {"gamma1", hc.gamma1},
               {"two_gamma1_sq_c3", hc.q2},
               {"two_gamma1_c3", hc.q1},
               {"classification", hopf_class_name(cls)}};
  r.tolerances["singular_bracket"] = 1e-10;
  return r;
}

Result cmd_coeffs_laurent(const RunConfig& cfg) {
  Result r;
  const PhysicalParams p = params_of(cfg, r);
  const LaurentCoeffs lc = laurent_coeffs(p);
  json doc{{"a1", lc.a1}};
  doc["a3"] = lc.a3 ? json(*lc.a3) : json(nullptr);
  r.doc = doc;
  r.tolerances["critical_ratio"] = 1e-12;
  return r;
}

Result cmd_coeffs_r11(const RunConfig& cfg) {
  Result r;
  const R11Coeffs c = r11_coeffs(params_of(cfg, r));
  r.doc = json{{"c1_00", c.c1_00},   {"c2_00", c.c2_00}, {"c2_10", c.c2_10},
               {"c1_01", c.c1_01},   {"c1_10", c.c1_10}, {"c1_20", c.c1_20},
               {"e1_00_main", c.e1_00_main}, {"cubic_c", c.cubic_c}};
  r.residual_summary["truncation"] = "e1_00 omits the (rho - 1/h^2) D correction";
  return r;
}

Result cmd_coeffs_o2(const RunConfig& cfg) {
  Result r;
  const PhysicalParams p = params_of(cfg, r);
  const double beta = need(cfg.beta, "beta");
  r.params["beta"] = beta;
  const O2Coeffs c = o2_coeffs(p, beta);
  r.doc = json{{"c02_0", c.c02_0}, {"c20_1", c.c20_1}, {"c30_0", c.c30_0}, {"c40_0", c.c40_0}};
  return r;
}

Result cmd_c3_scan(const RunConfig& cfg) {
  Result r;
  const PhysicalParams p = params_of(cfg, r);
  const double lo = cfg.k_min.value_or(0.1), hi = cfg.k_max.value_or(10.0);
  const int n = cfg.n.value_or(400);
  if (!(lo > 0.0) || !(hi > lo)) throw Error(ErrorCode::OutOfDomain, "need 0 < k_min < k_max");
  const auto ks = linspace(lo, hi, n);
  std::vector<HopfCoeffs> out(n);
  parallel_for(n, cfg.jobs, [&](int i) { out[i] = hopf_coeffs(ks[i], p); });

  Dataset ds{{"k", "c1", "c3", "gamma1", "two_gamma1_sq_c3", "two_gamma1_c3"}, {}};
  int changes = 0;
  for (int i = 0; i < n; ++i) {
    const HopfCoeffs& h = out[i];
    ds.rows.push_back({h.k, h.c1, h.c3, h.gamma1, h.q2, h.q1});
    if (i > 0 && (out[i - 1].c3 > 0.0) != (h.c3 > 0.0)) ++changes;
  }
  r.data = std::move(ds);
  r.params["k_min"] = lo;
  r.params["k_max"] = hi;
  r.params["n"] = n;
  r.tolerances["singular_bracket"] = 1e-10;
  r.residual_summary["c3_sign_changes"] = changes;
  r.grid_n = n;
  return r;
}

void orbit_summary(const HomoclinicOrbit& o, Result& r) {
  r.params["L"] = o.L;
  r.tolerances["newton"] = 1e-10;
  r.tolerances["decay"] = 1e-6;
  r.residual_summary["max_residual"] = o.max_residual;
  r.residual_summary["energy_deviation"] = o.energy_deviation;
  r.residual_summary["end_decay"] = o.end_decay;
  r.residual_summary["newton_residual"] = o.newton_residual;
  r.residual_summary["symmetry"] = symmetry_tag_name(o.symmetry_tag);
  r.residual_summary["sign"] = sign_tag_name(o.sign_tag);
  r.grid_n = static_cast<int>(o.x.size());
}

HomoclinicOptions orbit_options(const RunConfig& cfg) {
  HomoclinicOptions opts;
  opts.L = cfg.L;
  if (cfg.u0 || cfg.u2) opts.guess = std::make_pair(need(cfg.u0, "u0"), need(cfg.u2, "u2"));
  return opts;
}

Result cmd_solve_quartic(const RunConfig& cfg) {
  Result r;
  r.params["P"] = cfg.P;
  r.params["q"] = cfg.q;
  r.params["c"] = cfg.c;
  HomoclinicOptions opts = orbit_options(cfg);
  if (cfg.negate) {
    auto g = opts.guess ? *opts.guess : default_homoclinic_guess(cfg.P, cfg.q, cfg.c);
    opts.guess = std::make_pair(-g.first, -g.second);
    r.params["negate"] = true;
  }
  const HomoclinicOrbit o = solve_homoclinic(cfg.P, cfg.q, cfg.c, opts);
  Dataset ds{{"X", "u", "du", "d2u", "d3u"}, {}};
  for (std::size_t i = 0; i < o.x.size(); ++i)
    ds.rows.push_back({o.x[i], o.y[i](0), o.y[i](1), o.y[i](2), o.y[i](3)});
  r.data = std::move(ds);
  orbit_summary(o, r);
  if (cfg.q == 0.0 && cfg.c == 1.0 && o.sign_tag != SignTag::SignChanging)
    r.residual_summary["transversality_l"] = transversality_l(o);
  return r;
}

// P1 = scale * u; the rest of (Q1, P1, Q2, P2) follows from the ODE.
Result r11_result(const HomoclinicOrbit& o, const ReducedSystem& sys, double scale, Result r) {
  const double d = 1.0 + sys.delta;
  Dataset ds{{"X", "Q1", "P1", "Q2", "P2"}, {}};
  double e = 0.0;
  for (std::size_t i = 0; i < o.x.size(); ++i) {
    const Eigen::Vector4d w = scale * o.y[i];
    Eigen::VectorXd s(4);
    s << w(3) - 4.0 * d * w(1) / 3.0, w(0), w(1), w(2) - 2.0 * d * w(0) / 3.0;
    e = std::max(e, std::abs(reduced_energy(sys, s)));
    ds.rows.push_back({o.x[i], s(0), s(1), s(2), s(3)});
  }
  r.data = std::move(ds);
  orbit_summary(o, r);
  r.residual_summary["reduced_energy_deviation"] = e;
  return r;
}

Result cmd_solve_r11(const RunConfig& cfg) {
  Result r;
  const PhysicalParams p = params_of(cfg, r);
  const double delta = cfg.delta.value_or(0.0);
  r.params["delta"] = delta;
  const double kap = p.rho - 1.0 / (p.h * p.h);
  if (std::abs(kap) < 1e-12) throw Error(ErrorCode::CriticalRatioDegenerate, "rho = 1/h^2, use solve r11-critical");
  const ReducedSystem sys = make_r11(p, delta);
  const HomoclinicOrbit o = solve_homoclinic(-2.0 * (1.0 + delta), 1.0, 0.0, orbit_options(cfg));
  const double g3 = gamma3(p);
  return r11_result(o, sys, 2.0 * g3 * std::sqrt(g3) / (3.0 * kap), r);
}

Result cmd_solve_r11_critical(const RunConfig& cfg) {
  Result r;
  const PhysicalParams p = params_of(cfg, r);
  const double delta = cfg.delta.value_or(0.0), kappa = cfg.kappa.value_or(0.0);
  r.params["delta"] = delta;
  r.params["kappa"] = kappa;
  const ReducedSystem sys = make_r11_cubic(p, delta, kappa);
  const double g3 = gamma3(p);
  const double ep = sys.cubic * g3 * g3 / 4.0;
  HomoclinicOptions opts = orbit_options(cfg);
  if (cfg.negate) {
    auto g = opts.guess ? *opts.guess : default_homoclinic_guess(-2.0 * (1.0 + delta), 0.0, 1.0);
    opts.guess = std::make_pair(-g.first, -g.second);
    r.params["negate"] = true;
  }
  const HomoclinicOrbit o = solve_homoclinic(-2.0 * (1.0 + delta), kappa * r11_coeffs(p).cubic_c, 1.0, opts);
  return r11_result(o, sys, g3 / (2.0 * std::sqrt(ep)), r);
}

Result cmd_explicit(const RunConfig& cfg, bool critical) {
  Result r;
  const PhysicalParams p = params_of(cfg, r);
  const double beta = need(cfg.beta, "beta");
  const double kappa = critical ? cfg.kappa.value_or(0.0) : 0.0;
  r.params["beta"] = beta;
  ExplicitKind kind = ExplicitKind::Plain;
  if (critical) {
    r.params["kappa"] = kappa;
    r.params["branch"] = cfg.branch;
    if (cfg.branch == "plus")
      kind = ExplicitKind::CriticalPlus;
    else if (cfg.branch == "minus")
      kind = ExplicitKind::CriticalMinus;
    else
      throw Error(ErrorCode::InvalidArgument, "--branch must be plus or minus");
  }
  const ReducedSystem sys = critical ? make_o2_critical(p, beta, kappa) : make_o2(p, beta);
  const auto xs = linspace(cfg.x_min.value_or(-15.0), cfg.x_max.value_or(15.0), cfg.n.value_or(301));
  Dataset ds{{"X", "Q", "P", "residual"}, {}};
  double worst = 0.0;
  for (double X : xs) {
    const Eigen::Vector2d y = explicit_o2(kind, X, p, beta, kappa);
    const Eigen::Vector2d dy = explicit_o2_derivative(kind, X, p, beta, kappa);
    const double res = (dy - reduced_rhs(sys, y)).cwiseAbs().maxCoeff();
    worst = std::max(worst, res);
    ds.rows.push_back({X, y(0), y(1), res});
  }
  r.data = std::move(ds);
  r.tolerances["residual"] = 1e-12;
  r.residual_summary["max_residual"] = worst;
  r.grid_n = static_cast<int>(xs.size());
  return r;
}

Result cmd_profile(const RunConfig& cfg) {
  Result r;
  ProfileParams pp;
  pp.p = params_of(cfg, r);
  const ProfileCase pc = parse_profile_case(cfg.profile_case);
  pp.beta = cfg.beta.value_or(0.0);
  pp.delta = cfg.delta.value_or(0.0);
  pp.kappa = cfg.kappa.value_or(0.0);
  pp.epsilon = cfg.epsilon.value_or(0.1);
  pp.k = cfg.k.value_or(1.0);
  pp.scale = cfg.scale;
  r.params["case"] = profile_case_name(pc);
  for (const auto& [key, v] : {std::pair{"beta", cfg.beta}, {"delta", cfg.delta}, {"kappa", cfg.kappa},
                               {"epsilon", cfg.epsilon}, {"k", cfg.k}})
    if (v) r.params[key] = *v;
  r.params["scale"] = cfg.scale;
  const auto xs = linspace(cfg.x_min.value_or(-40.0), cfg.x_max.value_or(40.0), cfg.n.value_or(801));
  const Profile prof = physical_profile(pc, xs, pp);
  Dataset ds{{"x", "eta"}, {}};
  for (std::size_t i = 0; i < prof.x.size(); ++i) ds.rows.push_back({prof.x[i], prof.eta[i]});
  r.data = std::move(ds);
  r.residual_summary["remainder_order"] = prof.remainder_order;
  r.grid_n = static_cast<int>(xs.size());
  return r;
}

Result cmd_nls(const RunConfig& cfg) {
  Result r;
  EnvelopeKind kind;
  if (cfg.kind == "bright")
    kind = EnvelopeKind::Bright;
  else if (cfg.kind == "dark")
    kind = EnvelopeKind::Dark;
  else
    throw Error(ErrorCode::InvalidArgument, "--kind must be bright or dark");
  const double delta = need(cfg.delta, "delta");
  double c1, c3;
  if (cfg.c1 && cfg.c3) {
    c1 = *cfg.c1;
    c3 = *cfg.c3;
  } else {
    const PhysicalParams p = params_of(cfg, r);
    const double k = need(cfg.k, "k");
    r.params["k"] = k;
    const HopfCoeffs hc = hopf_coeffs(k, p);
    c1 = hc.c1;
    c3 = hc.c3;
  }
  r.params["kind"] = cfg.kind;
  r.params["delta"] = delta;
  r.params["c1"] = c1;
  r.params["c3"] = c3;
  const Envelope env = nls_envelope(kind, delta, c1, c3);
  const auto xs = linspace(cfg.x_min.value_or(-20.0), cfg.x_max.value_or(20.0), cfg.n.value_or(401));
  Dataset ds{{"x", "A", "residual"}, {}};
  double worst = 0.0;
  for (double x : xs) {
    const double res = nls_residual(env, delta, c1, c3, x);
    worst = std::max(worst, std::abs(res));
    ds.rows.push_back({x, envelope_value(env, x), res});
  }
  r.data = std::move(ds);
  r.tolerances["residual"] = 1e-12;
  r.residual_summary["amplitude"] = env.a;
  r.residual_summary["width"] = env.b;
  r.residual_summary["max_residual"] = worst;
  r.grid_n = static_cast<int>(xs.size());
  return r;
}

Result dispatch(const RunConfig& cfg) {
  const auto& c = cfg.command;
  const std::string top = c.empty() ? "" : c[0];
  const std::string sub = c.size() > 1 ? c[1] : "";
  if (top == "curves") return cmd_curves(cfg);
  if (top == "classify") return cmd_classify(cfg);
  if (top == "spectrum-validate") return cmd_spectrum(cfg);
  if (top == "c3-scan") return cmd_c3_scan(cfg);
  if (top == "profile") return cmd_profile(cfg);
  if (top == "nls-envelope") return cmd_nls(cfg);
  if (top == "coeffs") {
    if (sub == "hopf") return cmd_coeffs_hopf(cfg);
    if (sub == "laurent") return cmd_coeffs_laurent(cfg);
    if (sub == "r11") return cmd_coeffs_r11(cfg);
    if (sub == "o2") return cmd_coeffs_o2(cfg);
  }
  if (top == "solve") {
    if (sub == "quartic") return cmd_solve_quartic(cfg);
    if (sub == "r11") return cmd_solve_r11(cfg);
    if (sub == "r11-critical") return cmd_solve_r11_critical(cfg);
  }
  if (top == "explicit") {
    if (sub == "o2") return cmd_explicit(cfg, false);
    if (sub == "o2-critical") return cmd_explicit(cfg, true);
  }
  throw Error(ErrorCode::InvalidArgument, "missing or unknown subcommand");
}

void write_result(const RunConfig& cfg, const Result& r) {
  const Format fmt = parse_format(cfg.format);
  if (cfg.output.empty()) {
    if (r.data) {
      check_finite(*r.data);
      std::cout << (fmt == Format::Csv ? render_csv(*r.data) : to_json(*r.data).dump(2) + "\n");
    } else {
      check_finite(*r.doc);
      std::cout << r.doc->dump(2) << "\n";
    }
    return;
  }
  if (r.data)
    emit_dataset(*r.data, fmt, cfg.output);
  else
    emit_document(*r.doc, cfg.output);

  std::string command = "wavestrata";
  for (const auto& s : cfg.command) command += " " + s;
  json meta{{"command", command},
            {"params", r.params},
            {"tolerances", r.tolerances},
            {"residual_summary", r.residual_summary},
            {"grid_n", r.grid_n},
            {"versions",
             {{"wavestrata", kVersion},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"boost", BOOST_LIB_VERSION}}}};
  emit_meta(meta, cfg.output);
}

}  // namespace

int run(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Bifurcation analysis of two-layer gravity-capillary solitary waves", "wavestrata"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_config("--config", "", "key=value file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--rho", cfg.rho, "density ratio in [0, 1)");
  app.add_option("--h", cfg.h, "depth ratio, > 0");
  app.add_option("--beta", cfg.beta, "Bond number");
  app.add_option("--alpha", cfg.alpha, "inverse squared Froude number");
  app.add_option("--k", cfg.k, "wavenumber");
  app.add_option("--delta", cfg.delta, "bifurcation parameter");
  app.add_option("--kappa", cfg.kappa, "scaled distance from rho = 1/h^2");
  app.add_option("--epsilon", cfg.epsilon, "R11 amplitude parameter");
  app.add_option("--k-min", cfg.k_min, "lower end of a k (or beta) sweep");
  app.add_option("--k-max", cfg.k_max, "upper end of a k (or beta) sweep");
  app.add_option("--x-min", cfg.x_min, "left end of the x or X window");
  app.add_option("--x-max", cfg.x_max, "right end of the x or X window");
  app.add_option("--n", cfg.n, "number of samples");
  app.add_option("--grid-n", cfg.grid_n, "Chebyshev degree");
  app.add_option("--jobs", cfg.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", cfg.output, "dataset path; <path>.meta.json is written alongside");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    s->callback([&cfg, s, parent, &app] {
      cfg.command.clear();
      if (parent != &app) cfg.command.push_back(parent->get_name());
      cfg.command.push_back(s->get_name());
    });
    return s;
  };

  auto* curves = leaf(&app, "curves", "sample a bifurcation curve");
  curves->add_option("--curve", cfg.curve, "c1, c2 or c3");
  leaf(&app, "classify", "spectral signature at (beta, alpha)");
  leaf(&app, "spectrum-validate", "collocated spectrum against dispersion roots");
  leaf(&app, "c3-scan", "Hopf c3 over a k-interval");

  auto* coeffs = app.add_subcommand("coeffs", "normal-form coefficients");
  coeffs->fallthrough();
  coeffs->require_subcommand(1);
  leaf(coeffs, "hopf", "c1, c3 and gamma1 at wavenumber k");
  leaf(coeffs, "laurent", "small-k Laurent coefficients of c3");
  leaf(coeffs, "r11", "real 1:1 resonance coefficients");
  leaf(coeffs, "o2", "0^2 resonance coefficients");

  auto* solve = app.add_subcommand("solve", "homoclinic orbits");
  solve->fallthrough();
  solve->require_subcommand(1);
  for (const char* name : {"quartic", "r11", "r11-critical"}) {
    auto* s = leaf(solve, name, "even homoclinic orbit");
    s->add_option("--L", cfg.L, "half-length of the domain");
    s->add_option("--u0", cfg.u0, "initial guess for u(0)");
    s->add_option("--u2", cfg.u2, "initial guess for u''(0)");
    s->add_flag("--negate", cfg.negate, "start from the negated guess");
    if (std::string(name) == "quartic") {
      s->add_option("--P", cfg.P);
      s->add_option("--q", cfg.q);
      s->add_option("--c", cfg.c);
    }
  }

  auto* expl = app.add_subcommand("explicit", "closed-form O2 orbits");
  expl->fallthrough();
  expl->require_subcommand(1);
  leaf(expl, "o2", "plain truncated O2 orbit");
  leaf(expl, "o2-critical", "critical-ratio O2 orbits")->add_option("--branch", cfg.branch, "plus or minus");

  auto* prof = leaf(&app, "profile", "leading-order free-surface profile");
  prof->add_option("case", cfg.profile_case, "O2, O2_CRITICAL_PLUS, O2_CRITICAL_MINUS, R11, R11_CRITICAL, "
                                             "HOPF_BRIGHT or HOPF_DARK")
      ->required();
  prof->add_option("--scale", cfg.scale, "multiplies x and eta");

  auto* nls = leaf(&app, "nls-envelope", "bright or dark NLS envelope");
  nls->add_option("--kind", cfg.kind, "bright or dark");
  nls->add_option("--c1", cfg.c1);
  nls->add_option("--c3", cfg.c3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Result r = dispatch(cfg);
    write_result(cfg, r);
    return 0;
  } catch (const Error& e) {
    std::cerr << "wavestrata: " << e.what() << "\n";
    return is_validation_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "wavestrata: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace wavestrata
