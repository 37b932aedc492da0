#include "wavestrata/curves.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>
#include <tuple>

namespace wavestrata {

namespace {

constexpr double kPi = std::numbers::pi;

// residuals (|F|, |F'|) at the curve's double root
std::pair<double, double> residuals(CurveId id, double k, const DispersionContext& ctx) {
  switch (id) {
    case CurveId::C1: return {std::abs(disp_real(k, 0, ctx)), std::abs(disp_real(k, 1, ctx))};
    case CurveId::C2: return {std::abs(disp_imag(k, 0, ctx)), std::abs(disp_imag(k, 1, ctx))};
    case CurveId::C3: return {std::abs(disp_real(0.0, 0, ctx)), std::abs(disp_real(0.0, 1, ctx))};
  }
  return {0.0, 0.0};
}

}  // namespace

const char* curve_name(CurveId id) {
  switch (id) {
    case CurveId::C1: return "C1";
    case CurveId::C2: return "C2";
    case CurveId::C3: return "C3";
  }
  return "C1";
}

CurveId parse_curve(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "C1") return CurveId::C1;
  if (t == "C2") return CurveId::C2;
  if (t == "C3") return CurveId::C3;
  throw Error(ErrorCode::InvalidArgument, "unknown curve '" + s + "'");
}

std::pair<double, double> curve_offset(CurveId id, double k, const PhysicalParams& p) {
  const double rho = p.rho, h = p.h, k2 = k * k;
  if (id == CurveId::C1) {
    const double db = rho * gtrig_m(k) + h * gtrig_m(h * k);
    return {db, db * k2 + rho * xcot_m(k) + xcot_m(h * k) / h};
  }
  if (id == CurveId::C2) {
    const double db = rho * ghyp_m(k) + h * ghyp_m(h * k);
    return {db, -db * k2 + rho * xcoth_m(k) + xcoth_m(h * k) / h};
  }
  return {k - beta0(p), 0.0};
}

CurvePoint curve_point(CurveId id, double k, const PhysicalParams& p) {
  CurvePoint cp;
  cp.id = id;
  cp.k0 = k;
  switch (id) {
    case CurveId::C1:
      if (!(k > 0.0 && k < std::min(kPi, kPi / p.h)))
        throw Error(ErrorCode::OutOfDomain, "C1 needs 0 < k0 < min(pi, pi/h)");
      break;
    case CurveId::C2:
      if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::OutOfDomain, "C2 needs k0 > 0");
      break;
    case CurveId::C3:
      if (!(k > beta0(p)) || !std::isfinite(k)) throw Error(ErrorCode::OutOfDomain, "C3 needs beta > beta0");
      break;
  }
  const auto [db, da] = curve_offset(id, k, p);
  cp.point = {beta0(p) + db, alpha0(p) + da};
  if (id == CurveId::C3) cp.point = {k, alpha0(p)};

  const DispersionContext ctx{p, cp.point};
  std::tie(cp.res_f, cp.res_fp) = residuals(id, k, ctx);
  if (id != CurveId::C3 && std::max(cp.res_f, cp.res_fp) > 1e-9) cp = refine_double_root(cp, p);
  if (std::max(cp.res_f, cp.res_fp) > 1e-9)
    throw Error(ErrorCode::ResidualTooLarge, "double-root residual above 1e-9");
  return cp;
}

CurvePoint refine_double_root(const CurvePoint& seed, const PhysicalParams& p, HoldFixed hold) {
  CurvePoint cp = seed;
  if (cp.id == CurveId::C3) {
    // the zero root is double exactly when alpha = alpha0
    if (hold == HoldFixed::Alpha)
      throw Error(ErrorCode::InvalidArgument, "C3 points can only be refined in alpha");
    DispersionContext ctx{p, cp.point};
    if (std::abs(disp_real(0.0, 0, ctx)) > 1e-2)
      throw Error(ErrorCode::NoConvergence, "seed outside the Newton basin");
    cp.point.alpha = alpha0(p);
    ctx.point = cp.point;
    std::tie(cp.res_f, cp.res_fp) = residuals(cp.id, 0.0, ctx);
    return cp;
  }

  const bool real = cp.id == CurveId::C1;
  const double sigma = real ? 1.0 : -1.0;  // sign of beta lambda^2 on the axis
  auto eval = [&](double k, const BifurcationPoint& pt, int order) {
    const DispersionContext ctx{p, pt};
    return real ? disp_real(k, order, ctx) : disp_imag(k, order, ctx);
  };

  double k = cp.k0;
  BifurcationPoint pt = cp.point;
  double f = eval(k, pt, 0), fp = eval(k, pt, 1);
  if (std::max(std::abs(f), std::abs(fp)) > 1e-2)
    throw Error(ErrorCode::NoConvergence, "seed outside the Newton basin");

  for (int it = 0; it < 50; ++it) {
    if (std::max(std::abs(f), std::abs(fp)) < 1e-12) {
      cp.k0 = k;
      cp.point = pt;
      cp.res_f = std::abs(f);
      cp.res_fp = std::abs(fp);
      return cp;
    }
    const double fpp = eval(k, pt, 2);
    Eigen::Matrix2d J;
    if (hold == HoldFixed::Beta)
      J << fp, -1.0, fpp, 0.0;
    else
      J << fp, sigma * k * k, fpp, 2.0 * sigma * k;
    const Eigen::Vector2d step = J.fullPivLu().solve(Eigen::Vector2d(f, fp));
    if (!step.allFinite()) break;
    k -= step(0);
    if (hold == HoldFixed::Beta)
      pt.alpha -= step(1);
    else
      pt.beta -= step(1);
    if (!(k > 0.0)) break;
    f = eval(k, pt, 0);
    fp = eval(k, pt, 1);
  }
  throw Error(ErrorCode::NoConvergence, "double-root Newton did not converge in 50 iterations");
}

std::vector<CurvePoint> sample_curve(CurveId id, double k_min, double k_max, int n,
                                     const PhysicalParams& p, int jobs) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sample_curve needs n >= 2");
  if (!(k_max > k_min)) throw Error(ErrorCode::InvalidArgument, "sample_curve needs k_max > k_min");
  std::vector<double> ks(n);
  for (int i = 0; i < n; ++i) ks[i] = k_min + (k_max - k_min) * i / (n - 1);
  ks[n - 1] = k_max;

  std::vector<CurvePoint> out(n);
  std::vector<std::exception_ptr> errs(n);
  auto work = [&](int start, int stride) {
    for (int i = start; i < n; i += stride) {
      try {
        out[i] = curve_point(id, ks[i], p);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  jobs = std::clamp(jobs, 1, n);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

TaylorFit taylor_check(const PhysicalParams& p) {
  constexpr int m = 6;
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd yb(m), ya(m);
  for (int j = 0; j < m; ++j) {
    const double k = 1e-3 * std::ldexp(1.0, j);
    const auto [db, da] = curve_offset(CurveId::C1, k, p);
    A(j, 0) = 1.0;
    A(j, 1) = k * k;
    yb(j) = db / (k * k);
    ya(j) = da / (k * k * k * k);
  }
  const auto qr = A.colPivHouseholderQr();
  return {qr.solve(yb)(0), qr.solve(ya)(0)};
}

}  // namespace wavestrata
