#include "wavestrata/dispersion.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <functional>
#include <numbers>

namespace wavestrata {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleTol = 1e-8;
constexpr double kDoubleTol = 1e-9;

constexpr std::array<double, 8> kXcot = {
    1.0, -1.0 / 3.0, -1.0 / 45.0, -2.0 / 945.0, -1.0 / 4725.0, -2.0 / 93555.0,
    -1382.0 / 638512875.0, -4.0 / 18243225.0};

// cot z without overflow for large |Im z|.
cplx ccot(cplx z) {
  if (z.imag() == 0.0) return cplx(1.0 / std::tan(z.real()), 0.0);
  if (z.imag() < 0.0) return std::conj(ccot(std::conj(z)));
  const cplx w = std::exp(cplx(0.0, 2.0) * z);
  return cplx(0.0, 1.0) * (w + 1.0) / (w - 1.0);
}

cplx zcot(cplx z) {
  if (std::abs(z) < 0.25) {
    const cplx z2 = z * z;
    cplx acc = 0.0;
    for (int n = 7; n >= 0; --n) acc = acc * z2 + kXcot[n];
    return acc;
  }
  return z * ccot(z);
}

cplx dzcot(cplx z) {
  if (std::abs(z) < 0.25) {
    const cplx z2 = z * z;
    cplx acc = 0.0;
    for (int n = 7; n >= 1; --n) acc = acc * z2 + 2.0 * n * kXcot[n];
    return acc * z;
  }
  const cplx c = ccot(z);
  return c - z * (1.0 + c * c);
}

void check_poles(cplx lambda, double h) {
  const double n1 = std::round(lambda.real() / kPi);
  if (n1 != 0.0 && std::abs(lambda - cplx(n1 * kPi, 0.0)) < kPoleTol)
    throw Error(ErrorCode::NearPole, "lambda is within 1e-8 of a pole of cot(lambda)");
  const double n2 = std::round(h * lambda.real() / kPi);
  if (n2 != 0.0 && std::abs(lambda - cplx(n2 * kPi / h, 0.0)) < kPoleTol)
    throw Error(ErrorCode::NearPole, "lambda is within 1e-8 of a pole of cot(h lambda)");
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

double bracket_root(const std::function<double(double)>& f, double a, double b, double fa,
                    double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                             boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

// (1/2 pi i) \oint p(lambda) F'/F over the box [x0,x1] x [y0,y1].
cplx contour_moment(const DispersionContext& ctx, double x0, double x1, double y0, double y1,
                    const std::function<cplx(cplx)>& weight, double tol) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const std::array<cplx, 4> corner = {cplx(x0, y0), cplx(x1, y0), cplx(x1, y1), cplx(x0, y1)};
  cplx total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corner[e];
    const cplx d = corner[(e + 1) % 4] - a;
    auto f = [&](double t) -> cplx {
      const cplx lam = a + t * d;
      return weight(lam) * disp_eval(lam, 1, ctx) / disp_eval(lam, 0, ctx) * d;
    };
    total += GK::integrate(f, 0.0, 1.0, 25, tol);
  }
  return total / cplx(0.0, 2.0 * kPi);
}

}  // namespace

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::Real: return "REAL_AXIS";
    case Axis::Imaginary: return "IMAGINARY_AXIS";
    case Axis::OffAxis: return "OFF_AXIS";
  }
  return "OFF_AXIS";
}

const char* label_name(SignatureLabel l) {
  switch (l) {
    case SignatureLabel::TwoRealPairs: return "TWO_REAL_PAIRS";
    case SignatureLabel::TwoImagPairs: return "TWO_IMAG_PAIRS";
    case SignatureLabel::ComplexQuartet: return "COMPLEX_QUARTET";
    case SignatureLabel::MixedRealImag: return "MIXED_REAL_IMAG";
    case SignatureLabel::RealDoublePair: return "REAL_DOUBLE_PAIR";
    case SignatureLabel::ImagDoublePair: return "IMAG_DOUBLE_PAIR";
    case SignatureLabel::ZeroDoublePlusRealPair: return "ZERO_DOUBLE_PLUS_REAL_PAIR";
    case SignatureLabel::Other: return "OTHER";
  }
  return "OTHER";
}

cplx disp_eval(cplx lambda, int order, const DispersionContext& ctx) {
  const double rho = ctx.params.rho, h = ctx.params.h;
  const double alpha = ctx.point.alpha, beta = ctx.point.beta;
  check_poles(lambda, h);
  if (order == 0) return rho * zcot(lambda) + zcot(h * lambda) / h - alpha + beta * lambda * lambda;
  if (order == 1) return rho * dzcot(lambda) + dzcot(h * lambda) + 2.0 * beta * lambda;
  throw Error(ErrorCode::InvalidArgument, "disp_eval order must be 0 or 1");
}

double disp_real(double x, int order, const DispersionContext& ctx) {
  const double rho = ctx.params.rho, h = ctx.params.h;
  const double alpha = ctx.point.alpha, beta = ctx.point.beta;
  check_poles(cplx(x, 0.0), h);
  switch (order) {
    case 0: return rho * xcot(x) + xcot(h * x) / h - alpha + beta * x * x;
    case 1: return rho * dxcot(x) + dxcot(h * x) + 2.0 * beta * x;
    case 2: return rho * d2xcot(x) + h * d2xcot(h * x) + 2.0 * beta;
  }
  throw Error(ErrorCode::InvalidArgument, "derivative order must be 0, 1 or 2");
}

double disp_imag(double k, int order, const DispersionContext& ctx) {
  const double rho = ctx.params.rho, h = ctx.params.h;
  const double alpha = ctx.point.alpha, beta = ctx.point.beta;
  switch (order) {
    case 0: return rho * xcoth(k) + xcoth(h * k) / h - alpha - beta * k * k;
    case 1: return rho * dxcoth(k) + dxcoth(h * k) - 2.0 * beta * k;
    case 2: return rho * d2xcoth(k) + h * d2xcoth(h * k) - 2.0 * beta;
  }
  throw Error(ErrorCode::InvalidArgument, "derivative order must be 0, 1 or 2");
}

double default_strip_halfwidth(const PhysicalParams& p) {
  return 0.9 * std::min(kPi, kPi / p.h);
}

double imag_scan_bound(const DispersionContext& ctx) {
  const double a = ctx.point.alpha, b = ctx.point.beta, rho = ctx.params.rho;
  return 2.0 * (std::sqrt(std::max(a, 1.0) / b) + (rho + 1.0) / b + 1.0);
}

std::vector<LocatedRoot> axis_roots(Axis axis, const DispersionContext& ctx, double halfwidth,
                                    double scan_resolution) {
  if (axis == Axis::OffAxis) throw Error(ErrorCode::InvalidArgument, "axis must be real or imaginary");
  if (!(scan_resolution > 0.0) || !(halfwidth > 0.0))
    throw Error(ErrorCode::InvalidArgument, "halfwidth and scan resolution must be positive");
  if (axis == Axis::Real && halfwidth >= std::min(kPi, kPi / ctx.params.h))
    throw Error(ErrorCode::InvalidArgument, "real-axis window must stay below the first pole");

  const bool real = axis == Axis::Real;
  std::function<double(double)> f = [&](double x) {
    return real ? disp_real(x, 0, ctx) : disp_imag(x, 0, ctx);
  };
  std::function<double(double)> fp = [&](double x) {
    return real ? disp_real(x, 1, ctx) : disp_imag(x, 1, ctx);
  };
  auto fpp = [&](double x) { return real ? disp_real(x, 2, ctx) : disp_imag(x, 2, ctx); };
  auto at = [&](double x) { return real ? cplx(x, 0.0) : cplx(0.0, x); };

  std::vector<LocatedRoot> out;
  const double f0 = f(0.0);
  const bool zero_root = std::abs(f0) <= 1e-12 * std::max(1.0, std::abs(ctx.point.alpha));
  if (zero_root) {
    LocatedRoot r{cplx(0.0, 0.0), 2, Axis::Real, false};
    if (std::abs(ctx.point.beta - beta0(ctx.params)) <= 1e-12) {
      r.multiplicity = 4;
      r.flagged = true;
    }
    out.push_back(r);
  }

  const double x_start = zero_root ? scan_resolution : 0.0;
  const int n = std::max(1, int(std::ceil((halfwidth - x_start) / scan_resolution)));
  const double dx = (halfwidth - x_start) / n;
  std::vector<double> xs(n + 1), v(n + 1), d(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = x_start + i * dx;
    v[i] = f(xs[i]);
    d[i] = xs[i] > 0.0 ? fp(xs[i]) : 0.0;
  }

  std::vector<double> doubles;
  std::vector<double> curvature;
  for (int i = 0; i < n; ++i) {
    if (xs[i] == 0.0) continue;  // F' vanishes at 0 by evenness
    if (sgn(d[i]) * sgn(d[i + 1]) >= 0) continue;
    const double c = bracket_root(fp, xs[i], xs[i + 1], d[i], d[i + 1]);
    const double fc = f(c);
    if (std::abs(fc) < kDoubleTol) {
      doubles.push_back(c);
      curvature.push_back(std::abs(fpp(c)));
    } else if (sgn(v[i]) == sgn(v[i + 1]) && sgn(fc) == -sgn(v[i])) {
      throw Error(ErrorCode::ResolutionTooCoarse, "two roots share one scan bracket");
    }
  }

  std::vector<double> simples;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0.0 && xs[i] > 0.0) {
      simples.push_back(xs[i]);
      continue;
    }
    if (sgn(v[i]) * sgn(v[i + 1]) < 0) simples.push_back(bracket_root(f, xs[i], xs[i + 1], v[i], v[i + 1]));
  }
  if (n >= 0 && v[n] == 0.0) simples.push_back(xs[n]);

  std::vector<double> kept;
  for (double s : simples) {
    bool absorbed = false;
    for (size_t j = 0; j < doubles.size(); ++j) {
      const double radius = 1e-6 + 2.0 * std::sqrt(2.0 * kDoubleTol / std::max(curvature[j], 1e-300));
      if (std::abs(s - doubles[j]) < radius) absorbed = true;
    }
    if (!absorbed) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end());
  for (size_t j = 1; j < kept.size(); ++j)
    if (kept[j] - kept[j - 1] < 2.0 * scan_resolution)
      throw Error(ErrorCode::ResolutionTooCoarse, "sign changes closer than twice the scan step");

  for (double s : kept) out.push_back({at(s), 1, axis, false});
  for (double c : doubles) out.push_back({at(c), 2, axis, false});
  std::sort(out.begin(), out.end(),
            [](const LocatedRoot& a, const LocatedRoot& b) { return std::abs(a.location) < std::abs(b.location); });
  return out;
}

int count_roots_rect(const DispersionContext& ctx, double re_halfwidth, double im_halfheight,
                     double tol) {
  if (!(re_halfwidth > 0.0) || !(im_halfheight > 0.0))
    throw Error(ErrorCode::InvalidArgument, "rectangle must have positive size");
  const std::array<double, 5> inflation = {1.0, 1.0025, 1.005, 1.0075, 1.01};
  auto one = [](cplx) { return cplx(1.0, 0.0); };
  for (double s : inflation) {
    const double a = re_halfwidth * s, b = im_halfheight * s;
    // a root sitting on the boundary spoils the integral; move the box instead
    if (std::abs(disp_real(a, 0, ctx)) < 1e-6 || std::abs(disp_imag(b, 0, ctx)) < 1e-6) continue;
    cplx raw;
    try {
      raw = contour_moment(ctx, -a, a, -b, b, one, tol);
    } catch (const Error&) {
      continue;
    }
    if (!std::isfinite(raw.real()) || !std::isfinite(raw.imag())) continue;
    const double r = std::round(raw.real());
    if (std::abs(raw.real() - r) <= 0.25 && std::abs(raw.imag()) <= 0.25) return int(r);
  }
  throw Error(ErrorCode::ContourUnresolved, "argument-principle integral is not near an integer");
}

std::vector<cplx> off_axis_roots(const DispersionContext& ctx, double re_halfwidth,
                                 double im_halfheight) {
  const double delta = 1e-4;
  const double x0 = delta, x1 = re_halfwidth, y0 = delta, y1 = im_halfheight;
  const cplx centre(0.5 * (x0 + x1), 0.5 * (y0 + y1));
  const double scale = 0.5 * std::hypot(x1 - x0, y1 - y0);

  auto one = [](cplx) { return cplx(1.0, 0.0); };
  // only rounded to an integer, so a loose tolerance is enough
  const cplx s0 = contour_moment(ctx, x0, x1, y0, y1, one, 1e-6);
  const double n_raw = s0.real();
  const int n = int(std::round(n_raw));
  if (std::abs(n_raw - n) > 0.25 || std::abs(s0.imag()) > 0.25)
    throw Error(ErrorCode::ContourUnresolved, "first-quadrant root count is not near an integer");
  if (n <= 0) return {};
  if (n > 12) throw Error(ErrorCode::ContourUnresolved, "too many roots in the first quadrant");

  // power sums of mu = (lambda - centre)/scale, then Newton's identities
  std::vector<cplx> ps(n + 1);
  for (int k = 1; k <= n; ++k) {
    auto wk = [&](cplx lam) { return std::pow((lam - centre) / scale, k); };
    ps[k] = contour_moment(ctx, x0, x1, y0, y1, wk, 1e-10);
  }
  std::vector<cplx> e(n + 1);
  e[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    cplx acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += ((i % 2) ? 1.0 : -1.0) * e[k - i] * ps[i];
    e[k] = acc / double(k);
  }
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int k = 1; k <= n; ++k) C(n - k, n - 1) = ((k % 2) ? 1.0 : -1.0) * e[k];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);

  std::vector<cplx> roots;
  for (int i = 0; i < n; ++i) {
    cplx lam = centre + scale * es.eigenvalues()(i);
    for (int it = 0; it < 50; ++it) {
      const cplx step = disp_eval(lam, 0, ctx) / disp_eval(lam, 1, ctx);
      lam -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(lam))) break;
    }
    roots.push_back(lam);
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

int full_multiplicity(const std::vector<LocatedRoot>& roots) {
  int total = 0;
  for (const auto& r : roots) {
    if (r.axis == Axis::OffAxis) total += 4 * r.multiplicity;
    else if (std::abs(r.location) == 0.0) total += r.multiplicity;
    else total += 2 * r.multiplicity;
  }
  return total;
}

SpectralSignature spectral_signature(const DispersionContext& ctx,
                                     std::optional<double> strip_halfwidth) {
  SpectralSignature sig;
  sig.strip_halfwidth = strip_halfwidth.value_or(default_strip_halfwidth(ctx.params));
  sig.im_halfheight = imag_scan_bound(ctx);

  auto re = axis_roots(Axis::Real, ctx, sig.strip_halfwidth, sig.strip_halfwidth / 4000.0);
  auto im = axis_roots(Axis::Imaginary, ctx, sig.im_halfheight, sig.im_halfheight / 8000.0);
  sig.roots = re;
  for (const auto& r : im)
    if (std::abs(r.location) > 0.0) sig.roots.push_back(r);
  for (cplx z : off_axis_roots(ctx, sig.strip_halfwidth, sig.im_halfheight))
    sig.roots.push_back({z, 1, Axis::OffAxis, false});
  sig.contour_count = count_roots_rect(ctx, sig.strip_halfwidth, sig.im_halfheight);

  int zero = 0, quartets = 0;
  std::vector<int> real_m, imag_m;
  for (const auto& r : sig.roots) {
    if (r.axis == Axis::OffAxis) ++quartets;
    else if (std::abs(r.location) == 0.0) zero = r.multiplicity;
    else if (r.axis == Axis::Real) real_m.push_back(r.multiplicity);
    else imag_m.push_back(r.multiplicity);
  }
  auto is = [](const std::vector<int>& m, std::vector<int> want) { return m == want; };

  using L = SignatureLabel;
  L label = L::Other;
  if (full_multiplicity(sig.roots) != sig.contour_count) {
    label = L::Other;
  } else if (zero == 0 && quartets == 1 && real_m.empty() && imag_m.empty()) {
    label = L::ComplexQuartet;
  } else if (zero == 0 && quartets == 0) {
    if (is(real_m, {1, 1}) && imag_m.empty()) label = L::TwoRealPairs;
    else if (real_m.empty() && is(imag_m, {1, 1})) label = L::TwoImagPairs;
    else if (is(real_m, {1}) && is(imag_m, {1})) label = L::MixedRealImag;
    else if (is(real_m, {2}) && imag_m.empty()) label = L::RealDoublePair;
    else if (real_m.empty() && is(imag_m, {2})) label = L::ImagDoublePair;
  } else if (zero == 2 && quartets == 0 && is(real_m, {1}) && imag_m.empty()) {
    label = L::ZeroDoublePlusRealPair;
  }
  sig.label = label;
  return sig;
}

}  // namespace wavestrata
