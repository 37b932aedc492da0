#include "wavestrata/normalform.hpp"

#include <algorithm>
#include <cmath>

#include "wavestrata/curves.hpp"
#include "wavestrata/operator.hpp"

namespace wavestrata {

namespace {

struct LayerTerms {
  double n1, n2, rest;
};

// Contribution of one layer of depth d (d = h below, d = 1 above).  Every
// s/tanh(d s) is written as xcoth(d s)/d so nothing blows up at small s.
LayerTerms layer_terms(double s, double d) {
  const double t1 = xcoth(d * s) / d;              // s / tanh(d s)
  const double t2 = xcoth(2.0 * d * s) / (2.0 * d);  // s / tanh(2 d s)
  const double x = d * s;
  const double sh = x == 0.0 ? 1.0 : x / std::sinh(x);
  const double s2sinh2 = sh * sh / (d * d);        // s^2 / sinh^2(d s)
  const double s2 = s * s;
  LayerTerms t;
  t.n1 = t1 * t1 + 4.0 * t1 * t2 - 3.0 * s2;
  t.n2 = s2sinh2 + 2.0 * t1 / d;
  t.rest = 6.0 * s2 * t1 - 4.0 * t1 * t1 * t2 - 4.0 * t1 * t1 / d;
  return t;
}

// 2 gamma1^2 c3 from the curve offsets (beta - beta0, alpha - alpha0).
double scaled_c3(double s, const PhysicalParams& p, double dbeta, double dalpha) {
  const double rho = p.rho, h = p.h;
  const double beta = beta0(p) + dbeta;
  // -G(2s), with the constant and s^2 parts of xcoth cancelled against
  // alpha0 and beta0 analytically
  const double b1 = -(rho * xcoth_m(2.0 * s) + xcoth_m(2.0 * h * s) / h - dalpha -
                      4.0 * dbeta * s * s);
  const double b2 = -dalpha;
  // both brackets vanish like s^4 as s -> 0 on C2; measure them on that scale
  const double m = std::min(s, 1.0);
  const double scale = m * m * m * m;
  if (std::abs(b1) < 1e-10 * scale || std::abs(b2) < 1e-10 * scale)
    throw Error(ErrorCode::SingularBracket, "c3 denominator within 1e-10 of zero");

  const LayerTerms lo = layer_terms(s, h), up = layer_terms(s, 1.0);
  const double n1 = lo.n1 - rho * up.n1;
  const double n2 = lo.n2 - rho * up.n2;
  const double rest = lo.rest + rho * up.rest - 1.5 * s * s * s * s * beta;
  return -(-n1 * n1 / (2.0 * b1) + n2 * n2 / b2 + rest);
}

}  // namespace

double hopf_c1(double k, const PhysicalParams& p) { return -1.0 / gamma1_closed(k, p); }

double hopf_c3_scaled(double k, const PhysicalParams& p) {
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "c3 needs k > 0");
  const auto [db, da] = curve_offset(CurveId::C2, k, p);
  return scaled_c3(k, p, db, da);
}

double hopf_c3(double k, const PhysicalParams& p) {
  const double g1 = gamma1_closed(k, p);
  return hopf_c3_scaled(k, p) / (2.0 * g1 * g1);
}

double hopf_c3(double k, const PhysicalParams& p, const BifurcationPoint& pt) {
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "c3 needs k > 0");
  const double g1 = gamma1_closed(k, p);
  return scaled_c3(k, p, pt.beta - beta0(p), pt.alpha - alpha0(p)) / (2.0 * g1 * g1);
}

HopfCoeffs hopf_coeffs(double k, const PhysicalParams& p) {
  HopfCoeffs c;
  c.k = k;
  c.gamma1 = gamma1_closed(k, p);
  c.c1 = -1.0 / c.gamma1;
  c.q2 = hopf_c3_scaled(k, p);
  c.c3 = c.q2 / (2.0 * c.gamma1 * c.gamma1);
  c.q1 = 2.0 * c.gamma1 * c.c3;
  return c;
}

LaurentCoeffs laurent_coeffs(const PhysicalParams& p) {
  const double rho = p.rho, h = p.h, h2 = h * h, h3 = h2 * h;
  const double kap = rho - 1.0 / h2;
  LaurentCoeffs out{855.0 * kap * kap / (h3 + rho), std::nullopt};
  if (std::abs(kap) < 1e-12) {
    const double m = 1.0 - 1.0 / h2;
    out.a3 = 15.0 * h2 * m * m / (2.0 * (1.0 + h3 * h2)) + 6.0 * (1.0 + h) / h3;
  }
  return out;
}

const char* hopf_class_name(HopfClass c) {
  switch (c) {
    case HopfClass::Bright: return "BRIGHT";
    case HopfClass::BrightMultipulseFamily: return "BRIGHT_MULTIPULSE_FAMILY";
    case HopfClass::Dark: return "DARK";
    case HopfClass::Undetermined: return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

HopfClass classify_hopf(double delta, double c3, bool multipulse) {
  if (std::abs(c3) <= 1e-12) return HopfClass::Undetermined;
  if (delta > 0.0 && c3 > 0.0) return multipulse ? HopfClass::BrightMultipulseFamily : HopfClass::Bright;
  if (delta < 0.0 && c3 < 0.0) return HopfClass::Dark;
  return HopfClass::Undetermined;
}

Envelope nls_envelope(EnvelopeKind kind, double delta, double c1, double c3) {
  if (!(c1 < 0.0)) throw Error(ErrorCode::SignMismatch, "envelopes need c1 < 0");
  if (kind == EnvelopeKind::Bright) {
    if (!(delta > 0.0 && c3 > 0.0)) throw Error(ErrorCode::SignMismatch, "bright needs delta > 0, c3 > 0");
    return {kind, std::sqrt(-c1 / c3), std::sqrt(-c1)};
  }
  if (!(delta < 0.0 && c3 < 0.0)) throw Error(ErrorCode::SignMismatch, "dark needs delta < 0, c3 < 0");
  return {kind, std::sqrt(c1 / (2.0 * c3)), std::sqrt(-c1 / 2.0)};
}

double envelope_value(const Envelope& e, double x) {
  return e.kind == EnvelopeKind::Bright ? e.a / std::cosh(e.b * x) : e.a * std::tanh(e.b * x);
}

double nls_residual(const Envelope& e, double delta, double c1, double c3, double x) {
  const double sg = delta > 0.0 ? 1.0 : (delta < 0.0 ? -1.0 : 0.0);
  const double a = e.a, b2 = e.b * e.b;
  if (e.kind == EnvelopeKind::Bright) {
    const double s = 1.0 / std::cosh(e.b * x);
    const double d2 = a * b2 * (s - 2.0 * s * s * s);
    const double u = a * s;
    return d2 + sg * c1 * u + 2.0 * c3 * u * u * u;
  }
  const double t = std::tanh(e.b * x);
  const double d2 = -2.0 * a * b2 * (t - t * t * t);
  const double u = a * t;
  return d2 + sg * c1 * u + 2.0 * c3 * u * u * u;
}

R11Coeffs r11_coeffs(const PhysicalParams& p) {
  const double rho = p.rho, h = p.h;
  const double g3 = gamma3(p), g4 = gamma4(p);
  const double g32 = g3 * std::sqrt(g3);
  const double kap = rho - 1.0 / (h * h);
  const double e = rho + 1.0 / (h * h * h);
  const double r1 = (rho - 1.0) * (rho - 1.0);
  R11Coeffs c;
  c.c1_00 = kap / (2.0 * g32);
  c.c2_00 = (3.0 * kap * g4 / g3 + (rho - 1.0) / 3.0) / (5.0 * g32);
  c.c2_10 = -1.0 / (6.0 * g3);
  c.c1_01 = -1.0 / (2.0 * g3);
  c.c1_10 = 0.0;
  c.c1_20 = 1.0 / (18.0 * g3 * g3);
  c.e1_00_main = e / (g3 * g3) + 2.0 * r1 / (225.0 * g3 * g3 * g3);
  c.cubic_c = 3.0 / (4.0 * std::sqrt(g3) * std::sqrt(e + 2.0 * r1 / (225.0 * g3)));
  return c;
}

O2Coeffs o2_coeffs(const PhysicalParams& p, double beta) {
  const double g5 = gamma5(p, beta);
  const double h = p.h;
  return {0.5, -1.0 / (2.0 * g5), (p.rho - 1.0 / (h * h)) / (2.0 * g5 * std::sqrt(g5)),
          (p.rho + 1.0 / (h * h * h)) / (g5 * g5)};
}

}  // namespace wavestrata
