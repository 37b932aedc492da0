#pragma once

#include <optional>

#include "wavestrata/core.hpp"

namespace wavestrata {

struct HopfCoeffs {
  double k = 0.0;
  double c1 = 0.0;
  double c3 = 0.0;
  double gamma1 = 0.0;
  double q2 = 0.0;  // 2 gamma1^2 c3
  double q1 = 0.0;  // 2 gamma1 c3
};

double hopf_c1(double k, const PhysicalParams& p);

// c3 at the Hopf point on C2 with wavenumber k.  The overload taking pt uses
// its (beta, alpha); the two-argument form builds the offsets from the curve
// directly, which keeps full accuracy as k -> 0.
double hopf_c3(double k, const PhysicalParams& p);
double hopf_c3(double k, const PhysicalParams& p, const BifurcationPoint& pt);

// 2 gamma1^2 c3, which does not depend on gamma1.
double hopf_c3_scaled(double k, const PhysicalParams& p);

HopfCoeffs hopf_coeffs(double k, const PhysicalParams& p);

struct LaurentCoeffs {
  double a1;
  std::optional<double> a3;  // only at rho = 1/h^2
};

LaurentCoeffs laurent_coeffs(const PhysicalParams& p);

enum class HopfClass { Bright, BrightMultipulseFamily, Dark, Undetermined };
const char* hopf_class_name(HopfClass c);

// Bright covers both the pair of symmetric pulses and the multipulse families
// that come with them; BrightMultipulseFamily is only reported on request.
HopfClass classify_hopf(double delta, double c3, bool multipulse = false);

enum class EnvelopeKind { Bright, Dark };

struct Envelope {
  EnvelopeKind kind;
  double a;  // amplitude
  double b;  // inverse width
};

Envelope nls_envelope(EnvelopeKind kind, double delta, double c1, double c3);

// A'' + sgn(delta) c1 A + 2 c3 A^3 for the closed-form envelope at x.
double nls_residual(const Envelope& e, double delta, double c1, double c3, double x);
double envelope_value(const Envelope& e, double x);

struct R11Coeffs {
  double c1_00, c2_00, c2_10, c1_01, c1_10, c1_20;
  double e1_00_main;  // without the (rho - 1/h^2) D correction
  double cubic_c;
};

R11Coeffs r11_coeffs(const PhysicalParams& p);

struct O2Coeffs {
  double c02_0, c20_1, c30_0, c40_0;
};

O2Coeffs o2_coeffs(const PhysicalParams& p, double beta);

}  // namespace wavestrata
