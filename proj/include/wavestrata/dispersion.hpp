#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "wavestrata/core.hpp"

namespace wavestrata {

using cplx = std::complex<double>;

struct DispersionContext {
  PhysicalParams params;
  BifurcationPoint point;
};

enum class Axis { Real, Imaginary, OffAxis };
const char* axis_name(Axis a);

struct LocatedRoot {
  cplx location;
  int multiplicity = 1;
  Axis axis = Axis::Real;
  bool flagged = false;  // multiplicity above 2
};

enum class SignatureLabel {
  TwoRealPairs,
  TwoImagPairs,
  ComplexQuartet,
  MixedRealImag,
  RealDoublePair,
  ImagDoublePair,
  ZeroDoublePlusRealPair,
  Other
};
const char* label_name(SignatureLabel l);

struct SpectralSignature {
  SignatureLabel label = SignatureLabel::Other;
  std::vector<LocatedRoot> roots;  // nonnegative representatives
  double strip_halfwidth = 0.0;
  double im_halfheight = 0.0;
  int contour_count = 0;  // argument-principle count over the strip box
};

// F(lambda) = lambda (rho cot lambda + cot h lambda) - alpha + beta lambda^2.
// order 1 gives dF/dlambda.
cplx disp_eval(cplx lambda, int order, const DispersionContext& ctx);

// F restricted to the axes as real functions, with derivatives up to order 2.
//   real axis:       x -> F(x)
//   imaginary axis:  k -> F(ik) = k (rho coth k + coth hk) - alpha - beta k^2
double disp_real(double x, int order, const DispersionContext& ctx);
double disp_imag(double k, int order, const DispersionContext& ctx);

double default_strip_halfwidth(const PhysicalParams& p);
double imag_scan_bound(const DispersionContext& ctx);

// Roots on the nonnegative half of an axis, sorted by modulus.  A root at 0
// is reported once with its multiplicity (2 when alpha = alpha0).
std::vector<LocatedRoot> axis_roots(Axis axis, const DispersionContext& ctx, double halfwidth,
                                    double scan_resolution);

// Number of zeros (with multiplicity) in [-a,a] x [-b,b].
int count_roots_rect(const DispersionContext& ctx, double re_halfwidth, double im_halfheight,
                     double tol = 1e-10);

// Zeros strictly inside the open first quadrant of the box, Newton-polished.
std::vector<cplx> off_axis_roots(const DispersionContext& ctx, double re_halfwidth,
                                 double im_halfheight);

SpectralSignature spectral_signature(const DispersionContext& ctx,
                                     std::optional<double> strip_halfwidth = std::nullopt);

// Total multiplicity of the full symmetric root set represented by `roots`.
int full_multiplicity(const std::vector<LocatedRoot>& roots);

}  // namespace wavestrata
