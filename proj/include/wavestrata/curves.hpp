#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wavestrata/core.hpp"
#include "wavestrata/dispersion.hpp"

namespace wavestrata {

enum class CurveId { C1, C2, C3 };
const char* curve_name(CurveId id);
CurveId parse_curve(const std::string& s);

struct CurvePoint {
  CurveId id = CurveId::C1;
  double k0 = 0.0;  // wavenumber, or beta for C3
  BifurcationPoint point{};
  double res_f = 0.0;   // |F| at the double root
  double res_fp = 0.0;  // |F'| at the double root
};

// (beta - beta0, alpha - alpha0) along C1 or C2 at wavenumber k, without the
// cancellation of a direct subtraction.
std::pair<double, double> curve_offset(CurveId id, double k, const PhysicalParams& p);

CurvePoint curve_point(CurveId id, double k0_or_beta, const PhysicalParams& p);

enum class HoldFixed { Beta, Alpha };

// Newton on (F, F') at the curve's designated root.  The seed must already
// have residuals below 1e-2.
CurvePoint refine_double_root(const CurvePoint& seed, const PhysicalParams& p,
                              HoldFixed hold = HoldFixed::Beta);

std::vector<CurvePoint> sample_curve(CurveId id, double k_min, double k_max, int n,
                                     const PhysicalParams& p, int jobs = 1);

struct TaylorFit {
  double beta_coeff;   // leading coefficient of (beta_hat - beta0)/k^2
  double alpha_coeff;  // leading coefficient of (alpha_hat - alpha0)/k^4
};

TaylorFit taylor_check(const PhysicalParams& p);

}  // namespace wavestrata
