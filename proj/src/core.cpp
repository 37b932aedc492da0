#include "wavestrata/core.hpp"

#include <array>
#include <cmath>

namespace wavestrata {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::RhoOutOfRange: return "RhoOutOfRange";
    case ErrorCode::DepthNonpositive: return "DepthNonpositive";
    case ErrorCode::BetaBelowBeta0: return "BetaBelowBeta0";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::ContourUnresolved: return "ContourUnresolved";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::BoundaryViolation: return "BoundaryViolation";
    case ErrorCode::DenominatorDegenerate: return "DenominatorDegenerate";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::SingularBracket: return "SingularBracket";
    case ErrorCode::SignMismatch: return "SignMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonHyperbolic: return "NonHyperbolic";
    case ErrorCode::CriticalRatioDegenerate: return "CriticalRatioDegenerate";
    case ErrorCode::NotSingleSigned: return "NotSingleSigned";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::RhoOutOfRange:
    case ErrorCode::DepthNonpositive:
    case ErrorCode::BetaBelowBeta0:
    case ErrorCode::OutOfDomain:
    case ErrorCode::CaseMismatch:
    case ErrorCode::SignMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NonHyperbolic:
    case ErrorCode::CriticalRatioDegenerate:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

PhysicalParams validate_params(double rho, double h) {
  if (!(rho >= 0.0 && rho < 1.0))
    throw Error(ErrorCode::RhoOutOfRange, "rho must lie in [0, 1)");
  if (!(h > 0.0) || !std::isfinite(h))
    throw Error(ErrorCode::DepthNonpositive, "h must be positive");
  return {rho, h};
}

BifurcationPoint codim2_point(const PhysicalParams& p) { return {beta0(p), alpha0(p)}; }

double gamma5(const PhysicalParams& p, double beta) {
  const double g = beta - beta0(p);
  if (!(g > 0.0)) throw Error(ErrorCode::BetaBelowBeta0, "beta must exceed beta0");
  return g;
}

ScalarInvariants scalar_invariants(const PhysicalParams& p, std::optional<double> beta) {
  ScalarInvariants s{beta0(p), alpha0(p), gamma3(p), gamma4(p), std::nullopt, std::nullopt};
  if (beta) {
    const double g5 = gamma5(p, *beta);
    s.gamma5 = g5;
    s.bigA = g5 * std::sqrt(g5) * (1.0 / (p.h * p.h) - p.rho);
  }
  return s;
}

namespace {

constexpr double kSeriesCut = 0.25;

// Taylor coefficients in powers of x^2.
constexpr std::array<double, 8> kXcot = {
    1.0, -1.0 / 3.0, -1.0 / 45.0, -2.0 / 945.0, -1.0 / 4725.0, -2.0 / 93555.0,
    -1382.0 / 638512875.0, -4.0 / 18243225.0};
constexpr std::array<double, 8> kGtrig = {
    1.0 / 3.0, 2.0 / 45.0, 2.0 / 315.0, 4.0 / 4725.0, 2.0 / 18711.0,
    2764.0 / 212837625.0, 4.0 / 2606175.0, 28936.0 / 162820783125.0};

// sum_{n>=from} c_n x^{2n}; hyp flips the sign of odd n
double series(const std::array<double, 8>& c, double x, int from, bool hyp) {
  const double x2 = x * x;
  double acc = 0.0;
  for (int n = 7; n >= from; --n) {
    const double cn = (hyp && (n % 2 == 1)) ? -c[n] : c[n];
    acc = acc * x2 + cn;
  }
  return acc * std::pow(x2, from);
}

double dseries(const std::array<double, 8>& c, double x, bool hyp) {
  double acc = 0.0;
  const double x2 = x * x;
  for (int n = 7; n >= 1; --n) {
    const double cn = (hyp && (n % 2 == 1)) ? -c[n] : c[n];
    acc = acc * x2 + 2.0 * n * cn;
  }
  return acc * x;
}

double d2series(const std::array<double, 8>& c, double x, bool hyp) {
  double acc = 0.0;
  const double x2 = x * x;
  for (int n = 7; n >= 1; --n) {
    const double cn = (hyp && (n % 2 == 1)) ? -c[n] : c[n];
    acc = acc * x2 + 2.0 * n * (2.0 * n - 1.0) * cn;
  }
  return acc;
}

}  // namespace

double xcot(double x) {
  if (std::abs(x) < kSeriesCut) return series(kXcot, x, 0, false);
  return x * std::cos(x) / std::sin(x);
}

double xcoth(double x) {
  if (std::abs(x) < kSeriesCut) return series(kXcot, x, 0, true);
  return x / std::tanh(x);
}

double xcot_m(double x) {
  if (std::abs(x) < kSeriesCut) return series(kXcot, x, 2, false);
  return xcot(x) - 1.0 + x * x / 3.0;
}

double xcoth_m(double x) {
  if (std::abs(x) < kSeriesCut) return series(kXcot, x, 2, true);
  return xcoth(x) - 1.0 - x * x / 3.0;
}

double dxcot(double x) {
  if (std::abs(x) < kSeriesCut) return dseries(kXcot, x, false);
  const double s = std::sin(x);
  return std::cos(x) / s - x / (s * s);
}

double d2xcot(double x) {
  if (std::abs(x) < kSeriesCut) return d2series(kXcot, x, false);
  const double s = std::sin(x);
  return 2.0 * (xcot(x) - 1.0) / (s * s);
}

double dxcoth(double x) {
  if (std::abs(x) < kSeriesCut) return dseries(kXcot, x, true);
  const double s = std::sinh(x);
  return 1.0 / std::tanh(x) - x / (s * s);
}

double d2xcoth(double x) {
  if (std::abs(x) < kSeriesCut) return d2series(kXcot, x, true);
  const double s = std::sinh(x);
  return 2.0 * (xcoth(x) - 1.0) / (s * s);
}

double gtrig(double x) {
  if (std::abs(x) < kSeriesCut) return series(kGtrig, x, 0, false);
  return -dxcot(x) / (2.0 * x);
}

double ghyp(double x) {
  if (std::abs(x) < kSeriesCut) return series(kGtrig, x, 0, true);
  return dxcoth(x) / (2.0 * x);
}

double gtrig_m(double x) {
  if (std::abs(x) < kSeriesCut) return series(kGtrig, x, 1, false);
  return gtrig(x) - 1.0 / 3.0;
}

double ghyp_m(double x) {
  if (std::abs(x) < kSeriesCut) return series(kGtrig, x, 1, true);
  return ghyp(x) - 1.0 / 3.0;
}

}  // namespace wavestrata
