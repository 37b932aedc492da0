#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace wavestrata {

enum class ErrorCode {
  RhoOutOfRange,
  DepthNonpositive,
  BetaBelowBeta0,
  NearPole,
  ResolutionTooCoarse,
  ContourUnresolved,
  OutOfDomain,
  ResidualTooLarge,
  NoConvergence,
  GridMismatch,
  BoundaryViolation,
  DenominatorDegenerate,
  CaseMismatch,
  SingularBracket,
  SignMismatch,
  DimensionMismatch,
  NonHyperbolic,
  CriticalRatioDegenerate,
  NotSingleSigned,
  NotSymmetric,
  IoError,
  NonFinite,
  InvalidArgument
};

const char* error_name(ErrorCode code);

// True for codes caused by bad input rather than by a numerical method failing.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct PhysicalParams {
  double rho;
  double h;
};

struct BifurcationPoint {
  double beta;
  double alpha;
};

struct ScalarInvariants {
  double beta0;
  double alpha0;
  double gamma3;
  double gamma4;
  std::optional<double> gamma5;
  std::optional<double> bigA;
};

PhysicalParams validate_params(double rho, double h);

// (beta0, alpha0) where the three bifurcation curves meet.
BifurcationPoint codim2_point(const PhysicalParams& p);

ScalarInvariants scalar_invariants(const PhysicalParams& p,
                                   std::optional<double> beta = std::nullopt);

inline double beta0(const PhysicalParams& p) { return (p.rho + p.h) / 3.0; }
inline double alpha0(const PhysicalParams& p) { return p.rho + 1.0 / p.h; }
inline double gamma3(const PhysicalParams& p) { return (p.rho + p.h * p.h * p.h) / 45.0; }
inline double gamma4(const PhysicalParams& p) {
  const double h2 = p.h * p.h;
  return 2.0 * (p.rho + h2 * h2 * p.h) / 945.0;
}
double gamma5(const PhysicalParams& p, double beta);

// Even elementary functions with their small-argument series built in.
//   xcot(x)  = x cot x,             xcoth(x) = x coth x
//   gtrig(x) = (x - sin x cos x) / (2 x sin^2 x)
//   ghyp(x)  = (sinh x cosh x - x) / (2 x sinh^2 x)
// The *_m variants drop the leading terms so that differences near 0 keep
// full relative accuracy:
//   xcot_m(x)  = x cot x - 1 + x^2/3,   xcoth_m(x) = x coth x - 1 - x^2/3
//   gtrig_m(x) = gtrig(x) - 1/3,        ghyp_m(x)  = ghyp(x) - 1/3
double xcot(double x);
double xcoth(double x);
double xcot_m(double x);
double xcoth_m(double x);
double gtrig(double x);
double ghyp(double x);
double gtrig_m(double x);
double ghyp_m(double x);
// First and second derivatives of x cot x and x coth x.
double dxcot(double x);
double d2xcot(double x);
double dxcoth(double x);
double d2xcoth(double x);

}  // namespace wavestrata
