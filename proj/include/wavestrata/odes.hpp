#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavestrata/core.hpp"

namespace wavestrata {

enum class SystemKind { R11Quad, R11Cubic, O2, O2Critical, QuarticGeneric };
const char* system_kind_name(SystemKind k);

// Truncated reduced system.  R11 states are (Q1, P1, Q2, P2), O2 states are
// (Q, P) and the quartic uses (u, u', u'', u''').
struct ReducedSystem {
  SystemKind kind = SystemKind::QuarticGeneric;
  double delta = 0.0;
  double kappa = 0.0;
  PhysicalParams params{0.0, 1.0};
  double beta = 0.0;  // O2 kinds only
  // quartic u'''' + P u'' + u - q u^2 - c u^3 = 0
  double P = -2.0, q = 1.0, c = 0.0;

  // derived
  double g3 = 0.0, g5 = 0.0;
  double quad = 0.0;   // coefficient of the quadratic term
  double cubic = 0.0;  // coefficient of the cubic term

  int dim() const;
};

ReducedSystem make_r11(const PhysicalParams& p, double delta);
ReducedSystem make_r11_cubic(const PhysicalParams& p, double delta, double kappa);
ReducedSystem make_o2(const PhysicalParams& p, double beta);
ReducedSystem make_o2_critical(const PhysicalParams& p, double beta, double kappa);
ReducedSystem make_quartic(double P, double q, double c);

Eigen::VectorXd reduced_rhs(const ReducedSystem& sys, const Eigen::VectorXd& y);
double reduced_energy(const ReducedSystem& sys, const Eigen::VectorXd& y);
Eigen::VectorXd reduced_reverser(const ReducedSystem& sys, const Eigen::VectorXd& y);
Eigen::MatrixXd reduced_jacobian_at_zero(const ReducedSystem& sys);

struct Trajectory {
  std::vector<double> x;
  std::vector<Eigen::VectorXd> y;
};

// Classical RK4 with a fixed step; T may be negative.
Trajectory integrate(const ReducedSystem& sys, const Eigen::VectorXd& y0, double T, double dt,
                     double x0 = 0.0);

enum class SymmetryTag { Even, None };
enum class SignTag { Positive, Negative, SignChanging };
const char* symmetry_tag_name(SymmetryTag t);
const char* sign_tag_name(SignTag t);

struct HomoclinicOptions {
  double L = 30.0;
  double tol = 1e-10;
  double dx = 0.01;                                  // output spacing
  std::optional<std::pair<double, double>> guess;  // (u(0), u''(0))
};

struct HomoclinicOrbit {
  double P = 0.0, q = 0.0, c = 0.0, L = 0.0;
  std::vector<double> x;              // on [-L, L]
  std::vector<Eigen::Vector4d> y;     // (u, u', u'', u''')
  double max_residual = 0.0;
  double energy_deviation = 0.0;
  double end_decay = 0.0;
  double newton_residual = 0.0;
  SymmetryTag symmetry_tag = SymmetryTag::None;
  SignTag sign_tag = SignTag::SignChanging;

  const Eigen::Vector4d& at_zero() const { return y[y.size() / 2]; }
};

// Even homoclinic orbit of the quartic by reversible multiple shooting.
HomoclinicOrbit solve_homoclinic(double P, double q, double c, const HomoclinicOptions& opts = {});

// (u(0), u''(0)) of the second-order reduction, used when no guess is given.
std::pair<double, double> default_homoclinic_guess(double P, double q, double c);

HomoclinicOrbit negate(const HomoclinicOrbit& o);

// Checks the orbit against the ODE; fills residual, energy and tags.
void orbit_diagnostics(HomoclinicOrbit& o);

double transversality_l(const HomoclinicOrbit& orbit);

enum class ExplicitKind { Plain, CriticalPlus, CriticalMinus };

// Closed-form homoclinic of the truncated O2 systems, with its analytic
// X-derivative returned by explicit_o2_derivative.
Eigen::Vector2d explicit_o2(ExplicitKind kind, double X, const PhysicalParams& p, double beta,
                            double kappa = 0.0);
Eigen::Vector2d explicit_o2_derivative(ExplicitKind kind, double X, const PhysicalParams& p,
                                       double beta, double kappa = 0.0);

enum class ProfileCase { O2, O2CriticalPlus, O2CriticalMinus, R11, R11Critical, HopfBright, HopfDark };
const char* profile_case_name(ProfileCase c);
ProfileCase parse_profile_case(const std::string& s);

struct ProfileParams {
  PhysicalParams p{0.0, 1.0};
  double beta = 0.0;     // O2 cases
  double delta = 0.0;
  double kappa = 0.0;    // critical cases
  double epsilon = 0.1;  // R11 cases
  double k = 1.0;        // Hopf cases
  double scale = 1.0;    // multiplies x and eta
};

struct Profile {
  std::vector<double> x, eta;
  double remainder_order = 0.0;  // power of the small parameter in the dropped remainder
};

Profile physical_profile(ProfileCase c, const std::vector<double>& xgrid, const ProfileParams& pp);

}  // namespace wavestrata
