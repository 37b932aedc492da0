#include "wavestrata/odes.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cctype>
#include <cmath>

#include "wavestrata/normalform.hpp"
#include "wavestrata/operator.hpp"

namespace wavestrata {

namespace odeint = boost::numeric::odeint;

const char* system_kind_name(SystemKind k) {
  switch (k) {
    case SystemKind::R11Quad: return "R11_QUAD";
    case SystemKind::R11Cubic: return "R11_CUBIC";
    case SystemKind::O2: return "O2";
    case SystemKind::O2Critical: return "O2_CRITICAL";
    case SystemKind::QuarticGeneric: return "QUARTIC_GENERIC";
  }
  return "QUARTIC_GENERIC";
}

int ReducedSystem::dim() const {
  return kind == SystemKind::O2 || kind == SystemKind::O2Critical ? 2 : 4;
}

ReducedSystem make_r11(const PhysicalParams& p, double delta) {
  ReducedSystem s;
  s.kind = SystemKind::R11Quad;
  s.params = p;
  s.delta = delta;
  s.g3 = gamma3(p);
  s.quad = 3.0 * (p.rho - 1.0 / (p.h * p.h)) / (2.0 * s.g3 * std::sqrt(s.g3));
  return s;
}

ReducedSystem make_r11_cubic(const PhysicalParams& p, double delta, double kappa) {
  ReducedSystem s;
  s.kind = SystemKind::R11Cubic;
  s.params = p;
  s.delta = delta;
  s.kappa = kappa;
  s.g3 = gamma3(p);
  const double r1 = p.rho - 1.0;
  const double ep = p.rho + 1.0 / (p.h * p.h * p.h) + 2.0 * r1 * r1 / (225.0 * s.g3);
  s.quad = 3.0 * kappa / (2.0 * s.g3 * std::sqrt(s.g3));
  s.cubic = 4.0 * ep / (s.g3 * s.g3);
  return s;
}

ReducedSystem make_o2(const PhysicalParams& p, double beta) {
  ReducedSystem s;
  s.kind = SystemKind::O2;
  s.params = p;
  s.beta = beta;
  s.g5 = gamma5(p, beta);
  s.quad = 1.5 * s.g5 * std::sqrt(s.g5) * (1.0 / (p.h * p.h) - p.rho);
  return s;
}

ReducedSystem make_o2_critical(const PhysicalParams& p, double beta, double kappa) {
  ReducedSystem s;
  s.kind = SystemKind::O2Critical;
  s.params = p;
  s.beta = beta;
  s.kappa = kappa;
  s.g5 = gamma5(p, beta);
  s.quad = 3.0 * kappa / (2.0 * s.g5);
  s.cubic = 4.0 * (p.rho + 1.0 / (p.h * p.h * p.h)) / (s.g5 * s.g5);
  return s;
}

ReducedSystem make_quartic(double P, double q, double c) {
  ReducedSystem s;
  s.kind = SystemKind::QuarticGeneric;
  s.P = P;
  s.q = q;
  s.c = c;
  return s;
}

namespace {

void check_dim(const ReducedSystem& sys, const Eigen::VectorXd& y) {
  if (y.size() != sys.dim())
    throw Error(ErrorCode::DimensionMismatch, std::string(system_kind_name(sys.kind)) + " state has dimension " +
                                                  std::to_string(sys.dim()));
}

void rhs_raw(const ReducedSystem& sys, const double* y, double* f) {
  switch (sys.kind) {
    case SystemKind::R11Quad:
    case SystemKind::R11Cubic: {
      const double d = 1.0 + sys.delta;
      const double q1 = y[0], p1 = y[1], q2 = y[2], p2 = y[3];
      f[0] = -p1 + sys.quad * p1 * p1 + sys.cubic * p1 * p1 * p1 + 2.0 * d * p2 / 3.0 + 4.0 * d * d * p1 / 9.0;
      f[1] = q2;
      f[2] = p2 + 2.0 * d * p1 / 3.0;
      f[3] = q1 + 2.0 * d * q2 / 3.0;
      return;
    }
    case SystemKind::O2:
    case SystemKind::O2Critical: {
      const double q = y[0];
      f[0] = y[1];
      f[1] = q + sys.quad * q * q - sys.cubic * q * q * q;
      return;
    }
    case SystemKind::QuarticGeneric: {
      const double u = y[0];
      f[0] = y[1];
      f[1] = y[2];
      f[2] = y[3];
      f[3] = -sys.P * y[2] - u + sys.q * u * u + sys.c * u * u * u;
      return;
    }
  }
}

}  // namespace

Eigen::VectorXd reduced_rhs(const ReducedSystem& sys, const Eigen::VectorXd& y) {
  check_dim(sys, y);
  Eigen::VectorXd f(y.size());
  rhs_raw(sys, y.data(), f.data());
  return f;
}

double reduced_energy(const ReducedSystem& sys, const Eigen::VectorXd& y) {
  check_dim(sys, y);
  switch (sys.kind) {
    case SystemKind::R11Quad:
    case SystemKind::R11Cubic: {
      const double d = 1.0 + sys.delta;
      const double q1 = y(0), p1 = y(1), q2 = y(2), p2 = y(3);
      return 0.5 * p2 * p2 - q1 * q2 - d / 3.0 * (q2 * q2 - 2.0 * p1 * p2) - 0.5 * p1 * p1 +
             2.0 * d * d * p1 * p1 / 9.0 + sys.quad / 3.0 * p1 * p1 * p1 + sys.cubic / 4.0 * p1 * p1 * p1 * p1;
    }
    case SystemKind::O2:
    case SystemKind::O2Critical: {
      const double q = y(0), p = y(1);
      return 0.5 * p * p - 0.5 * q * q - sys.quad / 3.0 * q * q * q + sys.cubic / 4.0 * q * q * q * q;
    }
    case SystemKind::QuarticGeneric: {
      const double u = y(0);
      return y(1) * y(3) - 0.5 * y(2) * y(2) + 0.5 * sys.P * y(1) * y(1) + 0.5 * u * u -
             sys.q * u * u * u / 3.0 - sys.c * u * u * u * u / 4.0;
    }
  }
  return 0.0;
}

Eigen::VectorXd reduced_reverser(const ReducedSystem& sys, const Eigen::VectorXd& y) {
  check_dim(sys, y);
  Eigen::VectorXd r = y;
  switch (sys.kind) {
    case SystemKind::R11Quad:
    case SystemKind::R11Cubic:
      r(0) = -r(0);
      r(2) = -r(2);
      break;
    case SystemKind::O2:
    case SystemKind::O2Critical: r(1) = -r(1); break;
    case SystemKind::QuarticGeneric:
      r(1) = -r(1);
      r(3) = -r(3);
      break;
  }
  return r;
}

Eigen::MatrixXd reduced_jacobian_at_zero(const ReducedSystem& sys) {
  ReducedSystem lin = sys;
  lin.quad = lin.cubic = lin.q = lin.c = 0.0;
  const int n = sys.dim();
  Eigen::MatrixXd J(n, n);
  for (int j = 0; j < n; ++j) J.col(j) = reduced_rhs(lin, Eigen::VectorXd::Unit(n, j));
  return J;
}

Trajectory integrate(const ReducedSystem& sys, const Eigen::VectorXd& y0, double T, double dt, double x0) {
  check_dim(sys, y0);
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "integrate needs dt > 0");
  using state = std::vector<double>;
  const long n = std::max<long>(1, std::lround(std::abs(T) / dt));
  const double step = T / static_cast<double>(n);
  auto f = [&sys](const state& y, state& dy, double) { rhs_raw(sys, y.data(), dy.data()); };

  odeint::runge_kutta4<state> rk;
  state y(y0.data(), y0.data() + y0.size());
  Trajectory tr;
  tr.x.reserve(n + 1);
  tr.y.reserve(n + 1);
  tr.x.push_back(x0);
  tr.y.push_back(y0);
  for (long i = 1; i <= n; ++i) {
    rk.do_step(f, y, x0 + (i - 1) * step, step);
    tr.x.push_back(x0 + i * step);
    tr.y.push_back(Eigen::Map<const Eigen::VectorXd>(y.data(), y.size()));
  }
  return tr;
}

const char* symmetry_tag_name(SymmetryTag t) { return t == SymmetryTag::Even ? "EVEN" : "NONE"; }

const char* sign_tag_name(SignTag t) {
  switch (t) {
    case SignTag::Positive: return "POSITIVE";
    case SignTag::Negative: return "NEGATIVE";
    case SignTag::SignChanging: return "SIGN_CHANGING";
  }
  return "SIGN_CHANGING";
}

// ---------------------------------------------------------------------------
// reversible shooting for u'''' + P u'' + u - q u^2 - c u^3 = 0

namespace {

using V4 = std::array<double, 4>;

struct Quartic {
  double P, q, c;
  void operator()(const V4& y, V4& f, double) const {
    const double u = y[0];
    f = {y[1], y[2], y[3], -P * y[2] - u + q * u * u + c * u * u * u};
  }
};

constexpr double kShootStep = 0.01;

Eigen::Vector4d flow(const Quartic& sys, const Eigen::Vector4d& y0, double x0, double x1,
                     std::vector<Eigen::Vector4d>* samples = nullptr, int nsteps = 0) {
  const int n = nsteps > 0 ? nsteps : std::max(1, static_cast<int>(std::ceil((x1 - x0) / kShootStep - 1e-9)));
  const double h = (x1 - x0) / n;
  odeint::runge_kutta_fehlberg78<V4> st;
  V4 y{y0(0), y0(1), y0(2), y0(3)};
  if (samples) samples->push_back(y0);
  for (int i = 0; i < n; ++i) {
    st.do_step(sys, y, x0 + i * h, h);
    if (samples) samples->emplace_back(y[0], y[1], y[2], y[3]);
  }
  return {y[0], y[1], y[2], y[3]};
}

Eigen::Vector4d even_state(double u0, double u2) { return {u0, 0.0, u2, 0.0}; }

// Two rows whose kernel is the stable subspace of the linearisation at 0.
Eigen::Matrix<double, 2, 4> stable_rows(double P) {
  Eigen::Matrix4d A;
  A << 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, 0, -P, 0;
  // lambda^4 + P lambda^2 + 1 = (lambda^2 + a lambda + 1)(lambda^2 - a lambda + 1)
  const double a = std::sqrt(2.0 - P);
  const Eigen::Matrix4d s = A * A + a * A + Eigen::Matrix4d::Identity();
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(s, Eigen::ComputeFullU);
  return svd.matrixU().leftCols<2>().transpose() * s;
}

// Single shooting on [0, L] for (u0, u2); damped Newton, FD Jacobian.
Eigen::Vector2d shoot_single(const Quartic& sys, const Eigen::Matrix<double, 2, 4>& C, Eigen::Vector2d z,
                             double L) {
  auto res = [&](const Eigen::Vector2d& v) -> Eigen::Vector2d {
    return C * flow(sys, even_state(v(0), v(1)), 0.0, L);
  };
  Eigen::Vector2d r = res(z);
  for (int it = 0; it < 40 && r.norm() > 1e-13; ++it) {
    Eigen::Matrix2d J;
    for (int j = 0; j < 2; ++j) {
      const double e = 1e-7 * std::max(1.0, std::abs(z(j)));
      Eigen::Vector2d zp = z, zm = z;
      zp(j) += e;
      zm(j) -= e;
      J.col(j) = (res(zp) - res(zm)) / (2.0 * e);
    }
    const Eigen::Vector2d dz = J.fullPivLu().solve(-r);
    if (!dz.allFinite()) break;
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, t *= 0.5) {
      const Eigen::Vector2d zt = z + t * dz;
      const Eigen::Vector2d rt = res(zt);
      if (rt.allFinite() && rt.norm() < r.norm()) {
        z = zt;
        r = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return z;
}

struct MultiShoot {
  Eigen::Vector2d z;
  std::vector<Eigen::Vector4d> nodes;  // nodes[0] = even_state(z)
  double residual = 0.0;
};

MultiShoot shoot_multiple(const Quartic& sys, const Eigen::Matrix<double, 2, 4>& C, MultiShoot ms,
                          const std::vector<double>& xs, double tol) {
  const int m = static_cast<int>(xs.size()) - 1;  // number of segments
  const int nu = 2 + 4 * (m - 1);
  auto unpack = [&](const Eigen::VectorXd& v, MultiShoot& s) {
    s.z = v.head<2>();
    s.nodes[0] = even_state(s.z(0), s.z(1));
    for (int j = 1; j < m; ++j) s.nodes[j] = v.segment<4>(2 + 4 * (j - 1));
  };
  auto pack = [&](const MultiShoot& s) {
    Eigen::VectorXd v(nu);
    v.head<2>() = s.z;
    for (int j = 1; j < m; ++j) v.segment<4>(2 + 4 * (j - 1)) = s.nodes[j];
    return v;
  };
  auto residual = [&](const MultiShoot& s) {
    Eigen::VectorXd r(nu);
    for (int j = 0; j + 1 < m; ++j) r.segment<4>(4 * j) = flow(sys, s.nodes[j], xs[j], xs[j + 1]) - s.nodes[j + 1];
    r.tail<2>() = C * flow(sys, s.nodes[m - 1], xs[m - 1], xs[m]);
    return r;
  };

  Eigen::VectorXd v = pack(ms);
  Eigen::VectorXd r = residual(ms);
  for (int it = 0; it < 30; ++it) {
    if (!r.allFinite()) break;
    if (r.lpNorm<Eigen::Infinity>() < tol) {
      ms.residual = r.lpNorm<Eigen::Infinity>();
      return ms;
    }
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(nu, nu);
    for (int j = 0; j < m; ++j) {
      // derivative of the segment flow with respect to its start node
      const int ncol = j == 0 ? 2 : 4;
      const int col0 = j == 0 ? 0 : 2 + 4 * (j - 1);
      const int row0 = 4 * j;
      for (int a = 0; a < ncol; ++a) {
        Eigen::Vector4d dir = Eigen::Vector4d::Zero();
        dir(j == 0 ? 2 * a : a) = 1.0;
        const double e = 1e-7 * std::max(1.0, ms.nodes[j].cwiseAbs().maxCoeff());
        const Eigen::Vector4d d = (flow(sys, ms.nodes[j] + e * dir, xs[j], xs[j + 1]) -
                                   flow(sys, ms.nodes[j] - e * dir, xs[j], xs[j + 1])) /
                                  (2.0 * e);
        if (j + 1 < m)
          J.block<4, 1>(row0, col0 + a) = d;
        else
          J.block<2, 1>(row0, col0 + a) = C * d;
      }
      if (j + 1 < m) J.block<4, 4>(row0, 2 + 4 * j) = -Eigen::Matrix4d::Identity();
    }
    const Eigen::VectorXd dv = J.partialPivLu().solve(-r);
    if (!dv.allFinite()) break;
    v += dv;
    unpack(v, ms);
    r = residual(ms);
  }
  throw Error(ErrorCode::NoConvergence, "multiple-shooting Newton did not reach the tolerance");
}

HomoclinicOrbit solve_once(double P, double q, double c, const HomoclinicOptions& opts, double L) {
  const Quartic sys{P, q, c};
  const auto C = stable_rows(P);
  const auto [g0, g2] = opts.guess ? *opts.guess : default_homoclinic_guess(P, q, c);
  Eigen::Vector2d z(g0, g2);

  // continuation in the shooting length keeps single shooting well posed
  constexpr double kCont = 10.0;
  for (double Ls : {2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0}) z = shoot_single(sys, C, z, std::min(Ls, L));

  const int m = std::max(1, static_cast<int>(std::ceil(L / 2.0 - 1e-9)));
  const double seg = L / m;
  std::vector<double> xs(m + 1);
  for (int j = 0; j <= m; ++j) xs[j] = seg * j;
  xs[m] = L;

  MultiShoot ms;
  ms.z = z;
  ms.nodes.assign(m, Eigen::Vector4d::Zero());
  ms.nodes[0] = even_state(z(0), z(1));
  for (int j = 1; j < m; ++j)
    if (xs[j] <= kCont + 1e-9) ms.nodes[j] = flow(sys, ms.nodes[j - 1], xs[j - 1], xs[j]);
  ms = shoot_multiple(sys, C, ms, xs, opts.tol);

  const int nseg = std::max(1, static_cast<int>(std::lround(seg / opts.dx)));
  std::vector<Eigen::Vector4d> half;
  half.reserve(m * nseg + 1);
  for (int j = 0; j < m; ++j) {
    std::vector<Eigen::Vector4d> s;
    flow(sys, ms.nodes[j], xs[j], xs[j + 1], &s, nseg);
    half.insert(half.end(), s.begin() + (j == 0 ? 0 : 1), s.end());
  }
  const int nh = static_cast<int>(half.size()) - 1;
  const double hx = L / nh;

  HomoclinicOrbit o;
  o.P = P;
  o.q = q;
  o.c = c;
  o.L = L;
  o.newton_residual = ms.residual;
  o.x.resize(2 * nh + 1);
  o.y.resize(2 * nh + 1);
  for (int i = 0; i <= nh; ++i) {
    const Eigen::Vector4d& s = half[i];
    o.x[nh + i] = i * hx;
    o.y[nh + i] = s;
    o.x[nh - i] = -i * hx;
    o.y[nh - i] = Eigen::Vector4d(s(0), -s(1), s(2), -s(3));
  }
  orbit_diagnostics(o);
  return o;
}

}  // namespace

std::pair<double, double> default_homoclinic_guess(double P, double q, double c) {
  // drop u'''' and solve -|P| u'' + u - q u^2 - c u^3 = 0 with a sech profile
  const double mP = P < 0.0 ? -P : 1.0;
  if (c != 0.0 && std::abs(c) >= std::abs(q)) {
    const double amp = std::sqrt(2.0 / std::abs(c));
    return {amp, -amp / mP};
  }
  if (q == 0.0) throw Error(ErrorCode::InvalidArgument, "no default guess for q = c = 0");
  const double amp = 1.5 / q;
  return {amp, -amp / (2.0 * mP)};
}

HomoclinicOrbit solve_homoclinic(double P, double q, double c, const HomoclinicOptions& opts) {
  if (!(P < 2.0)) throw Error(ErrorCode::NonHyperbolic, "lambda^4 + P lambda^2 + 1 has imaginary roots for P >= 2");
  if (!(opts.L > 0.0) || !(opts.dx > 0.0)) throw Error(ErrorCode::InvalidArgument, "L and dx must be positive");
  HomoclinicOrbit o = solve_once(P, q, c, opts, opts.L);
  if (o.end_decay >= 1e-6) o = solve_once(P, q, c, opts, 2.0 * opts.L);
  if (o.end_decay >= 1e-6) throw Error(ErrorCode::NoConvergence, "orbit does not decay at the domain ends");
  if (o.at_zero().norm() < 1e-6)
    throw Error(ErrorCode::NoConvergence, "Newton collapsed onto the trivial equilibrium");
  return o;
}

HomoclinicOrbit negate(const HomoclinicOrbit& o) {
  HomoclinicOrbit n = o;
  for (auto& y : n.y) y = -y;
  if (o.sign_tag == SignTag::Positive) n.sign_tag = SignTag::Negative;
  else if (o.sign_tag == SignTag::Negative) n.sign_tag = SignTag::Positive;
  return n;
}

void orbit_diagnostics(HomoclinicOrbit& o) {
  const int n = static_cast<int>(o.x.size());
  const ReducedSystem sys = make_quartic(o.P, o.q, o.c);
  const double hx = (o.x.back() - o.x.front()) / (n - 1);
  static constexpr double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};

  o.max_residual = 0.0;
  o.energy_deviation = 0.0;
  for (int i = 0; i < n; ++i) {
    o.energy_deviation = std::max(o.energy_deviation, std::abs(reduced_energy(sys, o.y[i])));
    if (i < 4 || i + 4 >= n) continue;
    Eigen::Vector4d d = Eigen::Vector4d::Zero();
    for (int j = 0; j < 4; ++j) d += w[j] * (o.y[i + j + 1] - o.y[i - j - 1]);
    d /= hx;
    Eigen::Vector4d f;
    rhs_raw(sys, o.y[i].data(), f.data());
    o.max_residual = std::max(o.max_residual, (d - f).cwiseAbs().maxCoeff());
  }
  o.end_decay = std::max(o.y.front().norm(), o.y.back().norm());

  double asym = 0.0, umax = 0.0;
  for (int i = 0; i < n; ++i) {
    asym = std::max(asym, std::abs(o.y[i](0) - o.y[n - 1 - i](0)));
    umax = std::max(umax, std::abs(o.y[i](0)));
  }
  o.symmetry_tag = asym < 1e-8 ? SymmetryTag::Even : SymmetryTag::None;

  const double u0 = o.y[n / 2](0);
  const double sg = u0 >= 0.0 ? 1.0 : -1.0;
  double worst = 0.0;
  for (const auto& y : o.y) worst = std::min(worst, sg * y(0));
  if (worst < -1e-9 * umax)
    o.sign_tag = SignTag::SignChanging;
  else
    o.sign_tag = sg > 0.0 ? SignTag::Positive : SignTag::Negative;
}

double transversality_l(const HomoclinicOrbit& orbit) {
  if (orbit.y.empty()) throw Error(ErrorCode::InvalidArgument, "empty orbit");
  const Eigen::Vector4d& y0 = orbit.at_zero();
  if (std::abs(y0(1)) > 1e-8 || std::abs(y0(3)) > 1e-8 || std::abs(orbit.x[orbit.x.size() / 2]) > 1e-12)
    throw Error(ErrorCode::NotSymmetric, "orbit is not even about X = 0");
  if (orbit.sign_tag == SignTag::SignChanging) throw Error(ErrorCode::NotSingleSigned, "orbit changes sign");
  for (const auto& y : orbit.y)
    if (y(0) * y0(0) < -1e-9 * y0(0) * y0(0)) throw Error(ErrorCode::NotSingleSigned, "orbit changes sign");
  const double u = y0(0), u2 = y0(2);
  if (!(u2 * u < 0.0)) throw Error(ErrorCode::NotSingleSigned, "u''(0) must have the opposite sign to u(0)");
  return (u * u * u - u) / (-u2) - 1.0;
}

// ---------------------------------------------------------------------------

Eigen::Vector2d explicit_o2(ExplicitKind kind, double X, const PhysicalParams& p, double beta, double kappa) {
  const double g5 = gamma5(p, beta);
  if (kind == ExplicitKind::Plain) {
    const double A = g5 * std::sqrt(g5) * (1.0 / (p.h * p.h) - p.rho);
    if (std::abs(A) < 1e-12) throw Error(ErrorCode::CriticalRatioDegenerate, "A(rho, h) vanishes at rho = 1/h^2");
    const double s = 1.0 / std::cosh(0.5 * X), t = std::tanh(0.5 * X);
    return {-s * s / A, s * s * t / A};
  }
  const double e = p.rho + 1.0 / (p.h * p.h * p.h);
  const double S = std::sqrt(kappa * kappa + 8.0 * e);
  const double sg = kind == ExplicitKind::CriticalPlus ? 1.0 : -1.0;
  const double d = sg * S * std::cosh(X) - kappa;
  return {2.0 * g5 / d, -2.0 * g5 * sg * S * std::sinh(X) / (d * d)};
}

Eigen::Vector2d explicit_o2_derivative(ExplicitKind kind, double X, const PhysicalParams& p, double beta,
                                       double kappa) {
  const double g5 = gamma5(p, beta);
  if (kind == ExplicitKind::Plain) {
    const double A = g5 * std::sqrt(g5) * (1.0 / (p.h * p.h) - p.rho);
    if (std::abs(A) < 1e-12) throw Error(ErrorCode::CriticalRatioDegenerate, "A(rho, h) vanishes at rho = 1/h^2");
    const double s = 1.0 / std::cosh(0.5 * X), t = std::tanh(0.5 * X);
    const double u = s * s;
    // u = sech^2(X/2): u' = -u t, u'' = u - 1.5 u^2
    return {u * t / A, -(u - 1.5 * u * u) / A};
  }
  const double e = p.rho + 1.0 / (p.h * p.h * p.h);
  const double S = std::sqrt(kappa * kappa + 8.0 * e);
  const double a = (kind == ExplicitKind::CriticalPlus ? 1.0 : -1.0) * S;
  const double d = a * std::cosh(X) - kappa;
  const double sh = std::sinh(X);
  return {-2.0 * g5 * a * sh / (d * d), -2.0 * g5 * a * (std::cosh(X) / (d * d) - 2.0 * a * sh * sh / (d * d * d))};
}

// ---------------------------------------------------------------------------

const char* profile_case_name(ProfileCase c) {
  switch (c) {
    case ProfileCase::O2: return "O2";
    case ProfileCase::O2CriticalPlus: return "O2_CRITICAL_PLUS";
    case ProfileCase::O2CriticalMinus: return "O2_CRITICAL_MINUS";
    case ProfileCase::R11: return "R11";
    case ProfileCase::R11Critical: return "R11_CRITICAL";
    case ProfileCase::HopfBright: return "HOPF_BRIGHT";
    case ProfileCase::HopfDark: return "HOPF_DARK";
  }
  return "O2";
}

ProfileCase parse_profile_case(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return ch == '-' ? '_' : std::toupper(ch); });
  for (ProfileCase c : {ProfileCase::O2, ProfileCase::O2CriticalPlus, ProfileCase::O2CriticalMinus, ProfileCase::R11,
                        ProfileCase::R11Critical, ProfileCase::HopfBright, ProfileCase::HopfDark})
    if (t == profile_case_name(c)) return c;
  throw Error(ErrorCode::InvalidArgument, "unknown profile case '" + s + "'");
}

namespace {

// Cubic Hermite interpolation of u(X) from the sampled (u, u'); zero outside.
double orbit_u(const HomoclinicOrbit& o, double X) {
  if (X <= o.x.front() || X >= o.x.back()) return 0.0;
  const double hx = o.x[1] - o.x[0];
  const auto i = std::min<std::size_t>(static_cast<std::size_t>((X - o.x.front()) / hx), o.x.size() - 2);
  const double t = (X - o.x[i]) / hx;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * o.y[i](0) + (t3 - 2 * t2 + t) * hx * o.y[i](1) + (-2 * t3 + 3 * t2) * o.y[i + 1](0) +
         (t3 - t2) * hx * o.y[i + 1](1);
}

void need_positive_delta(double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::SignMismatch, "this case needs delta > 0");
}

}  // namespace

Profile physical_profile(ProfileCase c, const std::vector<double>& xgrid, const ProfileParams& pp) {
  const PhysicalParams& p = pp.p;
  const double rho = p.rho, h = p.h;
  Profile out;
  out.x.reserve(xgrid.size());
  out.eta.reserve(xgrid.size());
  auto emit = [&](auto&& eta_of_x) {
    for (double x : xgrid) {
      out.x.push_back(pp.scale * x);
      out.eta.push_back(pp.scale * eta_of_x(x));
    }
  };

  switch (c) {
    case ProfileCase::O2: {
      need_positive_delta(pp.delta);
      const double g5 = gamma5(p, pp.beta);
      const double den = 1.0 / (h * h) - rho;
      if (std::abs(den) < 1e-12) throw Error(ErrorCode::CriticalRatioDegenerate, "rho = 1/h^2");
      const double sd = std::sqrt(pp.delta);
      emit([&](double x) {
        const double s = 1.0 / std::cosh(sd * x / (2.0 * std::sqrt(g5)));
        return -pp.delta * s * s / den;
      });
      out.remainder_order = 1.5;
      break;
    }
    case ProfileCase::O2CriticalPlus:
    case ProfileCase::O2CriticalMinus: {
      need_positive_delta(pp.delta);
      const double g5 = gamma5(p, pp.beta);
      const double e = rho + 1.0 / (h * h * h);
      const double S = std::sqrt(pp.kappa * pp.kappa + 8.0 * e);
      const double sg = c == ProfileCase::O2CriticalPlus ? 1.0 : -1.0;
      const double sd = std::sqrt(pp.delta);
      emit([&](double x) { return 2.0 * sd / (sg * S * std::cosh(sd * x / std::sqrt(g5)) - pp.kappa); });
      out.remainder_order = 1.0;
      break;
    }
    case ProfileCase::R11: {
      const double g3 = gamma3(p);
      const double kap = rho - 1.0 / (h * h);
      if (std::abs(kap) < 1e-12) throw Error(ErrorCode::CriticalRatioDegenerate, "rho = 1/h^2, use R11_CRITICAL");
      const HomoclinicOrbit w = solve_homoclinic(-2.0 * (1.0 + pp.delta), 1.0, 0.0);
      const double scale = 2.0 * g3 * std::sqrt(g3) / (3.0 * kap);  // P1 = scale * w
      const double eps = pp.epsilon;
      const double e4 = eps * eps * eps * eps;
      emit([&](double x) { return e4 * std::sqrt(g3) * scale * orbit_u(w, eps * x); });
      out.remainder_order = 5.0;
      break;
    }
    case ProfileCase::R11Critical: {
      const double g3 = gamma3(p);
      const R11Coeffs rc = r11_coeffs(p);
      const double r1 = rho - 1.0;
      const double ep = rho + 1.0 / (h * h * h) + 2.0 * r1 * r1 / (225.0 * g3);
      const HomoclinicOrbit u = solve_homoclinic(-2.0 * (1.0 + pp.delta), pp.kappa * rc.cubic_c, 1.0);
      const double scale = g3 / (2.0 * std::sqrt(ep));  // P1 = scale * u
      const double eps = pp.epsilon;
      emit([&](double x) { return eps * eps * std::sqrt(g3) * scale * orbit_u(u, eps * x); });
      out.remainder_order = 3.0;
      break;
    }
    case ProfileCase::HopfBright:
    case ProfileCase::HopfDark: {
      const HopfCoeffs hc = hopf_coeffs(pp.k, p);
      const auto kind = c == ProfileCase::HopfBright ? EnvelopeKind::Bright : EnvelopeKind::Dark;
      const Envelope env = nls_envelope(kind, pp.delta, hc.c1, hc.c3);
      const double sd = std::sqrt(std::abs(pp.delta));
      emit([&](double x) { return 2.0 * sd * envelope_value(env, sd * x) * std::cos(pp.k * x) / std::sqrt(hc.gamma1); });
      out.remainder_order = 1.0;
      break;
    }
  }
  return out;
}

}  // namespace wavestrata
