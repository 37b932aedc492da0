#include "wavestrata/operator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "wavestrata/dispersion.hpp"

namespace wavestrata {

using cd = std::complex<double>;

namespace {

template <class S>
GridVec<S> dz(const GridVec<S>& f, const ChebGrid& g) {
  return g.D.cast<S>() * f;
}

template <class S>
S integral(const GridVec<S>& f, const ChebGrid& g) {
  return (g.w.cast<S>() * f)(0);
}

// z^2 - 1/3 sampled on the grid
Eigen::VectorXd zsq_shift(const ChebGrid& g) {
  return (g.z.array().square() - 1.0 / 3.0).matrix();
}

void require_rho(const PhysicalParams& p) {
  if (!(p.rho > 0.0))
    throw Error(ErrorCode::OutOfDomain, "the layer-1 equations divide by rho; rho must be positive");
}

// gamma1(k)/ (rho-part and h-part) kernel: coth x/x - x coth x/sinh^2 x - ghyp(x)
double gamma1_kernel(double x) {
  constexpr std::array<double, 8> c = {4.0 / 45.0,          -8.0 / 315.0,
                                       8.0 / 1575.0,        -16.0 / 18711.0,
                                       5528.0 / 42567525.0, -16.0 / 868725.0,
                                       57872.0 / 23260111875.0, -1403744.0 / 4331032831125.0};
  if (std::abs(x) < 0.25) {
    const double x2 = x * x;
    double acc = 0.0;
    for (int n = 7; n >= 0; --n) acc = acc * x2 + c[n];
    return acc * x2;
  }
  const double s = std::sinh(x);
  const double ct = 1.0 / std::tanh(x);
  return ct * (1.0 / x - x / (s * s)) - ghyp(x);
}

}  // namespace

void require_same_grid(const std::shared_ptr<const ChebGrid>& a,
                       const std::shared_ptr<const ChebGrid>& b) {
  if (a != b && (!a || !b || a->n != b->n))
    throw Error(ErrorCode::GridMismatch, "states live on different grids");
}

template <class S>
S symplectic_form(const GridState<S>& u, const GridState<S>& v) {
  require_same_grid(u.grid, v.grid);
  const ChebGrid& g = *u.grid;
  const GridVec<S> dug1 = dz(u.g1, g), dvg1 = dz(v.g1, g);
  const GridVec<S> dug2 = dz(u.g2, g), dvg2 = dz(v.g2, g);
  S r = v.s2 * u.eta - v.eta * u.s2;
  r += integral<S>(dvg1.cwiseProduct(u.f1) - v.f1.cwiseProduct(dug1), g);
  r += integral<S>(dvg2.cwiseProduct(u.f2) - v.f2.cwiseProduct(dug2), g);
  return r;
}

template <class S>
double l_boundary_residual(const GridState<S>& u, const BifurcationPoint& pt, const PhysicalParams& p) {
  using std::abs;
  const ChebGrid& g = *u.grid;
  const int top = ChebGrid::top, bot = g.bottom();
  const S c = u.s2 + p.rho * u.f1(top) - u.f2(top);
  const GridVec<S> d1 = dz(u.f1, g), d2 = dz(u.f2, g);
  double r = abs(d1(top) - c / pt.beta);
  r = std::max(r, abs(d1(bot)));
  r = std::max(r, abs(d2(top) + p.h * c / pt.beta));
  r = std::max(r, abs(d2(bot)));
  return r;
}

template <class S>
GridState<S> apply_L(const GridState<S>& u, const BifurcationPoint& pt, const PhysicalParams& p) {
  require_rho(p);
  const double scale = std::max(1.0, norm_inf(u));
  if (l_boundary_residual(u, pt, p) > 1e-8 * scale)
    throw Error(ErrorCode::BoundaryViolation, "state is outside the domain of L");
  const ChebGrid& g = *u.grid;
  const double rho = p.rho, h = p.h, beta = pt.beta;
  const S c = u.s2 + rho * u.f1(ChebGrid::top) - u.f2(ChebGrid::top);
  const GridVec<S> z = g.z.cast<S>();
  GridState<S> r = zero_state<S>(u.grid);
  r.eta = c / beta;
  r.s2 = (pt.alpha - rho - 1.0 / h) * u.eta;
  r.f1 = dz(u.g1, g) / S(rho);
  r.g1 = (rho / beta) * c * z - S(rho) * dz(u.f1, g);
  r.f2 = dz(u.g2, g) / S(h);
  r.g2 = -(c / beta) * z - dz(u.f2, g) / S(h);
  project_mean(r);
  return r;
}

template <class S>
GridState<S> apply_K(const GridState<S>& u, const BifurcationPoint& pt, const PhysicalParams& p) {
  const ChebGrid& g = *u.grid;
  const int top = ChebGrid::top;
  const double rho = p.rho, h = p.h, beta = pt.beta;
  const GridVec<S> G1z = dz(u.g1, g), G2z = dz(u.g2, g);
  const S Z = G1z(top) - G2z(top) / h + (pt.alpha - rho - 1.0 / h) * u.eta;
  const GridVec<S> shape = (-0.5 * zsq_shift(g)).template cast<S>();  // (1/3 - z^2)/2
  GridState<S> r = zero_state<S>(u.grid);
  r.eta = -3.0 * (u.f1(top) - u.f2(top) - u.s2) / (rho + h);
  r.s2 = G1z(top) - G2z(top) / h;
  r.f1 = G1z + (Z * (rho / beta)) * shape;
  r.g1 = -dz(u.f1, g);
  r.f2 = G2z / S(h) - (Z * (h / beta)) * shape;
  r.g2 = -dz(u.f2, g) / S(h);
  project_mean(r);
  return r;
}

GridState<double> apply_vH(const GridState<double>& u, const BifurcationPoint& pt,
                           const PhysicalParams& p) {
  require_rho(p);
  const double rho = p.rho, h = p.h, beta = pt.beta, alpha = pt.alpha;
  const double eta = u.eta;
  if (!(eta > -h && eta < 1.0)) throw Error(ErrorCode::OutOfDomain, "eta must lie in (-h, 1)");
  const ChebGrid& g = *u.grid;
  const int top = ChebGrid::top;
  const Eigen::VectorXd& z = g.z;
  const Eigen::VectorXd zs = zsq_shift(g);

  const Eigen::VectorXd G1z = g.D * u.g1, G2z = g.D * u.g2;
  const Eigen::VectorXd p1z = g.D * u.f1, p2z = g.D * u.f2;
  const Eigen::VectorXd A1 = a_transform<double>(G1z, g), A2 = a_transform<double>(G2z, g);
  const Eigen::VectorXd Ap1 = a_transform<double>(g.D2 * u.f1, g);
  const Eigen::VectorXd Ap2 = a_transform<double>(g.D2 * u.f2, g);

  const double den = A1(top) + A2(top) - (rho + h) / 3.0;
  if (std::abs(den) < 1e-6) throw Error(ErrorCode::OutOfDomain, "R denominator is degenerate");
  const double R = (u.f1(top) - u.f2(top) - u.s2) / den;
  const double a = 1.0 / (eta - 1.0), b = 1.0 / (eta + h);
  const double G1 = G1z(top), G2 = G2z(top);
  const double q = 1.0 + R * R;

  const double wdot = -q * (G1 - rho) * (G1 - rho) * a * a / (2.0 * rho) +
                      q * (G2 - h) * (G2 - h) * b * b / 2.0 + rho / 2.0 - 0.5 + alpha * eta;
  const double amp = wdot * std::pow(q, 1.5) / beta;
  const double top1 = -u.f1(top) + R * (A1(top) - rho / 3.0);
  const double top2 = -u.f2(top) - R * (A2(top) - h / 3.0);

  GridState<double> r = zero_state<double>(u.grid);
  r.eta = R;
  r.s2 = a * (-G1 + R * (-R * (G1 - rho) + top1)) - b * (G2 + R * (R * (G2 - h) + top2));
  r.f1 = a * (-G1z.array() +
              R * (z.array() * p1z.array() - R * z.array().square() * (G1z.array() - rho) + top1))
                 .matrix() +
         amp * (A1 - 0.5 * rho * zs) + (R * a) * Ap1;
  r.g1 = a * p1z;
  r.f2 = b * (G2z.array() +
              R * (z.array() * p2z.array() + R * z.array().square() * (G2z.array() - h) + top2))
                 .matrix() -
         amp * (A2 - 0.5 * h * zs) + (R * b) * Ap2;
  r.g2 = -b * p2z;
  project_mean(r);
  return r;
}

GridState<double> reverser(const GridState<double>& u) {
  return {u.eta, -u.s2, -u.f1, u.g1, -u.f2, u.g2, u.grid};
}

namespace {

// int z phi_z (Gamma_z - c)/(eta + shift) for both layers combined
double omega_shift(const GridState<double>& u, const Eigen::VectorXd& t1z,
                   const Eigen::VectorXd& t2z, const PhysicalParams& p) {
  const ChebGrid& g = *u.grid;
  const Eigen::VectorXd G1z = g.D * u.g1, G2z = g.D * u.g2;
  const double i1 = integral<double>(g.z.cwiseProduct(t1z).cwiseProduct((G1z.array() - p.rho).matrix()), g);
  const double i2 = integral<double>(g.z.cwiseProduct(t2z).cwiseProduct((G2z.array() - p.h).matrix()), g);
  return i1 / (u.eta - 1.0) + i2 / (u.eta + p.h);
}

}  // namespace

GridState<double> change_coords(const GridState<double>& u, Direction dir,
                                const BifurcationPoint& pt, const PhysicalParams& p) {
  require_rho(p);
  if (!(u.eta > -p.h && u.eta < 1.0)) throw Error(ErrorCode::OutOfDomain, "eta must lie in (-h, 1)");
  const double rho = p.rho, h = p.h, beta = pt.beta;
  const ChebGrid& g = *u.grid;
  const int top = ChebGrid::top;
  const Eigen::VectorXd zs = zsq_shift(g);
  const Eigen::VectorXd A1 = a_transform<double>(g.D * u.g1, g);
  const Eigen::VectorXd A2 = a_transform<double>(g.D * u.g2, g);
  GridState<double> r = u;

  if (dir == Direction::Forward) {
    const double wbar = u.s2 + omega_shift(u, g.D * u.f1, g.D * u.f2, p);
    if (!(std::abs(wbar) < beta)) throw Error(ErrorCode::OutOfDomain, "|omega bar| must be below beta");
    const double W = wbar / std::sqrt(beta * beta - wbar * wbar);
    r.s2 = rho * u.f1(top) - u.f2(top);
    r.f1 = rho * u.f1 + W * (A1 - 0.5 * rho * zs);
    r.f2 = u.f2 - W * (A2 - 0.5 * h * zs);
  } else {
    const double den = A1(top) + A2(top) - (rho + h) / 3.0;
    if (std::abs(den) <= 1e-6)
      throw Error(ErrorCode::DenominatorDegenerate, "R denominator within 1e-6 of zero");
    const double R = (u.f1(top) - u.f2(top) - u.s2) / den;
    r.f1 = u.f1 / rho - (R / rho) * (A1 - 0.5 * rho * zs);
    r.f2 = u.f2 + R * (A2 - 0.5 * h * zs);
    r.s2 = beta * R / std::sqrt(1.0 + R * R) - omega_shift(u, g.D * r.f1, g.D * r.f2, p);
  }
  project_mean(r);
  return r;
}

GridState<double> dG0(const GridState<double>& u, const BifurcationPoint& pt, const PhysicalParams& p) {
  const ChebGrid& g = *u.grid;
  const int top = ChebGrid::top;
  const Eigen::VectorXd zs = zsq_shift(g);
  const double wbar = u.s2 + p.rho * integral<double>(g.z.cwiseProduct(g.D * u.f1), g) -
                      integral<double>(g.z.cwiseProduct(g.D * u.f2), g);
  const double W = wbar / pt.beta;
  GridState<double> r = u;
  r.s2 = p.rho * u.f1(top) - u.f2(top);
  r.f1 = p.rho * u.f1 - W * 0.5 * p.rho * zs;
  r.f2 = u.f2 + W * 0.5 * p.h * zs;
  project_mean(r);
  return r;
}

GridState<double> dG0_inverse(const GridState<double>& u, const BifurcationPoint& pt,
                              const PhysicalParams& p) {
  require_rho(p);
  const ChebGrid& g = *u.grid;
  const int top = ChebGrid::top;
  const Eigen::VectorXd zs = zsq_shift(g);
  const double R = -3.0 * (u.f1(top) - u.f2(top) - u.s2) / (p.rho + p.h);
  GridState<double> r = u;
  r.f1 = u.f1 / p.rho + 0.5 * R * zs;
  r.f2 = u.f2 - 0.5 * R * p.h * zs;
  r.s2 = pt.beta * R - p.rho * integral<double>(g.z.cwiseProduct(g.D * r.f1), g) +
         integral<double>(g.z.cwiseProduct(g.D * r.f2), g);
  project_mean(r);
  return r;
}

const char* chain_case_name(ChainCase c) {
  switch (c) {
    case ChainCase::Hopf: return "HOPF";
    case ChainCase::R11: return "R11";
    case ChainCase::O2: return "O2";
  }
  return "HOPF";
}

double gamma1_closed(double k, const PhysicalParams& p) {
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma1 needs k > 0");
  return p.rho * gamma1_kernel(k) + p.h * gamma1_kernel(p.h * k);
}

namespace {

using CState = GridState<cd>;

CState hopf_e1(double k, double alpha, const PhysicalParams& p, const std::shared_ptr<const ChebGrid>& g) {
  const double rho = p.rho, h = p.h;
  const Eigen::ArrayXd z = g->z.array();
  const cd I(0.0, 1.0);
  CState e = zero_state<cd>(g);
  e.eta = 1.0;
  e.s2 = (alpha - rho - 1.0 / h) / (I * k);
  e.f1 = (I * ((k * z).cosh() / std::sinh(k) - 1.0 / k)).matrix();
  e.g1 = (rho * (-(k * z).sinh() / std::sinh(k) + z)).cast<cd>().matrix();
  e.f2 = (I * (-(h * k * z).cosh() / std::sinh(h * k) + 1.0 / (h * k))).matrix();
  e.g2 = ((h * k * z).sinh() / std::sinh(h * k) - z).cast<cd>().matrix();
  return e;
}

CState hopf_e2(double k, double alpha, const PhysicalParams& p, const std::shared_ptr<const ChebGrid>& g) {
  const double rho = p.rho, h = p.h, hk = h * k;
  const Eigen::ArrayXd z = g->z.array();
  const cd I(0.0, 1.0);
  CState e = zero_state<cd>(g);
  e.s2 = (alpha - rho - 1.0 / h) / (k * k);
  const Eigen::ArrayXd ck = (k * z).cosh(), sk = (k * z).sinh();
  const Eigen::ArrayXd chk = (hk * z).cosh(), shk = (hk * z).sinh();
  e.f1 = ((z * sk - ck / std::tanh(k)) / std::sinh(k) + 1.0 / (k * k)).cast<cd>().matrix();
  e.g1 = (-I * rho * ((sk / std::tanh(k) - z * ck) / std::sinh(k))).matrix();
  e.f2 = (-h * (z * shk - chk / std::tanh(hk)) / std::sinh(hk) - 1.0 / (h * k * k)).cast<cd>().matrix();
  e.g2 = (I * h * ((shk / std::tanh(hk) - z * chk) / std::sinh(hk))).matrix();
  return e;
}

double chain_gap(const CState& a, const CState& b) { return norm_inf(a - b); }

}  // namespace

EigenChain eigenchain(ChainCase tag, const BifurcationPoint& pt, const PhysicalParams& p, int n,
                      double k) {
  require_rho(p);
  auto g = grid_for(n);
  const double rho = p.rho, h = p.h;
  const Eigen::ArrayXd z = g->z.array();
  EigenChain ch;
  ch.tag = tag;
  ch.k = k;
  auto L = [&](const CState& u) { return apply_L(u, pt, p); };

  if (tag == ChainCase::Hopf) {
    if (!(k > 0.0)) throw Error(ErrorCode::CaseMismatch, "the Hopf chain needs k > 0");
    const DispersionContext ctx{p, pt};
    if (std::abs(disp_imag(k, 0, ctx)) > 1e-8 || std::abs(disp_imag(k, 1, ctx)) > 1e-8)
      throw Error(ErrorCode::CaseMismatch, "(beta, alpha) is not on C2 at this k");
    const CState e1 = hopf_e1(k, pt.alpha, p, g), e2 = hopf_e2(k, pt.alpha, p, g);
    const cd ik(0.0, k);
    ch.vectors = {e1, e2};
    ch.chain_residuals = {norm_inf(L(e1) - ik * e1), chain_gap(L(e2) - ik * e2, e1)};
    const double g1 = gamma1_closed(k, p);
    const cd o12 = symplectic_form(e1, conj(e2));
    const cd o22 = symplectic_form(e2, conj(e2));
    const double g2 = -o22.imag();
    ch.gamma_values = {{"gamma1", g1}, {"gamma1_quadrature", o12.real()}, {"gamma2", g2}};
    const CState e2p = e2 + cd(0.0, g2 / (2.0 * g1)) * e1;
    const double s = 1.0 / std::sqrt(g1);
    const CState W1 = s * e1, W2 = s * e2p;
    ch.basis = {W1, W2};
    ch.normalization_residuals = {
        std::abs(symplectic_form(W1, conj(W2)) - 1.0), std::abs(symplectic_form(conj(W1), W2) - 1.0),
        std::abs(symplectic_form(W1, W2)), std::abs(symplectic_form(W2, conj(W2))),
        std::abs(symplectic_form(e1, conj(e1)))};
    return ch;
  }

  if (tag == ChainCase::R11) {
    if (std::abs(pt.beta - beta0(p)) > 1e-10 || std::abs(pt.alpha - alpha0(p)) > 1e-10)
      throw Error(ErrorCode::CaseMismatch, "the real 1:1 chain lives at (beta0, alpha0)");
    const double g3 = gamma3(p), g4 = gamma4(p), h3 = h * h * h;
    CState e1 = zero_state<cd>(g), e2 = zero_state<cd>(g), e3 = zero_state<cd>(g), e4 = zero_state<cd>(g);
    e1.eta = 1.0;
    const Eigen::ArrayXd zs = z.square() - 1.0 / 3.0;
    e2.f1 = (0.5 * zs).cast<cd>().matrix();
    e2.f2 = (-0.5 * h * zs).cast<cd>().matrix();
    const Eigen::ArrayXd cubic = z * (z.square() - 1.0) / 6.0;
    e3.g1 = (rho * cubic).cast<cd>().matrix();
    e3.g2 = (-h * h * cubic).cast<cd>().matrix();
    const Eigen::ArrayXd quart = z.square() / 12.0 * (z.square() / 2.0 - 1.0) + 7.0 / 360.0;
    e4.s2 = -(rho + h3) / 45.0;
    e4.f1 = (-quart).cast<cd>().matrix();
    e4.f2 = (h3 * quart).cast<cd>().matrix();
    ch.vectors = {e1, e2, e3, e4};
    ch.chain_residuals = {norm_inf(L(e1)), chain_gap(L(e2), e1), chain_gap(L(e3), e2), chain_gap(L(e4), e3)};
    ch.gamma_values = {{"gamma3", g3},
                       {"gamma4", g4},
                       {"omega_e1_e4", symplectic_form(e1, e4).real()},
                       {"omega_e2_e3", symplectic_form(e2, e3).real()},
                       {"omega_e3_e4", symplectic_form(e3, e4).real()}};
    const double s = 1.0 / std::sqrt(g3);
    ch.basis = {s * e4, s * e1, s * e2, s * (e3 - (g4 / g3) * e1)};
    const auto& W = ch.basis;
    ch.normalization_residuals = {std::abs(symplectic_form(W[0], W[1]) - 1.0),
                                  std::abs(symplectic_form(W[2], W[3]) - 1.0),
                                  std::abs(symplectic_form(W[0], W[2])),
                                  std::abs(symplectic_form(W[0], W[3])),
                                  std::abs(symplectic_form(W[1], W[2])),
                                  std::abs(symplectic_form(W[1], W[3]))};
    return ch;
  }

  if (std::abs(pt.alpha - alpha0(p)) > 1e-10 || !(pt.beta > beta0(p)))
    throw Error(ErrorCode::CaseMismatch, "the 0^2 chain needs alpha = alpha0 and beta > beta0");
  const double g5 = pt.beta - beta0(p);
  CState e1 = zero_state<cd>(g), e2 = zero_state<cd>(g);
  e1.eta = 1.0;
  const Eigen::ArrayXd zs = z.square() - 1.0 / 3.0;
  e2.s2 = g5;
  e2.f1 = (0.5 * zs).cast<cd>().matrix();
  e2.f2 = (-0.5 * h * zs).cast<cd>().matrix();
  ch.vectors = {e1, e2};
  ch.chain_residuals = {norm_inf(L(e1)), chain_gap(L(e2), e1)};
  ch.gamma_values = {{"gamma5", g5}, {"omega_e1_e2", symplectic_form(e1, e2).real()}};
  const double s = 1.0 / std::sqrt(g5);
  ch.basis = {s * e1, s * e2};
  ch.normalization_residuals = {std::abs(symplectic_form(ch.basis[0], ch.basis[1]) - 1.0)};
  return ch;
}

std::pair<double, double> gamma12(double k, const PhysicalParams& p, int n) {
  // gamma2 only needs Omega, which does not divide by rho
  const double beta = p.rho * ghyp(k) + p.h * ghyp(p.h * k);
  const double alpha = -beta * k * k + p.rho * xcoth(k) + xcoth(p.h * k) / p.h;
  auto g = grid_for(n);
  const CState e2 = hopf_e2(k, alpha, p, g);
  return {gamma1_closed(k, p), -symplectic_form(e2, conj(e2)).imag()};
}

std::vector<cd> discretized_spectrum(const BifurcationPoint& pt, const PhysicalParams& p, int n,
                                     double strip) {
  require_rho(p);
  if (n < 16) throw Error(ErrorCode::InvalidArgument, "discretized_spectrum needs N >= 16");
  if (strip <= 0.0) strip = default_strip_halfwidth(p);
  auto gp = grid_for(n);
  const ChebGrid& g = *gp;
  const int m = n + 1;
  const int dim = 2 + 4 * m;
  const int F1 = 2, G1 = 2 + m, F2 = 2 + 2 * m, G2 = 2 + 3 * m;
  const double rho = p.rho, h = p.h, beta = pt.beta;

  Eigen::RowVectorXd crow = Eigen::RowVectorXd::Zero(dim);
  crow(1) = 1.0;
  crow(F1) += rho;
  crow(F2) -= 1.0;

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  M.row(0) = crow / beta;
  M(1, 0) = pt.alpha - rho - 1.0 / h;
  M.block(F1, G1, m, m) = g.D / rho;
  M.block(G1, 0, m, dim) += (rho / beta) * g.z * crow;
  M.block(G1, F1, m, m) -= rho * g.D;
  M.block(F2, G2, m, m) = g.D / h;
  M.block(G2, 0, m, dim) += (-1.0 / beta) * g.z * crow;
  M.block(G2, F2, m, m) -= g.D / h;

  // constraints: Gamma_i = 0 at both ends, zero mean of phi_i (solved for the
  // middle node).  The matching rows of M are dropped.
  const int jm = m / 2;
  std::vector<int> dropped = {G1, G1 + n, G2, G2 + n, F1 + jm, F2 + jm};
  std::vector<bool> is_dropped(dim, false);
  for (int d : dropped) is_dropped[d] = true;
  std::vector<int> kept;
  for (int i = 0; i < dim; ++i)
    if (!is_dropped[i]) kept.push_back(i);
  const int r = int(kept.size());

  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, r);
  for (int j = 0; j < r; ++j) T(kept[j], j) = 1.0;
  for (int base : {F1, F2}) {
    for (int j = 0; j < r; ++j) {
      const int idx = kept[j];
      if (idx >= base && idx < base + m) T(base + jm, j) = -g.w(idx - base) / g.w(jm);
    }
  }
  const Eigen::MatrixXd MT = M * T;
  Eigen::MatrixXd A(r, r);
  for (int i = 0; i < r; ++i) A.row(i) = MT.row(kept[i]);

  Eigen::EigenSolver<Eigen::MatrixXd> es(A, true);
  const Eigen::MatrixXcd X = T.cast<cd>() * es.eigenvectors();
  const Eigen::MatrixXcd Dc = g.D.cast<cd>();
  std::vector<cd> out;
  for (int j = 0; j < r; ++j) {
    const cd lam = es.eigenvalues()(j);
    if (!std::isfinite(lam.real()) || !std::isfinite(lam.imag())) continue;
    if (!(std::abs(lam.real()) < strip)) continue;
    Eigen::VectorXcd x = X.col(j);
    x /= x.cwiseAbs().maxCoeff();
    const Eigen::VectorXcd f1 = x.segment(F1, m), f2 = x.segment(F2, m);
    const cd c = x(1) + rho * f1(0) - f2(0);
    const Eigen::VectorXcd d1 = Dc * f1, d2 = Dc * f2;
    const double bc = std::max({std::abs(d1(0) - c / beta), std::abs(d1(n)),
                                std::abs(d2(0) + h * c / beta), std::abs(d2(n))});
    if (bc < 1e-4) out.push_back(lam);
  }
  std::sort(out.begin(), out.end(), [](cd a, cd b) {
    if (std::abs(a.imag()) != std::abs(b.imag())) return std::abs(a.imag()) < std::abs(b.imag());
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

template cd symplectic_form<cd>(const GridState<cd>&, const GridState<cd>&);
template double symplectic_form<double>(const GridState<double>&, const GridState<double>&);
template double l_boundary_residual<cd>(const GridState<cd>&, const BifurcationPoint&, const PhysicalParams&);
template double l_boundary_residual<double>(const GridState<double>&, const BifurcationPoint&,
                                            const PhysicalParams&);
template GridState<cd> apply_L<cd>(const GridState<cd>&, const BifurcationPoint&, const PhysicalParams&);
template GridState<double> apply_L<double>(const GridState<double>&, const BifurcationPoint&,
                                           const PhysicalParams&);
template GridState<cd> apply_K<cd>(const GridState<cd>&, const BifurcationPoint&, const PhysicalParams&);
template GridState<double> apply_K<double>(const GridState<double>&, const BifurcationPoint&,
                                           const PhysicalParams&);

}  // namespace wavestrata
