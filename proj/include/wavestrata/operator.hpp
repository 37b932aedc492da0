#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wavestrata/cheb.hpp"
#include "wavestrata/core.hpp"

namespace wavestrata {

template <class S>
using GridVec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// (eta, s2, f1, g1, f2, g2) with s2 = omega in L-coordinates and v in
// K-coordinates; f and g are sampled on the shared Chebyshev grid.
template <class S>
struct GridState {
  S eta{};
  S s2{};
  GridVec<S> f1, g1, f2, g2;
  std::shared_ptr<const ChebGrid> grid;
};

template <class S>
GridState<S> zero_state(const std::shared_ptr<const ChebGrid>& grid) {
  const int m = grid->size();
  return {S{}, S{}, GridVec<S>::Zero(m), GridVec<S>::Zero(m), GridVec<S>::Zero(m),
          GridVec<S>::Zero(m), grid};
}

void require_same_grid(const std::shared_ptr<const ChebGrid>& a,
                       const std::shared_ptr<const ChebGrid>& b);

template <class S>
GridState<S> operator+(const GridState<S>& a, const GridState<S>& b) {
  require_same_grid(a.grid, b.grid);
  return {a.eta + b.eta, a.s2 + b.s2, a.f1 + b.f1, a.g1 + b.g1, a.f2 + b.f2, a.g2 + b.g2, a.grid};
}

template <class S>
GridState<S> operator-(const GridState<S>& a, const GridState<S>& b) {
  require_same_grid(a.grid, b.grid);
  return {a.eta - b.eta, a.s2 - b.s2, a.f1 - b.f1, a.g1 - b.g1, a.f2 - b.f2, a.g2 - b.g2, a.grid};
}

template <class S, class T>
GridState<S> operator*(T s, const GridState<S>& a) {
  const S c = S(s);
  return {c * a.eta, c * a.s2, c * a.f1, c * a.g1, c * a.f2, c * a.g2, a.grid};
}

inline GridState<std::complex<double>> conj(const GridState<std::complex<double>>& a) {
  return {std::conj(a.eta), std::conj(a.s2), a.f1.conjugate(), a.g1.conjugate(),
          a.f2.conjugate(), a.g2.conjugate(), a.grid};
}

inline GridState<std::complex<double>> complexify(const GridState<double>& a) {
  return {a.eta, a.s2, a.f1.cast<std::complex<double>>(), a.g1.cast<std::complex<double>>(),
          a.f2.cast<std::complex<double>>(), a.g2.cast<std::complex<double>>(), a.grid};
}

// max-abs over all components
template <class S>
double norm_inf(const GridState<S>& a) {
  using std::abs;
  double m = std::max(abs(a.eta), abs(a.s2));
  for (const auto* v : {&a.f1, &a.g1, &a.f2, &a.g2}) m = std::max(m, v->cwiseAbs().maxCoeff());
  return m;
}

// Subtract the quadrature mean from f1 and f2.
template <class S>
void project_mean(GridState<S>& u) {
  const auto w = u.grid->w.template cast<S>();
  u.f1.array() -= (w * u.f1)(0);
  u.f2.array() -= (w * u.f2)(0);
}

// A[f](z) = int_0^z s f'(s) ds minus its mean.
template <class S>
GridVec<S> a_transform(const GridVec<S>& fz, const ChebGrid& g) {
  GridVec<S> r = g.Q.cast<S>() * (g.z.cast<S>().cwiseProduct(fz));
  r.array() -= (g.w.cast<S>() * r)(0);
  return r;
}

template <class S>
S symplectic_form(const GridState<S>& u, const GridState<S>& v);

// Residual of the linear boundary conditions that define the domain of L.
template <class S>
double l_boundary_residual(const GridState<S>& u, const BifurcationPoint& pt, const PhysicalParams& p);

template <class S>
GridState<S> apply_L(const GridState<S>& u, const BifurcationPoint& pt, const PhysicalParams& p);

template <class S>
GridState<S> apply_K(const GridState<S>& u, const BifurcationPoint& pt, const PhysicalParams& p);

GridState<double> apply_vH(const GridState<double>& u, const BifurcationPoint& pt,
                           const PhysicalParams& p);

// (eta, v, phi1, G1, phi2, G2) -> (eta, -v, -phi1, G1, -phi2, G2)
GridState<double> reverser(const GridState<double>& u);

enum class Direction { Forward, Inverse };

GridState<double> change_coords(const GridState<double>& u, Direction dir,
                                const BifurcationPoint& pt, const PhysicalParams& p);

// Linearisation of the forward change of coordinates at the origin.
GridState<double> dG0(const GridState<double>& u, const BifurcationPoint& pt, const PhysicalParams& p);
GridState<double> dG0_inverse(const GridState<double>& u, const BifurcationPoint& pt,
                              const PhysicalParams& p);

enum class ChainCase { Hopf, R11, O2 };
const char* chain_case_name(ChainCase c);

struct EigenChain {
  ChainCase tag = ChainCase::Hopf;
  double k = 0.0;
  std::vector<GridState<std::complex<double>>> vectors;  // e_1, e_2, ...
  std::vector<GridState<std::complex<double>>> basis;    // W_1, W_2, ...
  std::map<std::string, double> gamma_values;
  std::vector<double> chain_residuals;
  std::vector<double> normalization_residuals;
};

// k is only read for the Hopf case.
EigenChain eigenchain(ChainCase tag, const BifurcationPoint& pt, const PhysicalParams& p, int n,
                      double k = 0.0);

double gamma1_closed(double k, const PhysicalParams& p);
std::pair<double, double> gamma12(double k, const PhysicalParams& p, int n = 48);

// Eigenvalues of the collocated L inside |Re| < strip, sorted by |Im|.
std::vector<std::complex<double>> discretized_spectrum(const BifurcationPoint& pt,
                                                       const PhysicalParams& p, int n,
                                                       double strip = -1.0);

}  // namespace wavestrata
