#pragma once

#include <Eigen/Dense>
#include <memory>

namespace wavestrata {

// Chebyshev-Lobatto collocation on z in [0,1].  Node 0 sits at z = 1 and
// node N at z = 0, following the usual cos(j pi / N) ordering.
struct ChebGrid {
  int n = 0;
  Eigen::VectorXd z;
  Eigen::MatrixXd D;   // d/dz
  Eigen::MatrixXd D2;  // d^2/dz^2
  Eigen::RowVectorXd w;  // Clenshaw-Curtis weights, sum to 1
  Eigen::MatrixXd Q;   // (Q f)(z_i) = int_0^{z_i} f dz

  int size() const { return n + 1; }
  static constexpr int top = 0;  // index of z = 1
  int bottom() const { return n; }
};

ChebGrid build_cheb_grid(int n);

// Grids are built once per resolution and shared read-only.
std::shared_ptr<const ChebGrid> grid_for(int n);

}  // namespace wavestrata
