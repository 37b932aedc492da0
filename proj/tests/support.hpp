#pragma once

#include <random>

#include "wavestrata/operator.hpp"

namespace wavestrata::testing {

// Smooth random state: low-degree polynomials in z, mean-free phi, Gamma
// vanishing at z = 0.  Largest coefficient is about `amp`.
inline GridState<double> random_state(const std::shared_ptr<const ChebGrid>& g, std::mt19937& rng,
                                      double amp) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto poly = [&] {
    Eigen::ArrayXd r = Eigen::ArrayXd::Zero(g->size());
    Eigen::ArrayXd zp = Eigen::ArrayXd::Ones(g->size());
    for (int j = 0; j < 5; ++j, zp *= g->z.array()) r += U(rng) * zp;
    return Eigen::VectorXd(amp * r / 5.0);
  };
  GridState<double> u = zero_state<double>(g);
  u.eta = amp * U(rng);
  u.s2 = amp * U(rng);
  u.f1 = poly();
  u.f2 = poly();
  u.g1 = g->z.cwiseProduct(poly());
  u.g2 = g->z.cwiseProduct(poly());
  project_mean(u);
  return u;
}

}  // namespace wavestrata::testing
