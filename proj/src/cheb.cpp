#include "wavestrata/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "wavestrata/core.hpp"

namespace wavestrata {

namespace {

// Clenshaw-Curtis weights on [-1,1] (Trefethen, Spectral Methods in MATLAB).
Eigen::VectorXd clenshaw_curtis(int n) {
  const double pi = std::numbers::pi;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n - 1);
  Eigen::VectorXd theta(n + 1);
  for (int j = 0; j <= n; ++j) theta(j) = pi * j / n;
  if (n % 2 == 0) {
    w(0) = w(n) = 1.0 / (n * n - 1.0);
    for (int k = 1; k < n / 2; ++k)
      for (int j = 1; j < n; ++j) v(j - 1) -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
    for (int j = 1; j < n; ++j) v(j - 1) -= std::cos(n * theta(j)) / (n * n - 1.0);
  } else {
    w(0) = w(n) = 1.0 / (double(n) * n);
    for (int k = 1; k <= (n - 1) / 2; ++k)
      for (int j = 1; j < n; ++j) v(j - 1) -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
  }
  w.segment(1, n - 1) = 2.0 * v / n;
  return w;
}

// Indefinite integral from x = -1 through Chebyshev coefficients.
Eigen::MatrixXd cumulative_integral(int n, const Eigen::VectorXd& x) {
  const double pi = std::numbers::pi;
  // values -> coefficients
  Eigen::MatrixXd C(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const double ck = (k == 0 || k == n) ? 2.0 : 1.0;
    for (int j = 0; j <= n; ++j) {
      const double cj = (j == 0 || j == n) ? 2.0 : 1.0;
      C(k, j) = 2.0 / (n * ck * cj) * std::cos(pi * k * j / n);
    }
  }
  // coefficients a_0..a_n -> integral coefficients b_0..b_{n+1}
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + 2, n + 1);
  for (int m = 1; m <= n + 1; ++m) {
    if (m - 1 <= n) B(m, m - 1) += (m == 1 ? 2.0 : 1.0) / (2.0 * m);
    if (m + 1 <= n) B(m, m + 1) -= 1.0 / (2.0 * m);
  }
  // b_0 makes the antiderivative vanish at x = -1
  for (int m = 1; m <= n + 1; ++m) B.row(0) -= ((m % 2 == 0) ? 1.0 : -1.0) * B.row(m);
  Eigen::MatrixXd T(n + 1, n + 2);
  for (int i = 0; i <= n; ++i) {
    const double t = std::acos(std::clamp(x(i), -1.0, 1.0));
    for (int m = 0; m <= n + 1; ++m) T(i, m) = std::cos(m * t);
  }
  return T * B * C;
}

}  // namespace

ChebGrid build_cheb_grid(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Chebyshev grid needs N >= 2");
  const double pi = std::numbers::pi;
  ChebGrid g;
  g.n = n;
  Eigen::VectorXd x(n + 1);
  for (int j = 0; j <= n; ++j) x(j) = std::cos(pi * j / n);
  g.z = (x.array() + 1.0) / 2.0;

  Eigen::MatrixXd D(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    const double ci = ((i == 0 || i == n) ? 2.0 : 1.0) * ((i % 2) ? -1.0 : 1.0);
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double cj = ((j == 0 || j == n) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
      D(i, j) = ci / cj / (x(i) - x(j));
    }
  }
  for (int i = 0; i <= n; ++i) {
    D(i, i) = 0.0;
    D(i, i) = -D.row(i).sum();
  }
  g.D = 2.0 * D;
  g.D2 = g.D * g.D;
  g.w = clenshaw_curtis(n).transpose() / 2.0;
  g.Q = cumulative_integral(n, x) / 2.0;
  return g;
}

std::shared_ptr<const ChebGrid> grid_for(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ChebGrid>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto g = std::make_shared<const ChebGrid>(build_cheb_grid(n));
  cache.emplace(n, g);
  return g;
}

}  // namespace wavestrata
