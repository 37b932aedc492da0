#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "wavestrata/odes.hpp"

using namespace wavestrata;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::vector<ReducedSystem> all_kinds() {
  const PhysicalParams p{0.2, 2.0};
  return {make_r11(p, 0.1), make_r11_cubic(p, 0.1, 0.3), make_o2(p, 1.0), make_o2_critical(p, 1.0, 0.3),
          make_quartic(-2.0, 1.0, 0.5)};
}

}  // namespace

TEST_CASE("origin is an equilibrium with zero energy") {
  for (const auto& s : all_kinds()) {
    const Eigen::VectorXd z = Eigen::VectorXd::Zero(s.dim());
    CHECK(reduced_rhs(s, z).norm() == 0.0);
    CHECK(reduced_energy(s, z) == 0.0);
    CHECK(code_of([&] { reduced_rhs(s, Eigen::VectorXd::Zero(3)); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { reduced_energy(s, Eigen::VectorXd::Zero(3)); }) == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("vector fields are the symplectic gradients of the energies") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (const auto& s : all_kinds()) {
    if (s.kind == SystemKind::QuarticGeneric) continue;
    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXd y(s.dim());
      for (int i = 0; i < s.dim(); ++i) y(i) = U(rng);
      Eigen::VectorXd grad(s.dim());
      const double e = 1e-6;
      for (int i = 0; i < s.dim(); ++i) {
        Eigen::VectorXd yp = y, ym = y;
        yp(i) += e;
        ym(i) -= e;
        grad(i) = (reduced_energy(s, yp) - reduced_energy(s, ym)) / (2 * e);
      }
      // pairs (Q_i, P_i): Q' = dH/dP, P' = -dH/dQ
      Eigen::VectorXd f(s.dim());
      for (int i = 0; i < s.dim(); i += 2) {
        f(i) = grad(i + 1);
        f(i + 1) = -grad(i);
      }
      CHECK((f - reduced_rhs(s, y)).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("reversibility of the vector fields") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (const auto& s : all_kinds()) {
    Eigen::VectorXd y(s.dim());
    for (int i = 0; i < s.dim(); ++i) y(i) = U(rng);
    const Eigen::VectorXd lhs = reduced_rhs(s, reduced_reverser(s, y));
    const Eigen::VectorXd rhs = -reduced_reverser(s, reduced_rhs(s, y));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(reduced_energy(s, reduced_reverser(s, y)) == doctest::Approx(reduced_energy(s, y)).epsilon(1e-14));
  }
}

TEST_CASE("R11 linearisation has double eigenvalues +-1 at delta = 0") {
  const auto J = reduced_jacobian_at_zero(make_r11({0.5, 1.0}, 0.0));
  const Eigen::VectorXcd ev = J.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(std::abs(ev(i).real()) - 1.0) < 1e-6);
    CHECK(std::abs(ev(i).imag()) < 1e-6);
  }
}

TEST_CASE("explicit O2 orbits") {
  const PhysicalParams p{0.2, 2.0};
  const double beta = 1.0;
  const double A = *scalar_invariants(p, beta).bigA;
  const Eigen::Vector2d y0 = explicit_o2(ExplicitKind::Plain, 0.0, p, beta);
  CHECK(y0(0) == -1.0 / A);
  CHECK(y0(1) == 0.0);
  CHECK(explicit_o2(ExplicitKind::Plain, 60.0, p, beta).norm() < 1e-20);

  const auto plain = make_o2(p, beta);
  const auto crit = make_o2_critical(p, beta, 0.3);
  for (int i = 0; i <= 300; ++i) {
    const double X = -15.0 + 0.1 * i;
    const auto y = explicit_o2(ExplicitKind::Plain, X, p, beta);
    CHECK((explicit_o2_derivative(ExplicitKind::Plain, X, p, beta) - reduced_rhs(plain, y)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(reduced_energy(plain, y)) < 1e-10);
    for (auto k : {ExplicitKind::CriticalPlus, ExplicitKind::CriticalMinus}) {
      const auto yc = explicit_o2(k, X, p, beta, 0.3);
      CHECK((explicit_o2_derivative(k, X, p, beta, 0.3) - reduced_rhs(crit, yc)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(reduced_energy(crit, yc)) < 1e-12);
    }
  }
  // the analytic derivative is the derivative of the closed form
  const double e = 1e-5;
  for (double X : {-2.0, 0.5, 3.0}) {
    const Eigen::Vector2d fd = (explicit_o2(ExplicitKind::CriticalPlus, X + e, p, beta, 0.3) -
                                explicit_o2(ExplicitKind::CriticalPlus, X - e, p, beta, 0.3)) /
                               (2 * e);
    CHECK((fd - explicit_o2_derivative(ExplicitKind::CriticalPlus, X, p, beta, 0.3)).norm() < 1e-8);
  }
  CHECK(code_of([] { explicit_o2(ExplicitKind::Plain, 0.0, {0.25, 2.0}, 1.0); }) == ErrorCode::CriticalRatioDegenerate);
}

TEST_CASE("integration: tracking, conservation, reversibility, order") {
  const PhysicalParams p{0.2, 0.5};
  const double beta = 0.6;
  const auto sys = make_o2(p, beta);
  auto err = [&](double dt) {
    const Eigen::VectorXd y0 = explicit_o2(ExplicitKind::Plain, -15.0, p, beta);
    const Trajectory tr = integrate(sys, y0, 30.0, dt, -15.0);
    double m = 0.0;
    for (std::size_t i = 0; i < tr.x.size(); ++i)
      m = std::max(m, (tr.y[i] - explicit_o2(ExplicitKind::Plain, tr.x[i], p, beta)).cwiseAbs().maxCoeff());
    return m;
  };
  const double e1 = err(0.1), e2 = err(0.05);
  CHECK(err(1e-3) < 1e-6);
  CHECK(e1 / e2 >= 16.0 / 1.5);

  const Eigen::VectorXd y0 = explicit_o2(ExplicitKind::Plain, -20.0, p, beta);
  const Trajectory tr = integrate(sys, y0, 40.0, 1e-3, -20.0);
  CHECK(std::abs(reduced_energy(sys, tr.y.back()) - reduced_energy(sys, y0)) < 1e-8);

  const auto r11 = make_r11({0.5, 1.0}, 0.1);
  Eigen::VectorXd s0(4);
  s0 << 0.1, -0.05, 0.02, 0.03;
  const Trajectory fw = integrate(r11, s0, 2.0, 1e-3);
  const Trajectory bw = integrate(r11, reduced_reverser(r11, fw.y.back()), 2.0, 1e-3);
  CHECK((bw.y.back() - reduced_reverser(r11, s0)).cwiseAbs().maxCoeff() < 1e-8);
  const Trajectory neg = integrate(r11, fw.y.back(), -2.0, 1e-3);
  CHECK((neg.y.back() - s0).cwiseAbs().maxCoeff() < 1e-8);

  CHECK(code_of([&] { integrate(sys, y0, 1.0, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("homoclinic orbit of the quadratic quartic") {
  const HomoclinicOrbit o = solve_homoclinic(-2.0, 1.0, 0.0);
  CHECK(o.max_residual < 1e-8);
  CHECK(o.energy_deviation < 1e-8);
  CHECK(o.end_decay < 1e-6);
  CHECK(o.symmetry_tag == SymmetryTag::Even);
  CHECK(o.sign_tag == SignTag::Positive);
  CHECK(o.at_zero()(0) == doctest::Approx(1.45436749).epsilon(1e-7));
  // one critical point: u' changes sign once, at X = 0
  int crit = 0;
  for (std::size_t i = 1; i < o.y.size(); ++i)
    if ((o.y[i - 1](1) > 0) != (o.y[i](1) > 0) && std::abs(o.y[i](0)) > 1e-3) ++crit;
  CHECK(crit == 1);
  for (std::size_t i = 0; i < o.y.size(); ++i) CHECK(std::abs(o.y[i](0) - o.y[o.y.size() - 1 - i](0)) < 1e-8);
}

TEST_CASE("cubic quartic: two opposite orbits and transversality") {
  const HomoclinicOrbit u = solve_homoclinic(-2.0, 0.0, 1.0);
  const auto g = default_homoclinic_guess(-2.0, 0.0, 1.0);
  HomoclinicOptions opts;
  opts.guess = std::make_pair(-g.first, -g.second);
  const HomoclinicOrbit v = solve_homoclinic(-2.0, 0.0, 1.0, opts);
  CHECK(u.max_residual < 1e-8);
  CHECK(v.max_residual < 1e-8);
  CHECK(u.sign_tag == SignTag::Positive);
  CHECK(v.sign_tag == SignTag::Negative);
  for (std::size_t i = 0; i < u.y.size(); i += 50) CHECK(std::abs(u.y[i](0) + v.y[i](0)) < 1e-8);
  const double l = transversality_l(u);
  CHECK(l > 0.0);
  CHECK(transversality_l(v) == doctest::Approx(l).epsilon(1e-10));
  CHECK(transversality_l(negate(u)) == doctest::Approx(l).epsilon(1e-14));

  HomoclinicOrbit bad = u;
  bad.y[10](0) = -0.5;
  bad.sign_tag = SignTag::SignChanging;
  CHECK(code_of([&] { transversality_l(bad); }) == ErrorCode::NotSingleSigned);
  HomoclinicOrbit skew = u;
  skew.y[skew.y.size() / 2](1) = 1e-3;
  CHECK(code_of([&] { transversality_l(skew); }) == ErrorCode::NotSymmetric);
}

TEST_CASE("homoclinic preconditions") {
  CHECK(code_of([] { solve_homoclinic(2.5, 1.0, 0.0); }) == ErrorCode::NonHyperbolic);
  CHECK(code_of([] { solve_homoclinic(2.0, 1.0, 0.0); }) == ErrorCode::NonHyperbolic);
  CHECK(code_of([] { solve_homoclinic(-2.0, 0.0, -1.0); }) == ErrorCode::NoConvergence);
}

TEST_CASE("physical profiles") {
  std::vector<double> xs;
  for (int i = 0; i <= 400; ++i) xs.push_back(-40.0 + 0.2 * i);
  auto minmax = [](const Profile& pr) {
    return std::pair{*std::min_element(pr.eta.begin(), pr.eta.end()), *std::max_element(pr.eta.begin(), pr.eta.end())};
  };

  ProfileParams pp;
  pp.beta = 1.0;
  pp.delta = 0.01;
  pp.p = {0.2, 2.0};  // rho < 1/h^2
  auto [lo, hi] = minmax(physical_profile(ProfileCase::O2, xs, pp));
  CHECK(lo < 0.0);
  CHECK(hi <= 0.0);
  pp.p = {0.3, 2.0};  // rho > 1/h^2
  std::tie(lo, hi) = minmax(physical_profile(ProfileCase::O2, xs, pp));
  CHECK(hi > 0.0);
  CHECK(lo >= 0.0);

  pp.p = {0.2, 2.0};
  std::tie(lo, hi) = minmax(physical_profile(ProfileCase::R11, xs, pp));
  CHECK(std::abs(lo) > std::abs(hi));
  pp.p = {0.3, 2.0};
  std::tie(lo, hi) = minmax(physical_profile(ProfileCase::R11, xs, pp));
  CHECK(std::abs(hi) > std::abs(lo));

  pp.p = {0.25, 2.0};
  pp.kappa = 0.3;
  std::tie(lo, hi) = minmax(physical_profile(ProfileCase::O2CriticalPlus, xs, pp));
  CHECK(lo > 0.0);
  std::tie(lo, hi) = minmax(physical_profile(ProfileCase::O2CriticalMinus, xs, pp));
  CHECK(hi < 0.0);
  CHECK_NOTHROW(physical_profile(ProfileCase::R11Critical, xs, pp));

  pp.p = {0.0, 1.0};
  pp.k = 1.0;
  const Profile hb = physical_profile(ProfileCase::HopfBright, xs, pp);
  CHECK(std::abs(hb.eta[200]) > std::abs(hb.eta.front()));
  pp.delta = -0.01;
  CHECK(code_of([&] { physical_profile(ProfileCase::HopfBright, xs, pp); }) == ErrorCode::SignMismatch);
  CHECK(parse_profile_case("o2-critical-plus") == ProfileCase::O2CriticalPlus);
}
