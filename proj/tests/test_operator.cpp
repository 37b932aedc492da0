#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wavestrata/curves.hpp"
#include "wavestrata/dispersion.hpp"
#include "wavestrata/operator.hpp"

using namespace wavestrata;
using wavestrata::testing::random_state;
using cd = std::complex<double>;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("symplectic form basics") {
  const auto g = grid_for(32);
  std::mt19937 rng(7);
  const auto u = random_state(g, rng, 1.0), v = random_state(g, rng, 1.0);
  CHECK(std::abs(symplectic_form(u, u)) < 1e-14);
  CHECK(symplectic_form(u, v) == doctest::Approx(-symplectic_form(v, u)).epsilon(1e-12));
  const auto other = zero_state<double>(grid_for(24));
  CHECK(code_of([&] { symplectic_form(u, other); }) == ErrorCode::GridMismatch);
}

TEST_CASE("eigenchains") {
  SUBCASE("Hopf") {
    const PhysicalParams p{0.5, 1.0};
    const CurvePoint cp = curve_point(CurveId::C2, 1.0, p);
    const EigenChain ch = eigenchain(ChainCase::Hopf, cp.point, p, 48, 1.0);
    for (double r : ch.chain_residuals) CHECK(r < 1e-8);
    for (double r : ch.normalization_residuals) CHECK(r < 1e-8);
    CHECK(ch.gamma_values.at("gamma1_quadrature") == doctest::Approx(ch.gamma_values.at("gamma1")).epsilon(1e-8));
    CHECK(std::abs(symplectic_form(ch.vectors[0], conj(ch.vectors[0]))) < 1e-10);
    CHECK(code_of([&] { eigenchain(ChainCase::Hopf, {cp.point.beta, cp.point.alpha + 0.1}, p, 48, 1.0); }) ==
          ErrorCode::CaseMismatch);
  }
  SUBCASE("R11") {
    const PhysicalParams p{0.5, 1.0};
    const EigenChain ch = eigenchain(ChainCase::R11, codim2_point(p), p, 48);
    for (double r : ch.chain_residuals) CHECK(r < 1e-8);
    for (double r : ch.normalization_residuals) CHECK(r < 1e-8);
    CHECK(ch.gamma_values.at("omega_e2_e3") == doctest::Approx(gamma3(p)).epsilon(1e-9));
    CHECK(ch.gamma_values.at("omega_e3_e4") == doctest::Approx(-gamma4(p)).epsilon(1e-9));
    CHECK(code_of([&] { eigenchain(ChainCase::R11, {0.9, 1.5}, p, 48); }) == ErrorCode::CaseMismatch);
  }
  SUBCASE("O2") {
    const PhysicalParams p{0.5, 1.0};
    const EigenChain ch = eigenchain(ChainCase::O2, {0.8, alpha0(p)}, p, 48);
    for (double r : ch.chain_residuals) CHECK(r < 1e-8);
    CHECK(ch.normalization_residuals[0] < 1e-10);
    CHECK(std::abs(ch.gamma_values.at("omega_e1_e2") - 0.3) < 1e-10);
  }
  SUBCASE("residuals shrink with N") {
    const PhysicalParams p{0.3, 2.0};
    const CurvePoint cp = curve_point(CurveId::C2, 1.5, p);
    const double r24 = eigenchain(ChainCase::Hopf, cp.point, p, 24, 1.5).chain_residuals[1];
    const double r48 = eigenchain(ChainCase::Hopf, cp.point, p, 48, 1.5).chain_residuals[1];
    CHECK(r48 <= std::max(r24, 1e-12));
  }
}

TEST_CASE("gamma1 and gamma2") {
  for (double rho : {0.2, 0.6})
    for (double h : {0.5, 1.5})
      for (double k : {0.5, 2.0}) {
        const auto [g1, g2] = gamma12(k, {rho, h});
        CHECK(g1 > 0.0);
        CHECK(g2 > 0.0);
      }
}

TEST_CASE("apply_L") {
  const PhysicalParams p{0.5, 1.0};
  const EigenChain ch = eigenchain(ChainCase::O2, {0.8, alpha0(p)}, p, 48);
  const BifurcationPoint pt{0.8, alpha0(p)};
  const auto& e1 = ch.vectors[0];
  const auto& e2 = ch.vectors[1];
  CHECK(norm_inf(apply_L(e1, pt, p)) < 1e-8);
  CHECK(norm_inf(apply_L(e2, pt, p) - e1) < 1e-8);
  const auto s = apply_L(cd(2.0, -1.0) * e1 + cd(0.5, 0.0) * e2, pt, p) -
                 (cd(2.0, -1.0) * apply_L(e1, pt, p) + cd(0.5, 0.0) * apply_L(e2, pt, p));
  CHECK(norm_inf(s) < 1e-12);

  std::mt19937 rng(3);
  const auto bad = random_state(grid_for(48), rng, 1.0);
  CHECK(code_of([&] { apply_L(bad, pt, p); }) == ErrorCode::BoundaryViolation);
  CHECK(code_of([&] { apply_L(e1, pt, PhysicalParams{0.0, 1.0}); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("v_H: linearisation, reversibility and the change of coordinates") {
  const PhysicalParams p{0.5, 1.0};
  const BifurcationPoint pt{0.8, 1.4};
  const auto g = grid_for(48);
  std::mt19937 rng(11);

  CHECK(norm_inf(apply_vH(zero_state<double>(g), pt, p)) < 1e-14);
  for (int i = 0; i < 5; ++i) {
    const auto u = random_state(g, rng, 1.0);
    const double e = 1e-5;
    const auto fd = (1.0 / (2.0 * e)) * (apply_vH(e * u, pt, p) - apply_vH((-e) * u, pt, p));
    CHECK(norm_inf(fd - apply_K(u, pt, p)) < 1e-6);

    const auto w = random_state(g, rng, 0.05);
    CHECK(norm_inf(apply_vH(reverser(w), pt, p) + reverser(apply_vH(w, pt, p))) < 1e-10);

    const auto s = random_state(g, rng, 1e-2);
    const auto back = change_coords(change_coords(s, Direction::Forward, pt, p), Direction::Inverse, pt, p);
    CHECK(norm_inf(back - s) < 1e-10);
    CHECK(norm_inf(dG0_inverse(dG0(s, pt, p), pt, p) - s) < 1e-10);
  }
  CHECK(norm_inf(change_coords(zero_state<double>(g), Direction::Forward, pt, p)) < 1e-15);

  auto far = zero_state<double>(g);
  far.eta = 1.5;
  CHECK(code_of([&] { apply_vH(far, pt, p); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("discretized spectrum against the dispersion relation") {
  const PhysicalParams p{0.5, 1.0};
  for (auto [b, a] : {std::pair{0.3, 1.6}, {0.3, 1.45}, {0.7, 1.4}, {0.7, 1.6}}) {
    const DispersionContext ctx{p, {b, a}};
    const auto sig = spectral_signature(ctx);
    const auto ev = discretized_spectrum({b, a}, p, 64);
    for (const auto& r : sig.roots) {
      double best = 1e300;
      for (const cd& e : ev) best = std::min(best, std::abs(e - r.location));
      CHECK(best < 1e-6);
    }
    // symmetric under negation and conjugation
    for (const cd& e : ev) {
      double dn = 1e300, dc = 1e300;
      for (const cd& f : ev) {
        dn = std::min(dn, std::abs(f + e));
        dc = std::min(dc, std::abs(f - std::conj(e)));
      }
      CHECK(dn < 1e-8);
      CHECK(dc < 1e-8);
    }
  }
}
