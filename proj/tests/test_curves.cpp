#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wavestrata/curves.hpp"

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

}  // namespace

TEST_CASE("C2 spot value for the single-layer case") {
  const CurvePoint cp = curve_point(CurveId::C2, 1.0, {0.0, 1.0});
  CHECK(cp.point.beta == doctest::Approx(0.29449).epsilon(2e-5));
  CHECK(cp.point.alpha == doctest::Approx(1.01855).epsilon(2e-5));
  CHECK(cp.res_f < 1e-10);
  CHECK(cp.res_fp < 1e-10);
}

TEST_CASE("small-k limits approach the codim-2 point") {
  for (double rho : {0.0, 0.3, 0.6, 0.9})
    for (double h : {0.5, 1.0, 2.0}) {
      const PhysicalParams p{rho, h};
      for (CurveId id : {CurveId::C1, CurveId::C2}) {
        const CurvePoint cp = curve_point(id, 1e-3, p);
        CHECK(std::hypot(cp.point.beta - beta0(p), cp.point.alpha - alpha0(p)) < 1e-5);
        // beta error falls by ~4 and alpha error by ~16 when k halves
        const auto [b1, a1] = curve_offset(id, 2e-3, p);
        const auto [b2, a2] = curve_offset(id, 1e-3, p);
        CHECK(b1 / b2 == doctest::Approx(4.0).epsilon(0.01));
        CHECK(a1 / a2 == doctest::Approx(16.0).epsilon(0.01));
      }
    }
}

TEST_CASE("C3 points and domains") {
  const PhysicalParams p{0.4, 1.5};
  const CurvePoint cp = curve_point(CurveId::C3, beta0(p) + 0.5, p);
  CHECK(cp.point.alpha == alpha0(p));
  CHECK(cp.res_f < 1e-15);
  CHECK(code_of([&] { curve_point(CurveId::C3, beta0(p) - 0.1, p); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { curve_point(CurveId::C1, std::numbers::pi / 1.5, p); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { curve_point(CurveId::C2, -1.0, p); }) == ErrorCode::OutOfDomain);
  CHECK(parse_curve("c2") == CurveId::C2);
  CHECK(code_of([] { parse_curve("c4"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("refine_double_root") {
  const PhysicalParams p{0.3, 0.8};
  for (CurveId id : {CurveId::C1, CurveId::C2}) {
    const CurvePoint exact = curve_point(id, 0.9, p);
    const CurvePoint same = refine_double_root(exact, p);
    CHECK(std::abs(same.point.alpha - exact.point.alpha) < 1e-13);
    CHECK(std::abs(same.k0 - exact.k0) < 1e-13);

    CurvePoint moved = exact;
    moved.point.alpha += 1e-4;
    const CurvePoint back = refine_double_root(moved, p);
    CHECK(std::max(back.res_f, back.res_fp) < 1e-12);
    CHECK(back.point.alpha == doctest::Approx(exact.point.alpha).epsilon(1e-9));

    CurvePoint held = exact;
    held.point.beta += 1e-4;
    const CurvePoint hb = refine_double_root(held, p, HoldFixed::Alpha);
    CHECK(std::max(hb.res_f, hb.res_fp) < 1e-12);

    CurvePoint far = exact;
    far.point.alpha += 0.5;
    CHECK(code_of([&] { refine_double_root(far, p); }) == ErrorCode::NoConvergence);
  }
}

TEST_CASE("sample_curve") {
  const PhysicalParams p{0.6, 2.0};
  const auto pts = sample_curve(CurveId::C2, 0.2, 4.0, 50, p, 3);
  REQUIRE(pts.size() == 50);
  const CurvePoint a = curve_point(CurveId::C2, 0.2, p), b = curve_point(CurveId::C2, 4.0, p);
  CHECK(pts.front().point.alpha == a.point.alpha);
  CHECK(pts.back().point.beta == b.point.beta);
  for (const auto& cp : pts) CHECK(std::max(cp.res_f, cp.res_fp) < 1e-9);

  const auto serial = sample_curve(CurveId::C2, 0.2, 4.0, 50, p, 1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].point.beta == serial[i].point.beta);
    CHECK(pts[i].point.alpha == serial[i].point.alpha);
  }
}

TEST_CASE("taylor_check") {
  CHECK(taylor_check({0.0, 1.0}).beta_coeff == doctest::Approx(2.0 / 45.0).epsilon(1e-6));
  CHECK(taylor_check({0.5, 2.0}).beta_coeff == doctest::Approx(2.0 * 8.5 / 45.0).epsilon(1e-6));
  const PhysicalParams p{0.3, 0.7};
  CHECK(taylor_check(p).alpha_coeff == doctest::Approx(gamma3(p)).epsilon(1e-4));
}
