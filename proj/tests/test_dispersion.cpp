#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wavestrata/curves.hpp"
#include "wavestrata/dispersion.hpp"

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

SignatureLabel label_at(const PhysicalParams& p, double beta, double alpha) {
  return spectral_signature({p, {beta, alpha}}).label;
}

}  // namespace

TEST_CASE("F at the origin and on the imaginary axis") {
  const DispersionContext ctx{{0.5, 2.0}, {0.7, 1.3}};
  CHECK(std::abs(disp_eval({0.0, 0.0}, 0, ctx) - cplx(0.5 + 0.5 - 1.3, 0.0)) < 1e-15);
  for (double k : {0.01, 0.3, 1.0, 4.0, 12.0}) {
    const double ref = k * (0.5 / std::tanh(k) + 1.0 / std::tanh(2.0 * k)) - 1.3 - 0.7 * k * k;
    const cplx f = disp_eval({0.0, k}, 0, ctx);
    CHECK(std::abs(f - ref) < 1e-14 * std::max(1.0, std::abs(ref)));
    CHECK(std::abs(f.imag()) < 1e-13);
    CHECK(disp_imag(k, 0, ctx) == doctest::Approx(ref).epsilon(1e-14));
  }
  for (double x : {0.1, 0.7, 1.4})
    CHECK(std::abs(disp_eval({x, 0.0}, 0, ctx).imag()) < 1e-13);
}

TEST_CASE("derivatives match central differences") {
  const DispersionContext ctx{{0.3, 0.8}, {0.6, 1.5}};
  const double e = 1e-6;
  for (double x : {0.2, 0.9, 1.7}) {
    CHECK(disp_real(x, 1, ctx) == doctest::Approx((disp_real(x + e, 0, ctx) - disp_real(x - e, 0, ctx)) / (2 * e)).epsilon(1e-7));
    CHECK(disp_real(x, 2, ctx) == doctest::Approx((disp_real(x + e, 1, ctx) - disp_real(x - e, 1, ctx)) / (2 * e)).epsilon(1e-6));
    CHECK(disp_imag(x, 1, ctx) == doctest::Approx((disp_imag(x + e, 0, ctx) - disp_imag(x - e, 0, ctx)) / (2 * e)).epsilon(1e-7));
    CHECK(disp_imag(x, 2, ctx) == doctest::Approx((disp_imag(x + e, 1, ctx) - disp_imag(x - e, 1, ctx)) / (2 * e)).epsilon(1e-6));
    const cplx lam(x, 0.4);
    const cplx fd = (disp_eval(lam + e, 0, ctx) - disp_eval(lam - e, 0, ctx)) / (2 * e);
    CHECK(std::abs(disp_eval(lam, 1, ctx) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("pole guard") {
  const DispersionContext ctx{{0.5, 1.0}, {0.7, 1.3}};
  CHECK(code_of([&] { disp_eval({std::numbers::pi, 0.0}, 0, ctx); }) == ErrorCode::NearPole);
}

TEST_CASE("double root on C2 at k = 1") {
  const PhysicalParams p{0.0, 1.0};
  const CurvePoint cp = curve_point(CurveId::C2, 1.0, p);
  const DispersionContext ctx{p, cp.point};
  CHECK(std::abs(disp_eval({0.0, 1.0}, 0, ctx)) < 1e-10);
  CHECK(std::abs(disp_eval({0.0, 1.0}, 1, ctx)) < 1e-10);
}

TEST_CASE("axis roots") {
  const PhysicalParams p{0.5, 1.0};
  SUBCASE("zero root is double on C3") {
    const DispersionContext ctx{p, {beta0(p) + 0.2, alpha0(p)}};
    const auto r = axis_roots(Axis::Real, ctx, default_strip_halfwidth(p), default_strip_halfwidth(p) / 4000);
    REQUIRE(r.size() == 2);
    CHECK(r[0].location == cplx(0.0, 0.0));
    CHECK(r[0].multiplicity == 2);
    CHECK(r[1].multiplicity == 1);
    CHECK(r[1].location.real() > 0.0);
    CHECK(std::abs(disp_real(r[1].location.real(), 0, ctx)) < 1e-10);
  }
  SUBCASE("below C2: two simple imaginary roots") {
    const CurvePoint cp = curve_point(CurveId::C2, 1.0, p);
    const DispersionContext ctx{p, {cp.point.beta, cp.point.alpha - 1e-3}};
    const double M = imag_scan_bound(ctx);
    const auto r = axis_roots(Axis::Imaginary, ctx, M, M / 8000);
    REQUIRE(r.size() == 2);
    CHECK(r[0].multiplicity == 1);
    CHECK(r[1].multiplicity == 1);
    CHECK(r[0].location.imag() < 1.0);
    CHECK(r[1].location.imag() > 1.0);
  }
  SUBCASE("on C2: one double imaginary root") {
    const CurvePoint cp = curve_point(CurveId::C2, 1.0, p);
    const DispersionContext ctx{p, cp.point};
    const double M = imag_scan_bound(ctx);
    const auto r = axis_roots(Axis::Imaginary, ctx, M, M / 8000);
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 2);
    CHECK(r[0].location.imag() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(disp_imag(r[0].location.imag(), 0, ctx)) < 1e-10);
    CHECK(std::abs(disp_imag(r[0].location.imag(), 1, ctx)) < 1e-8);
  }
}

TEST_CASE("argument-principle count") {
  const PhysicalParams p{0.5, 1.0};
  const CurvePoint cp = curve_point(CurveId::C2, 1.0, p);
  const DispersionContext ctx{p, cp.point};
  CHECK(count_roots_rect(ctx, 1.0, 4.0) == 4);
  CHECK(count_roots_rect(ctx, 1.0, 4.0, 1e-12) == 4);

  // count equals the multiplicities found by root localization
  const DispersionContext q{p, {0.6, 1.6}};
  const SpectralSignature s = spectral_signature(q);
  CHECK(s.contour_count == full_multiplicity(s.roots));
  for (const auto& r : s.roots) {
    if (r.axis != Axis::OffAxis) continue;
    CHECK(std::abs(disp_eval(-r.location, 0, q)) < 1e-10);
    CHECK(std::abs(disp_eval(std::conj(r.location), 0, q)) < 1e-10);
  }
}

TEST_CASE("signatures across the curves") {
  const PhysicalParams p{0.5, 1.0};
  const CurvePoint c2 = curve_point(CurveId::C2, 1.0, p);
  CHECK(label_at(p, c2.point.beta, c2.point.alpha + 1e-3) == SignatureLabel::ComplexQuartet);
  CHECK(label_at(p, c2.point.beta, c2.point.alpha - 1e-3) == SignatureLabel::TwoImagPairs);
  CHECK(label_at(p, beta0(p) + 0.2, alpha0(p)) == SignatureLabel::ZeroDoublePlusRealPair);
  const CurvePoint c1 = curve_point(CurveId::C1, 1.0, p);
  CHECK(label_at(p, c1.point.beta, c1.point.alpha + 1e-3) == SignatureLabel::ComplexQuartet);
  CHECK(label_at(p, c1.point.beta, c1.point.alpha - 1e-3) == SignatureLabel::TwoRealPairs);
}
