#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/structure.hpp"

using namespace umbilic;

TEST_CASE("closure conditions towards S3") {
  const auto r = closure_smoothness_check(FunctionSpec1D::affine(0.0, 1.0), M_PI / 2,
                                          ClosureTarget::s3);
  CHECK(r.pass);
  CHECK(r.first_failure() == nullptr);
  CHECK(r.phi_at_0.size() == 5);
  CHECK(r.phi_at_0[1] == doctest::Approx(1.0));
  CHECK(r.psi_at_b[1] == doctest::Approx(-1.0));

  const auto steep = closure_smoothness_check(FunctionSpec1D::affine(0.0, M_PI / 2), 1.0,
                                              ClosureTarget::s3);
  CHECK_FALSE(steep.pass);
  REQUIRE(steep.first_failure());
  CHECK(steep.first_failure()->name == "theta'(0) = 1");
  CHECK(steep.first_failure()->measured == doctest::Approx(M_PI / 2));

  const double b = (-1.0 + std::sqrt(1.0 + 2.0 * M_PI)) / 2.0;
  const auto quad = closure_smoothness_check(FunctionSpec1D::polynomial({0.0, 1.0, 1.0}), b,
                                             ClosureTarget::s3);
  REQUIRE(quad.first_failure());
  CHECK(quad.first_failure()->name == "theta''(0) = 0");
  CHECK(quad.first_failure()->measured == doctest::Approx(2.0));

  CHECK_THROWS_AS(closure_smoothness_check(FunctionSpec1D::affine(0.0, 1.0), M_PI / 2,
                                           ClosureTarget::s3, 3),
                  GeometryError);
}

TEST_CASE("closure conditions towards S2xR") {
  const auto sine = FunctionSpec1D::sine_affine(0.0, 1.0, 1.0, 0.0);
  CHECK(closure_smoothness_check(sine, M_PI, ClosureTarget::s2xr).pass);
  CHECK_FALSE(closure_smoothness_check(sine, M_PI, ClosureTarget::s3).pass);
  CHECK_FALSE(closure_smoothness_check(FunctionSpec1D::affine(0.0, 1.0), M_PI / 2,
                                       ClosureTarget::s2xr).pass);

  // S3 needs theta(b) = pi/2 while S2xR needs theta(b) = 0.
  for (const auto& th : {sine, FunctionSpec1D::affine(0.0, 1.0),
                         FunctionSpec1D::polynomial({0.0, 1.0, 0.0, -0.1})}) {
    for (double b : {1.0, M_PI / 2, M_PI}) {
      const bool s3 = closure_smoothness_check(th, b, ClosureTarget::s3).pass;
      const bool s2 = closure_smoothness_check(th, b, ClosureTarget::s2xr).pass;
      CHECK_FALSE((s3 && s2));
    }
  }
}

TEST_CASE("composite derivatives match finite differences") {
  const auto th = FunctionSpec1D::polynomial({0.3, 0.7, -0.2, 0.05});
  for (int shift : {0, 1}) {
    auto f = [&](double x) { return shift == 0 ? std::sin(th(x)) : std::cos(th(x)); };
    const auto d = trig_composite_derivatives(th, 0.4, 4, shift);
    CHECK(d[0] == doctest::Approx(f(0.4)));
    CHECK(std::abs(d[1] - oracle::d1(f, 0.4, 1e-3)) < 1e-9);
    CHECK(std::abs(d[2] - oracle::d2(f, 0.4, 1e-3)) < 1e-7);
  }
}

TEST_CASE("R3 admissibility") {
  const auto grid = std::vector<double>{-3.0, -1.5, 0.0, 1.5, 3.0};
  const auto c = r3_admissibility(FunctionSpec1D::constant(M_PI / 4), grid);
  CHECK(c.pass);
  CHECK(c.min_margin == doctest::Approx(M_PI / 4));
  CHECK(c.probes.size() == 3);
  for (const auto& p : c.probes) {
    CHECK(p.monotone);
    CHECK(p.bounded_below);
  }

  const auto t = r3_admissibility(FunctionSpec1D::tanh_bump(M_PI / 4, M_PI / 5, 1.0), grid);
  CHECK(t.pass);
  CHECK(t.min_margin == doctest::Approx(M_PI / 4 - M_PI / 5 * std::tanh(3.0)));

  const auto bad = r3_admissibility(FunctionSpec1D::affine(0.0, 1.0),
                                    {0.5, 1.0, M_PI / 2, 2.0});
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.first_failure());
  CHECK(bad.first_failure()->location.value() == doctest::Approx(M_PI / 2));
}

TEST_CASE("base curvature of the submersion") {
  const auto hopf = FunctionSpec1D::affine(0.0, 1.0);
  for (double u : {0.3, 0.7, 1.2}) {
    const auto k = base_gauss_curvature_at(hopf, u);
    CHECK(k.closed_form == doctest::Approx(4.0));
    CHECK(k.gap < 1e-5);
  }
  CHECK(base_gauss_curvature_at(FunctionSpec1D::constant(0.6), 0.2).closed_form == 0.0);
  const auto wobble = FunctionSpec1D::sine_affine(M_PI / 4, 0.2, 1.0, 0.0);
  for (double u : {-1.0, 0.0, 0.8}) CHECK(base_gauss_curvature_at(wobble, u).gap < 1e-6);
}

TEST_CASE("submersion is a Riemannian submersion") {
  const auto wobble = FunctionSpec1D::sine_affine(M_PI / 4, 0.2, 1.0, 0.0);
  const Vec p = make_vec({0.5, 0.1, -0.3});
  const double t = wobble(0.5);
  const double s = std::sin(t), c = std::cos(t);
  const Vec h = make_vec({0.0, c * c, -s * s}) / (s * c);
  CHECK(submersion_isometry_defect(wobble, p, h) < 1e-12);
  CHECK(submersion_isometry_defect(wobble, p, unit_vec(3, 0)) < 1e-12);
  const Vec mixed = (unit_vec(3, 0) + h) / std::sqrt(2.0);
  CHECK(submersion_isometry_defect(wobble, p, mixed) < 1e-12);
  CHECK(submersion_differential(make_vec({1.0, 2.0, 3.0})).isApprox(make_vec({1.0, -1.0})));
  try {
    submersion_isometry_defect(wobble, p, make_vec({0.0, 1.0, 1.0}));
    FAIL("expected NotHorizontal");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::not_horizontal);
  }
}

TEST_CASE("constant curvature detection") {
  const auto flat = constant_curvature_detect(FunctionSpec1D::constant(0.7), {-1.0, 1.0});
  REQUIRE(flat.alpha_squared);
  CHECK(*flat.alpha_squared == 0.0);
  CHECK(flat.curvature_class == CurvatureClass::flat);
  CHECK(flat.spot_checks_pass);

  for (double alpha : {0.5, 1.0, 2.0}) {
    const double hi = (M_PI / 2 - 0.2) / alpha;
    const auto r = constant_curvature_detect(FunctionSpec1D::affine(0.1, alpha), {0.0, hi});
    REQUIRE(r.alpha_squared);
    CHECK(*r.alpha_squared == doctest::Approx(alpha * alpha));
    CHECK(r.curvature_class == CurvatureClass::spherical);
    CHECK(r.spot_checks_pass);
    CHECK(r.spot_checks.size() == 3);
  }
  const auto a = constant_curvature_detect(FunctionSpec1D::affine(0.1, 1.0), {0.0, 1.3}, 1e-10, 7);
  const auto b = constant_curvature_detect(FunctionSpec1D::affine(0.1, 1.0), {0.0, 1.3}, 1e-10, 7);
  CHECK(a.spot_checks[0].point == b.spot_checks[0].point);

  const auto wobble = FunctionSpec1D::sine_affine(M_PI / 4, 0.2, 1.0, 0.0);
  const auto w = constant_curvature_detect(wobble, {-1.0, 1.0});
  CHECK_FALSE(w.alpha_squared);
  // Mean of 0.2 cos on [-1, 1] is 0.2 sin 1; the worst sample sits at the ends.
  CHECK(w.max_slope_deviation == doctest::Approx(0.2 * (std::sin(1.0) - std::cos(1.0))).epsilon(1e-2));
}

TEST_CASE("extrinsic curvature of level surfaces") {
  const auto hopf = level_surface_extrinsic_curvature(FunctionSpec1D::affine(0.0, 1.0), 0.6);
  CHECK(hopf.closed_form == doctest::Approx(-1.0));
  CHECK(hopf.gap < 1e-6);
  const auto flat = level_surface_extrinsic_curvature(FunctionSpec1D::constant(0.4), 0.0);
  CHECK(flat.closed_form == 0.0);
  CHECK(std::abs(flat.numeric) < 1e-8);
  const auto tilt = level_surface_extrinsic_curvature(FunctionSpec1D::affine(M_PI / 4, 0.1), 0.0);
  CHECK(tilt.closed_form == doctest::Approx(-0.01));
  CHECK(tilt.gap < 1e-6);
}
