#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "umbilic/connection.hpp"
#include "umbilic/curvature.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/geodesic.hpp"
#include "umbilic/kernels.hpp"

using namespace umbilic;

namespace {

MetricChart hopf() {
  return MetricChart::theta3(FunctionSpec1D::affine(0.0, 1.0, {0.05, M_PI / 2 - 0.05}));
}

MetricChart wobble(double amp = 0.2) {
  return MetricChart::theta3(FunctionSpec1D::sine_affine(M_PI / 4, amp, 1.0, 0.0));
}

}  // namespace

TEST_CASE("metric values") {
  const Mat g = metric_at(hopf(), make_vec({M_PI / 4, 0.0, 0.0}));
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(1, 1) == doctest::Approx(0.5));
  CHECK(g(2, 2) == doctest::Approx(0.5));
  CHECK(g(0, 1) == 0.0);

  const auto flat = MetricChart::warped_product(FunctionSpec1D::constant(1.0), 1, FiberPreset::flat);
  CHECK(metric_at(flat, make_vec({0.3, -2.0, 5.0})).isApprox(Mat::Identity(3, 3)));

  const auto base = MetricChart::base2(FunctionSpec1D::affine(0.0, 1.0, {0.05, M_PI / 2 - 0.05}));
  const Mat gb = metric_at(base, make_vec({M_PI / 4, 0.0}));
  CHECK(gb(1, 1) == doctest::Approx(0.25));

  const auto round = MetricChart::warped_product(FunctionSpec1D::constant(2.0), 2, FiberPreset::round_sphere);
  const Mat gr = metric_at(round, make_vec({0.0, 0.0, 1.0, 0.3}));
  CHECK(gr(2, 2) == doctest::Approx(4.0));
  CHECK(gr(3, 3) == doctest::Approx(4.0 * std::sin(1.0) * std::sin(1.0)));
}

TEST_CASE("chart validation rejects bad theta, warping and points") {
  CHECK_THROWS_AS(MetricChart::theta3(FunctionSpec1D::affine(0.0, 1.0, {-0.1, 1.0})), GeometryError);
  CHECK_THROWS_AS(MetricChart::warped_product(FunctionSpec1D::affine(0.0, 1.0, {-1.0, 1.0}), 1,
                                              FiberPreset::flat),
                  GeometryError);
  try {
    metric_at(hopf(), make_vec({2.0, 0.0, 0.0}));
    FAIL("expected OutOfDomain");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::out_of_domain);
  }
}

TEST_CASE("closed-form Christoffels match the hand-written oracle") {
  const auto chart = hopf();
  const Christoffel g = christoffel_at(chart, make_vec({M_PI / 4, 0.0, 0.0}), ChristoffelMethod::closed_form);
  CHECK(g(1, 0, 1) == doctest::Approx(1.0));
  CHECK(g(0, 1, 1) == doctest::Approx(-0.5));
  CHECK(g(0, 0, 0) == 0.0);

  const auto w = wobble();
  for (double x : {-0.7, 0.1, 0.9}) {
    const double t = M_PI / 4 + 0.2 * std::sin(x), dt = 0.2 * std::cos(x);
    const auto ref = oracle::theta3_christoffel(t, dt);
    const Christoffel c = christoffel_at(w, make_vec({x, 0.3, -0.4}), ChristoffelMethod::closed_form);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(c(k, i, j) == doctest::Approx(ref[k][i][j]).epsilon(1e-14));
  }

  const auto flat = MetricChart::theta3(FunctionSpec1D::constant(0.6));
  const Christoffel z = christoffel_at(flat, make_vec({0.0, 0.0, 0.0}), ChristoffelMethod::closed_form);
  CHECK(z.max_abs_difference(Christoffel(3)) == 0.0);
}

TEST_CASE("Christoffel methods agree and are symmetric") {
  const auto w = wobble();
  const Grid grid = tensor_grid({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, {4, 3, 3});
  for (const Vec& p : grid) {
    const auto cf = christoffel_at(w, p, ChristoffelMethod::closed_form);
    const auto fd = christoffel_at(w, p, ChristoffelMethod::finite_difference);
    const auto md = christoffel_at(w, p, ChristoffelMethod::metric_derivatives);
    CHECK(cf.max_abs_difference(fd) < 1e-6);
    CHECK(cf.max_abs_difference(md) < 1e-14);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(fd(k, i, j) == fd(k, j, i));
  }
  const auto wp = MetricChart::warped_product(FunctionSpec1D::constant(1.0), 1, FiberPreset::flat);
  CHECK_THROWS_AS(christoffel_at(wp, make_vec({0.0, 0.0, 0.0}), ChristoffelMethod::closed_form), GeometryError);
}

TEST_CASE("metric compatibility on every chart kind") {
  const auto cosf = FunctionSpec1D::sine_affine(0.0, 1.0, 1.0, M_PI / 2, {-1.4, 1.4});
  const MetricChart charts[] = {
      wobble(),
      MetricChart::warped_product(cosf, 2, FiberPreset::round_sphere),
      MetricChart::base2(FunctionSpec1D::sine_affine(M_PI / 4, 0.1, 1.0, 0.0)),
      MetricChart::diagonal_axis(FunctionSpec1D::exponential(0.0, 1.0, 1.0),
                                 FunctionSpec1D::exponential(1.0, 0.5, -1.0)),
      MetricChart::conformal(FunctionSpec1D::exponential(0.5, 1.0, 0.3),
                             MetricChart::warped_product(FunctionSpec1D::constant(1.0), 1, FiberPreset::flat)),
  };
  for (const auto& chart : charts) {
    const int d = chart.dim();
    Vec p(d);
    for (int i = 0; i < d; ++i) p(i) = 0.2 + 0.1 * i;
    const Christoffel gam = christoffel_at(chart, p, ChristoffelMethod::finite_difference);
    const Mat g = metric_at(chart, p);
    for (int l = 0; l < d; ++l) {
      const double h = 1e-4;
      Vec pp = p, pm = p;
      pp(l) += h;
      pm(l) -= h;
      const Mat dg = (chart.metric_unchecked(pp) - chart.metric_unchecked(pm)) / (2 * h);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          double r = dg(i, j);
          for (int k = 0; k < d; ++k) r -= gam(k, l, i) * g(k, j) + gam(k, l, j) * g(i, k);
          CHECK(std::abs(r) < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("sectional curvature") {
  const auto h = hopf();
  CHECK(sectional_curvature_at(h, make_vec({0.3, 0.0, 0.0}), unit_vec(3, 0), unit_vec(3, 1)) ==
        doctest::Approx(1.0).epsilon(1e-5));
  const auto flat = MetricChart::theta3(FunctionSpec1D::constant(0.7));
  CHECK(std::abs(sectional_curvature_at(flat, make_vec({0.1, 0.2, 0.3}), make_vec({1, 2, 0}),
                                        make_vec({0, 1, 3}))) < 1e-8);
  const auto lin = MetricChart::theta3(FunctionSpec1D::affine(M_PI / 4, 0.1, {0.0, 1.0}));
  CHECK(sectional_curvature_at(lin, make_vec({0.5, 0.0, 0.0}), unit_vec(3, 1), unit_vec(3, 2)) ==
        doctest::Approx(0.01).epsilon(1e-5));

  // Basis independence.
  const auto w = wobble();
  const Vec p = make_vec({0.4, 0.0, 0.0});
  const Vec a = make_vec({1.0, 0.3, -0.2}), b = make_vec({0.1, 1.0, 0.5});
  const double k1 = sectional_curvature_at(w, p, a, b);
  const double k2 = sectional_curvature_at(w, p, 2.0 * a - b, a + 3.0 * b);
  CHECK(std::abs(k1 - k2) < 1e-8);

  try {
    sectional_curvature_at(w, p, a, 2.0 * a);
    FAIL("expected DegeneratePlane");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::degenerate_plane);
  }
}

TEST_CASE("curvature matches the orthonormal-frame oracle") {
  const auto w = wobble();
  for (double x : {-0.8, 0.3, 1.2}) {
    const double t = M_PI / 4 + 0.2 * std::sin(x), dt = 0.2 * std::cos(x), ddt = -0.2 * std::sin(x);
    const auto ref = oracle::theta3_frame(t, dt, ddt);
    const Vec p = make_vec({x, 0.0, 0.0});
    const Vec e2 = unit_vec(3, 1) / std::sin(t), e3 = unit_vec(3, 2) / std::cos(t);
    CHECK(sectional_curvature_at(w, p, unit_vec(3, 0), e2) == doctest::Approx(ref.k12).epsilon(1e-6));
    CHECK(sectional_curvature_at(w, p, unit_vec(3, 0), e3) == doctest::Approx(ref.k13).epsilon(1e-6));
    CHECK(sectional_curvature_at(w, p, e2, e3) == doctest::Approx(ref.k23).epsilon(1e-6));
    CHECK(std::abs(scalar_curvature_at(w, p) - ref.scalar) < 1e-4);

    const auto lib = theta3_frame_curvature(w.theta(), x);
    CHECK(lib.scalar == doctest::Approx(ref.scalar).epsilon(1e-12));
  }
  CHECK(scalar_curvature_at(hopf(), make_vec({0.9, 0.0, 0.0})) == doctest::Approx(6.0).epsilon(1e-4));
  CHECK(std::abs(scalar_curvature_at(MetricChart::theta3(FunctionSpec1D::constant(0.3)),
                                     make_vec({0.0, 0.0, 0.0}))) < 1e-10);
}

TEST_CASE("scalar check flags the unit-coefficient formula") {
  const auto s = theta3_scalar_check(hopf(), make_vec({0.7, 0.0, 0.0}));
  CHECK(s.frame_oracle == doctest::Approx(6.0));
  CHECK(s.unit_coefficient_formula == doctest::Approx(1.0));
  CHECK(s.formula_gap == doctest::Approx(5.0));
  CHECK(s.formula_disagrees);
  CHECK(s.oracle_gap < 1e-4);

  const auto flat = theta3_scalar_check(MetricChart::theta3(FunctionSpec1D::constant(0.3)),
                                        make_vec({0.0, 0.0, 0.0}));
  CHECK_FALSE(flat.formula_disagrees);
}

TEST_CASE("constant-curvature family") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto chart = MetricChart::theta3(FunctionSpec1D::affine(0.1, alpha, {0.0, (M_PI / 2 - 0.2) / alpha}));
    const double x = 0.5 * (M_PI / 2 - 0.2) / alpha;
    const Vec p = make_vec({x, 0.1, 0.2});
    CHECK(sectional_curvature_at(chart, p, make_vec({1, 1, 0}), make_vec({0, 1, -1})) ==
          doctest::Approx(alpha * alpha).epsilon(1e-5));
  }
}

TEST_CASE("warped product curvature of a round sphere fiber") {
  // dx1^2 + sin^2(x1) g_S2 is the round 3-sphere.
  const auto f = FunctionSpec1D::sine_affine(0.0, 1.0, 1.0, 0.0, {0.2, 2.9});
  const auto chart = MetricChart::warped_product(f, 2, FiberPreset::round_sphere);
  const Vec p = make_vec({0.0, 1.0, 1.2, 0.4});
  CHECK(sectional_curvature_at(chart, p, unit_vec(4, 1), unit_vec(4, 2)) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(sectional_curvature_at(chart, p, unit_vec(4, 2), unit_vec(4, 3)) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(sectional_curvature_at(chart, p, unit_vec(4, 0), unit_vec(4, 2))) < 1e-8);
}

TEST_CASE("geodesics") {
  const auto w = wobble();
  const auto path = geodesic_integrate(w, make_vec({0.0, 0.5, 0.5}), unit_vec(3, 0), 1.0);
  const auto& end = path.samples.back();
  CHECK(end.point(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(end.point(1) == doctest::Approx(0.5).epsilon(1e-12));

  const auto flat = MetricChart::theta3(FunctionSpec1D::constant(M_PI / 6));
  const auto py = geodesic_integrate(flat, make_vec({0.0, 0.0, 0.0}), unit_vec(3, 1) / std::sin(M_PI / 6), 1.0);
  CHECK(py.samples.back().point(1) == doctest::Approx(2.0).epsilon(1e-12));

  const auto h = hopf();
  const double s = std::sin(M_PI / 4);
  const auto ph = geodesic_integrate(h, make_vec({M_PI / 4, 0.0, 0.0}), unit_vec(3, 1) / s, 0.5);
  CHECK(ph.max_speed_drift < 1e-7);
  CHECK_FALSE(ph.left_domain);

  const auto mid = geodesic_state_at(h, ph, 0.25);
  CHECK(mid.s == doctest::Approx(0.25));

  const auto out = geodesic_integrate(h, make_vec({1.4, 0.0, 0.0}), unit_vec(3, 0), 1.0);
  CHECK(out.left_domain);
  CHECK(out.samples.back().s < 0.2);

  CHECK_THROWS_AS(geodesic_integrate(h, make_vec({1.0, 0.0, 0.0}), make_vec({2.0, 0.0, 0.0}), 1.0), GeometryError);
}
