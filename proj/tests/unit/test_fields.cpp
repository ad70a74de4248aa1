#include <doctest.h>

#include <cmath>
#include <random>

#include "umbilic/errors.hpp"
#include "umbilic/fields.hpp"
#include "umbilic/kernels.hpp"

using namespace umbilic;

namespace {

MetricChart hopf() {
  return MetricChart::theta3(FunctionSpec1D::affine(0.0, 1.0, {0.05, M_PI / 2 - 0.05}));
}

Grid box_grid(const MetricChart& chart, int n) {
  std::vector<double> lo, hi;
  for (int i = 0; i < chart.dim(); ++i) {
    const Interval a = chart.box().sampling_axis(i);
    lo.push_back(a.lo + 0.02 * a.width());
    hi.push_back(a.hi - 0.02 * a.width());
  }
  return tensor_grid(lo, hi, std::vector<int>(chart.dim(), n));
}

}  // namespace

TEST_CASE("covariant matrix of xi") {
  const auto flat = MetricChart::theta3(FunctionSpec1D::constant(0.4));
  CHECK(covariant_matrix_at(flat, VectorFieldSpec::xi(), make_vec({0.1, 0.0, 0.0})).norm() == 0.0);

  // D_X xi = -theta' X x xi, so column j is -theta' (d_j x xi).
  const auto h = hopf();
  const Vec p = make_vec({M_PI / 4, 0.0, 0.0});
  const Mat m = covariant_matrix_at(h, VectorFieldSpec::xi(), p);
  const Vec xi = xi_components(h);
  for (int j = 0; j < 3; ++j) {
    const Vec expect = -1.0 * cross_product(h, p, unit_vec(3, j), xi);
    CHECK((m.col(j) - expect).norm() < 1e-12);
  }

  // Warped product: D_{d x1} d_u1 = (f'/f) d_u1.
  const auto cosf = FunctionSpec1D::sine_affine(0.0, 1.0, 1.0, M_PI / 2, {-1.5, 1.5});
  const auto wp = MetricChart::warped_product(cosf, 1, FiberPreset::flat);
  const Mat mu = covariant_matrix_at(wp, VectorFieldSpec::coordinate(2), make_vec({0.0, 0.3, 0.0}));
  CHECK(mu(2, 1) == doctest::Approx(-std::tan(0.3)).epsilon(1e-8));
}

TEST_CASE("xi has unit length") {
  const auto w = MetricChart::theta3(FunctionSpec1D::sine_affine(M_PI / 4, 0.2, 1.0, 0.0));
  for (const Vec& p : box_grid(w, 5)) {
    const Vec xi = VectorFieldSpec::xi().value(w, p);
    CHECK(std::abs(std::sqrt(inner(metric_at(w, p), xi, xi)) - 1.0) < 1e-12);
  }
  const auto cart = MetricChart::base2(FunctionSpec1D::constant(0.4));
  CHECK_THROWS_AS(xi_components(cart), GeometryError);
}

TEST_CASE("Killing defects") {
  const MetricChart charts[] = {
      hopf(),
      MetricChart::theta3(FunctionSpec1D::sine_affine(M_PI / 4, 0.2, 1.0, 0.0)),
      MetricChart::theta3(FunctionSpec1D::polynomial({M_PI / 4, 0.0, 0.1}, {-1.0, 1.0})),
  };
  for (const auto& c : charts) {
    const Grid g = box_grid(c, 5);
    CHECK(killing_defect(c, VectorFieldSpec::coordinate(1), g).killing);
    CHECK(killing_defect(c, VectorFieldSpec::coordinate(2), g).max_defect < 1e-10);
    CHECK(killing_defect(c, VectorFieldSpec::xi(), g).max_defect < 1e-10);
  }
  const auto r = killing_defect(hopf(), VectorFieldSpec::coordinate(0), box_grid(hopf(), 5));
  CHECK_FALSE(r.killing);
  CHECK(r.max_defect >= 0.4);
  for (double d : r.defects) CHECK(d >= 0.0);
}

TEST_CASE("closed conformal fields") {
  const auto cosf = FunctionSpec1D::sine_affine(0.0, 1.0, 1.0, M_PI / 2, {-1.5, 1.5});
  const auto wp = MetricChart::warped_product(cosf, 1, FiberPreset::flat);
  const auto field = VectorFieldSpec::linear_combination(
      {FunctionSpec1D::constant(0.0), cosf, FunctionSpec1D::constant(0.0)}, 1);
  const Grid g = tensor_grid({0.0, -1.2, -1.0}, {0.0, 1.2, 1.0}, {1, 7, 3});
  const auto r = closed_conformal_defect(wp, field, g, 1e-8, {1, 2});
  CHECK(r.closed_conformal);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(r.phi[i] == doctest::Approx(-std::sin(g[i](1))).epsilon(1e-10));
  }

  // phi(u) d_u on du^2 + phi(u)^2 dv^2 with phi = sin(2u)/2.
  const auto base = MetricChart::base2(FunctionSpec1D::affine(0.0, 1.0, {0.1, 1.4}));
  const auto half_sin = FunctionSpec1D::sine_affine(0.0, 0.5, 2.0, 0.0);
  const auto rb = closed_conformal_defect(
      base, VectorFieldSpec::linear_combination({half_sin, FunctionSpec1D::constant(0.0)}, 0),
      box_grid(base, 6));
  CHECK(rb.closed_conformal);

  const auto zero = VectorFieldSpec::linear_combination(
      {FunctionSpec1D::constant(0.0), FunctionSpec1D::constant(0.0), FunctionSpec1D::constant(0.0)});
  const auto rz = closed_conformal_defect(hopf(), zero, box_grid(hopf(), 3));
  CHECK(rz.max_residual == 0.0);

  const auto ry = closed_conformal_defect(hopf(), VectorFieldSpec::coordinate(1), box_grid(hopf(), 4));
  CHECK_FALSE(ry.closed_conformal);
  CHECK(ry.max_residual > 0.1);
}

TEST_CASE("twist of xi") {
  const auto h = hopf();
  for (double x : {0.2, 0.8, 1.3}) {
    CHECK(tau_at(h, VectorFieldSpec::xi(), make_vec({x, 0.4, -0.2})) == doctest::Approx(-1.0).epsilon(1e-8));
  }
  const auto flat = MetricChart::theta3(FunctionSpec1D::constant(0.4));
  CHECK(std::abs(tau_at(flat, VectorFieldSpec::xi(), make_vec({0.0, 0.0, 0.0}))) < 1e-15);

  const auto s = MetricChart::theta3(FunctionSpec1D::sine_affine(M_PI / 4, 0.1, 1.0, 0.0));
  const Vec p = make_vec({0.5, 0.1, 0.2});
  CHECK(tau_at(s, VectorFieldSpec::xi(), p) == doctest::Approx(-0.1 * std::cos(0.5)).epsilon(1e-8));

  // Independent of the choice of e.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  const double t0 = tau_at(s, VectorFieldSpec::xi(), p, make_vec({n(rng), n(rng), n(rng)}));
  const double t1 = tau_at(s, VectorFieldSpec::xi(), p, make_vec({n(rng), n(rng), n(rng)}));
  CHECK(std::abs(t0 - t1) < 1e-10);

  CHECK(std::abs(tau_derivative_along_field(s, VectorFieldSpec::xi(), p)) < 1e-6);

  try {
    tau_at(s, VectorFieldSpec::coordinate(0), p);
    FAIL("expected NotUnitKilling");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::not_unit_killing);
  }
}

TEST_CASE("coordinate Killing fields commute and split xi orthogonally") {
  const auto s = MetricChart::theta3(FunctionSpec1D::sine_affine(M_PI / 4, 0.1, 1.0, 0.0));
  for (const Vec& p : box_grid(s, 3)) {
    const Vec br = lie_bracket_at(s, VectorFieldSpec::coordinate(1), VectorFieldSpec::coordinate(2), p);
    CHECK(br.norm() < 1e-10);
    CHECK(inner(metric_at(s, p), unit_vec(3, 1), unit_vec(3, 2)) == 0.0);
  }
  const Vec p = make_vec({0.3, 0.0, 0.0});
  const auto x_field = VectorFieldSpec::sampled([](const Vec& q) { return make_vec({0.0, q(0), 0.0}); });
  const Vec br = lie_bracket_at(s, VectorFieldSpec::coordinate(0), x_field, p);
  CHECK(br(1) == doctest::Approx(1.0).epsilon(1e-8));
}
