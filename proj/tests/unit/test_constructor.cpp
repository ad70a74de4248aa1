#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "umbilic/constructor.hpp"
#include "umbilic/errors.hpp"

using namespace umbilic;

namespace {
const FunctionSpec1D kOne = FunctionSpec1D::constant(1.0);
const FunctionSpec1D kCos = FunctionSpec1D::sine_affine(0.0, 1.0, 1.0, M_PI / 2, {-1.55, 1.55});
const FunctionSpec1D kExp = FunctionSpec1D::exponential(0.0, 1.0, 1.0, {-10.0, 10.0});
}  // namespace

TEST_CASE("trivial profiles") {
  const auto vertical = integrate_profile(kOne, 0.3, 0.0, M_PI / 2, 1.0);
  for (const auto& st : vertical.samples) {
    CHECK(st.theta == doctest::Approx(M_PI / 2));
    CHECK(st.x1 == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(st.x0 == doctest::Approx(st.s).epsilon(1e-12));
  }
  const auto flat = integrate_profile(kOne, 0.3, 0.5, 0.0, 1.0);
  CHECK(flat.c == 0.0);
  CHECK(flat.samples.back().x0 == 0.5);
  CHECK(flat.samples.back().x1 == doctest::Approx(1.3));
}

TEST_CASE("profile invariants") {
  const auto pc = integrate_profile(kExp, 0.0, 0.0, std::asin(0.2), 5.0, 1e-3);
  CHECK(pc.c == doctest::Approx(0.2));
  CHECK(pc.max_drift < 1e-8);
  CHECK_FALSE(pc.domain_exit);
  const double h = pc.step;
  for (std::size_t i = 1; i + 1 < pc.samples.size(); i += 97) {
    const auto& a = pc.samples[i - 1];
    const auto& b = pc.samples[i + 1];
    const double th = pc.samples[i].theta;
    CHECK(std::abs((b.x0 - a.x0) / (2 * h) - std::sin(th)) < 10 * h * h);
    CHECK(std::abs((b.x1 - a.x1) / (2 * h) - std::cos(th)) < 10 * h * h);
  }
  const auto st = pc.state_at(2.3456);
  CHECK(std::abs(std::sin(st.theta) - pc.c * std::exp(st.x1)) < 1e-8);
  CHECK(pc.theta_prime(1.0) == doctest::Approx(std::sin(pc.state_at(1.0).theta)));
  CHECK_THROWS_AS(pc.state_at(6.0), GeometryError);
}

TEST_CASE("profile leaving the domain stops with a flag") {
  const auto pc = integrate_profile(kCos, 0.0, 0.0, M_PI / 6, 2.0, 1e-3);
  CHECK(pc.domain_exit);
  CHECK(pc.length() > 1.6);
  CHECK(pc.length() < 1.7);
  CHECK(pc.max_drift < 1e-9);
}

TEST_CASE("coarse steps breach conservation") {
  try {
    integrate_profile(kCos, 0.0, 0.0, M_PI / 6, 2.0, 0.5);
    FAIL("expected ConservationBreach");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::conservation_breach);
    CHECK(e.location().has_value());
  }
}

TEST_CASE("fourth-order convergence of the drift") {
  const auto a = integrate_profile(kExp, 0.0, 0.0, M_PI / 3, 5.0, 1e-2);
  const auto b = integrate_profile(kExp, 0.0, 0.0, M_PI / 3, 5.0, 5e-3);
  CHECK(a.max_drift / b.max_drift > 12.0);
}

TEST_CASE("umbilical immersions") {
  const auto flat = MetricChart::warped_product(kOne, 1, FiberPreset::flat);
  const auto pc = integrate_profile(kOne, 0.0, 0.0, M_PI / 4, 2.0);
  const auto imm = build_umbilical_immersion(flat, pc);
  const auto r = umbilicity_report(flat, imm, parameter_grid(imm, {7, 3}));
  CHECK(r.deviation < 1e-8);
  CHECK(r.max_abs_eigenvalue < 1e-8);

  const auto wc = MetricChart::warped_product(kCos, 1, FiberPreset::flat);
  const auto pcos = integrate_profile(kCos, -1.2, 0.0, std::asin(0.5 * std::cos(1.2)), 2.0);
  const auto ic = build_umbilical_immersion(wc, pcos);
  const auto rc = umbilicity_report(wc, ic, parameter_grid(ic, {9, 3}));
  CHECK(rc.totally_umbilical);
  CHECK(rc.max_abs_eigenvalue > 0.1);

  const auto we = MetricChart::warped_product(kExp, 2, FiberPreset::round_sphere);
  const auto pe = integrate_profile(kExp, 0.0, 0.0, std::asin(0.2), 3.0);
  const auto ie = build_umbilical_immersion(we, pe);
  const auto re = umbilicity_report(we, ie, parameter_grid(ie, {7, 3, 3}));
  CHECK(re.deviation < 1e-6);

  try {
    build_umbilical_immersion(wc, pe);
    FAIL("expected MismatchedWarping");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::mismatched_warping);
  }
}

TEST_CASE("conformal reparameterization") {
  const auto one = conformal_to_product(kOne, {-1.0, 2.0}, 0.5);
  CHECK(one.s_of_t.eval(1.7) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(one.h.eval(0.3) == doctest::Approx(1.0).epsilon(1e-12));

  const auto ex = conformal_to_product(kExp, {-1.0, 2.0}, 0.0);
  CHECK(std::abs(ex.s_of_t.eval(0.0)) < 1e-15);
  CHECK(ex.h.eval(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (double t : {-0.9, -0.3, 0.45, 1.0, 1.9}) {
    const double s = oracle::exp_antiderivative(t);
    CHECK(std::abs(ex.s_of_t.eval(t) - s) < 1e-8);
    CHECK(std::abs(ex.h.eval(s) - 1.0 / (1.0 - s)) < 1e-8);
    CHECK(std::abs(ex.t_of_s.eval(s) - t) < 1e-8);
  }

  const auto c = conformal_to_product(kCos, {-1.5, 1.5}, 0.0);
  CHECK(std::abs(c.s_of_t.eval(0.5) - oracle::sec_antiderivative(0.5)) < 1e-8);
  for (double t : {-1.2, 0.1, 1.3}) CHECK(std::abs(c.h.eval(c.s_of_t.eval(t)) - kCos.eval(t)) < 1e-8);

  try {
    conformal_to_product(FunctionSpec1D::affine(0.0, 1.0), {-1.0, 1.0}, 0.5);
    FAIL("expected NonPositiveWarping");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::non_positive_warping);
  }
}

TEST_CASE("level surfaces") {
  const auto bump = MetricChart::theta3(FunctionSpec1D::polynomial({M_PI / 4, 0.0, 0.1}, {-1.0, 1.0}));
  const auto a = build_level_surface(bump, 0.0);
  CHECK(*a.metadata().expected_totally_geodesic);
  CHECK(umbilicity_report(bump, a, parameter_grid(a, {3, 3}), 1e-8).totally_geodesic);

  const auto hopf = MetricChart::theta3(FunctionSpec1D::affine(0.0, 1.0, {0.05, M_PI / 2 - 0.05}));
  const auto b = build_level_surface(hopf, M_PI / 4);
  CHECK_FALSE(*b.metadata().expected_totally_geodesic);
  CHECK(*b.metadata().expected_shape_determinant == doctest::Approx(-1.0));
  CHECK_FALSE(umbilicity_report(hopf, b, parameter_grid(b, {3, 3}), 1e-8).totally_geodesic);

  const auto flat = MetricChart::theta3(FunctionSpec1D::constant(0.5));
  for (double x0 : {-0.8, 0.0, 2.0}) {
    const auto c = build_level_surface(flat, x0);
    CHECK(umbilicity_report(flat, c, parameter_grid(c, {3, 3}), 1e-8).totally_geodesic);
  }
  CHECK_THROWS_AS(build_level_surface(hopf, 2.0), GeometryError);
}

TEST_CASE("flow-swept surfaces") {
  const auto flat = MetricChart::theta3(FunctionSpec1D::constant(0.5));
  const auto a = build_tg_flow_surface(flat, make_vec({0.0, 0.0, 0.0}), unit_vec(3, 0), 1.0);
  const auto ra = umbilicity_report(flat, a, parameter_grid(a, {5, 5}), 1e-8);
  CHECK(ra.totally_geodesic);

  const auto bump = MetricChart::theta3(FunctionSpec1D::polynomial({M_PI / 4, 0.0, 0.1}, {-1.0, 1.0}));
  const double t = M_PI / 4;
  Vec dir = make_vec({0.0, 1.0 / std::sin(t), -1.0 / std::cos(t)});
  dir /= std::sqrt(inner(metric_at(bump, make_vec({0.0, 0.0, 0.0})), dir, dir));
  const auto b = build_tg_flow_surface(bump, make_vec({0.0, 0.0, 0.0}), dir, 1.0);
  CHECK(umbilicity_report(bump, b, parameter_grid(b, {5, 5}), 1e-8).totally_geodesic);

  const auto hopf = MetricChart::theta3(FunctionSpec1D::affine(0.0, 1.0, {0.05, M_PI / 2 - 0.05}));
  try {
    build_tg_flow_surface(hopf, make_vec({0.5, 0.0, 0.0}), unit_vec(3, 0), 0.5);
    FAIL("expected TauNonzeroOnGeodesic");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::tau_nonzero_on_geodesic);
    CHECK(*e.location() == 0.0);
  }
  try {
    build_tg_flow_surface(flat, make_vec({0.0, 0.0, 0.0}), make_vec({0.0, 1.0, 1.0}), 0.5);
    FAIL("expected NotOrthogonal");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::not_orthogonal);
  }
}
