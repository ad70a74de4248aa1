#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/function.hpp"
#include "umbilic/spline.hpp"

using namespace umbilic;

TEST_CASE("analytic kinds evaluate their formulas and derivatives") {
  const auto id = FunctionSpec1D::affine(0.0, 1.0);
  CHECK(id.eval(0.7, 1) == 1.0);
  CHECK(id.eval(0.7, 2) == 0.0);

  const auto wob = FunctionSpec1D::sine_affine(M_PI / 4, 0.2, 1.0, 0.0);
  CHECK(wob.eval(0.0, 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(wob.eval(0.3) == doctest::Approx(M_PI / 4 + 0.2 * std::sin(0.3)));

  const auto poly = FunctionSpec1D::polynomial({1.0, -2.0, 0.5, 3.0, 0.25});
  CHECK(poly.eval(2.0) == doctest::Approx(1 - 4 + 2 + 24 + 4));
  CHECK(poly.eval(2.0, 4) == doctest::Approx(6.0));
  CHECK(poly.eval(2.0, 3) == doctest::Approx(18.0 + 0.25 * 24 * 2));
}

TEST_CASE("closed-form derivatives agree with finite differences") {
  const FunctionSpec1D fns[] = {
      FunctionSpec1D::sine_affine(0.3, 0.7, 1.3, 0.2),
      FunctionSpec1D::tanh_bump(0.5, 0.4, 1.7),
      FunctionSpec1D::exponential(0.2, 1.5, -0.8),
      FunctionSpec1D::polynomial({0.1, 0.2, -0.3, 0.4, 0.5}),
  };
  for (const auto& f : fns) {
    for (double x : {-0.9, -0.2, 0.35, 1.1}) {
      for (int k = 0; k < 4; ++k) {
        const oracle::Fn g = [&](double t) { return f.eval(t, k); };
        CHECK(f.eval(x, k + 1) == doctest::Approx(oracle::d1(g, x)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("domain and order errors") {
  const auto f = FunctionSpec1D::affine(0.0, 1.0, {0.0, 1.0});
  CHECK_THROWS_AS(f.eval(1.5), GeometryError);
  try {
    f.eval(1.5);
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::out_of_domain);
  }
  try {
    f.eval(0.5, 5);
    FAIL("expected UnsupportedOrder");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::unsupported_order);
  }
  CHECK(f.eval_unchecked(1.5) == 1.5);
}

TEST_CASE("tabulated spline of x^2 recovers the second derivative") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 20; ++i) {
    xs.push_back(i * 0.05);
    ys.push_back(xs.back() * xs.back());
  }
  const auto f = FunctionSpec1D::tabulated(xs, ys);
  CHECK(f.eval(0.5, 2) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(f.eval(0.37) == doctest::Approx(0.37 * 0.37).epsilon(1e-12));
  CHECK(f.exact(2));
  CHECK_FALSE(f.exact(3));
  CHECK(std::abs(f.eval(0.5, 3)) < 1e-4);
}

TEST_CASE("not-a-knot spline reproduces cubics") {
  std::vector<double> xs{0.0, 0.3, 0.7, 1.0, 1.6};
  std::vector<double> ys;
  auto c = [](double x) { return 1.0 - x + 2 * x * x - 0.5 * x * x * x; };
  for (double x : xs) ys.push_back(c(x));
  CubicSpline s(xs, ys);
  for (double x : {0.1, 0.5, 0.9, 1.3}) {
    CHECK(s.eval(x, 0) == doctest::Approx(c(x)).epsilon(1e-12));
    CHECK(s.eval(x, 1) == doctest::Approx(-1 + 4 * x - 1.5 * x * x).epsilon(1e-11));
  }
}

TEST_CASE("restriction and equality") {
  const auto f = FunctionSpec1D::affine(0.0, 1.0);
  const auto g = f.restricted({0.1, 0.2});
  CHECK(g.domain().lo == 0.1);
  CHECK_FALSE(f == g);
  CHECK(g == f.restricted({0.1, 0.2}));
  CHECK_THROWS_AS(g.restricted({0.0, 0.15}), GeometryError);
}
