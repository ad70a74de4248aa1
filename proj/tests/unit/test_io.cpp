#include <doctest.h>

#include <sstream>

#include "umbilic/constructor.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/io.hpp"

using namespace umbilic;

namespace {
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.code();
  }
  return ErrorCode::invalid_argument;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.what();
  }
  return {};
}
}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(M_PI) == "3.14159265359");
  CHECK(number(std::nan("")).is_null());
}

TEST_CASE("function specs round-trip") {
  const std::vector<FunctionSpec1D> fs = {
      FunctionSpec1D::constant(0.5),
      FunctionSpec1D::affine(0.25, 1.0, {0.0, 1.5}),
      FunctionSpec1D::sine_affine(0.75, 0.25, 2.0, 0.5),
      FunctionSpec1D::polynomial({0.5, 0.0, 0.125}, {-1.0, 1.0}),
      FunctionSpec1D::tanh_bump(0.75, 0.5, 2.0),
      FunctionSpec1D::exponential(0.0, 1.0, 1.0, {-10.0, 10.0}),
      FunctionSpec1D::tabulated({0.0, 0.5, 1.0, 1.5}, {0.25, 0.5, 1.0, 0.5}),
  };
  for (const auto& f : fs) {
    const Json j = function_to_json(f);
    const auto g = function_from_json(Json::parse(j.dump()));
    CHECK(g == f);
    CHECK(function_to_json(g).dump() == j.dump());
  }
}

TEST_CASE("chart specs round-trip") {
  const auto th = FunctionSpec1D::affine(0.0, 1.0, {0.05, 1.5});
  const std::vector<MetricChart> charts = {
      MetricChart::theta3(th),
      MetricChart::base2(th),
      MetricChart::warped_product(FunctionSpec1D::exponential(0.0, 1.0, 1.0), 2,
                                  FiberPreset::round_sphere),
      MetricChart::diagonal_axis(FunctionSpec1D::constant(1.0), FunctionSpec1D::constant(2.0)),
      MetricChart::conformal(FunctionSpec1D::constant(2.0),
                             MetricChart::warped_product(FunctionSpec1D::constant(1.0), 1,
                                                         FiberPreset::flat)),
  };
  for (const auto& c : charts) {
    const Json j = chart_to_json(c);
    CHECK(chart_to_json(chart_from_json(Json::parse(j.dump()))).dump() == j.dump());
  }
}

TEST_CASE("schema errors name the offending path") {
  Json f = function_to_json(FunctionSpec1D::constant(0.5));
  f["colour"] = "red";
  CHECK(code_of([&] { function_from_json(f); }) == ErrorCode::schema);
  CHECK(message_of([&] { function_from_json(f); }).find("function.colour") != std::string::npos);

  Json c = chart_to_json(MetricChart::theta3(FunctionSpec1D::constant(0.5)));
  c["theta"]["extra"] = 1;
  CHECK(message_of([&] { chart_from_json(c); }).find("chart.theta.extra") != std::string::npos);

  Json missing = function_to_json(FunctionSpec1D::constant(0.5));
  missing.erase("schema");
  CHECK(code_of([&] { function_from_json(missing); }) == ErrorCode::schema);

  Json version = function_to_json(FunctionSpec1D::constant(0.5));
  version["schema"] = 2;
  CHECK(code_of([&] { function_from_json(version); }) == ErrorCode::schema);

  Json kind = function_to_json(FunctionSpec1D::constant(0.5));
  kind["kind"] = "spline";
  CHECK(code_of([&] { function_from_json(kind); }) == ErrorCode::schema);

  CHECK(code_of([] { read_json_file("/nonexistent/file.json"); }) == ErrorCode::schema);
}

TEST_CASE("profile csv") {
  const auto pc = integrate_profile(FunctionSpec1D::constant(1.0), 0.0, 0.5, 0.0, 0.002);
  std::ostringstream os;
  write_profile_csv(os, pc);
  CHECK(os.str() == "s,x0,x1,theta,c_drift\n"
                    "0,0.5,0,0,0\n"
                    "0.001,0.5,0.001,0,0\n"
                    "0.002,0.5,0.002,0,0\n");
}
