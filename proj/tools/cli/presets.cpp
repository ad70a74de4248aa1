#include "presets.hpp"

#include <cmath>

#include "umbilic/errors.hpp"
#include "umbilic/io.hpp"

namespace cli {

using umbilic::ErrorCode;
using umbilic::FunctionSpec1D;
using umbilic::GeometryError;
using umbilic::Interval;
using umbilic::MetricChart;

namespace {

bool is_inline(const std::string& arg) { return !arg.empty() && arg.front() == '{'; }

umbilic::Json parse_arg(const std::string& arg) {
  if (!is_inline(arg)) return umbilic::read_json_file(arg);
  try {
    return umbilic::Json::parse(arg);
  } catch (const nlohmann::json::parse_error& e) {
    throw GeometryError(ErrorCode::schema, std::string("inline json: ") + e.what());
  }
}

}  // namespace

FunctionSpec1D theta_preset(const std::string& name) {
  if (name == "hopf") return FunctionSpec1D::affine(0.0, 1.0);
  if (name == "const") return FunctionSpec1D::constant(M_PI / 4);
  if (name == "wobble") return FunctionSpec1D::sine_affine(M_PI / 4, 0.2, 1.0, 0.0);
  if (name == "bump") return FunctionSpec1D::polynomial({M_PI / 4, 0.0, 0.1});
  throw GeometryError(ErrorCode::invalid_argument, "unknown theta preset '" + name + "'");
}

FunctionSpec1D warping_preset(const std::string& name) {
  if (name == "one") return FunctionSpec1D::constant(1.0);
  if (name == "cos") return FunctionSpec1D::sine_affine(0.0, 1.0, 1.0, M_PI / 2, {-1.55, 1.55});
  if (name == "exp") return FunctionSpec1D::exponential(0.0, 1.0, 1.0, {-10.0, 10.0});
  throw GeometryError(ErrorCode::invalid_argument, "unknown warping preset '" + name + "'");
}

FunctionSpec1D load_theta(const std::string& arg) {
  if (arg == "hopf" || arg == "const" || arg == "wobble" || arg == "bump") {
    return theta_preset(arg);
  }
  return umbilic::function_from_json(parse_arg(arg), "theta");
}

FunctionSpec1D load_warping(const std::string& arg) {
  if (arg == "one" || arg == "cos" || arg == "exp") return warping_preset(arg);
  return umbilic::function_from_json(parse_arg(arg), "f");
}

MetricChart load_chart(const std::string& arg) {
  if (arg == "hopf") {
    return MetricChart::theta3(theta_preset("hopf").restricted({0.05, M_PI / 2 - 0.05}));
  }
  if (arg == "bump") return MetricChart::theta3(theta_preset("bump").restricted({-1.0, 1.0}));
  if (arg == "const" || arg == "wobble") return MetricChart::theta3(theta_preset(arg));
  if (arg.rfind("warped-", 0) == 0) {
    return MetricChart::warped_product(warping_preset(arg.substr(7)), 1,
                                       umbilic::FiberPreset::flat);
  }
  return umbilic::chart_from_json(parse_arg(arg), "chart");
}

}  // namespace cli
