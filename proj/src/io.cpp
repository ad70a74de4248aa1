#include "umbilic/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>

#include "umbilic/errors.hpp"

namespace umbilic {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_number(x).c_str(), nullptr);
}

Json numbers(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw GeometryError(ErrorCode::schema, path + ": " + what);
}

void require_object(const Json& j, const std::string& path, bool top_level,
                    const std::set<std::string>& allowed) {
  if (!j.is_object()) schema_error(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "schema" && !allowed.count(key)) schema_error(path + "." + key, "unknown field");
  }
  if (j.contains("schema")) {
    if (!j["schema"].is_number_integer() || j["schema"].get<int>() != kSchemaVersion) {
      schema_error(path + ".schema", "unsupported schema version");
    }
  } else if (top_level) {
    schema_error(path + ".schema", "missing field");
  }
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) schema_error(path + "." + key, "missing field");
  return j[key];
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

std::vector<double> as_numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

double bound(const Json& j, double inf, const std::string& path) {
  return j.is_null() ? inf : as_number(j, path);
}

Interval as_interval(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected [lo, hi]");
  const double inf = std::numeric_limits<double>::infinity();
  Interval a{bound(j[0], -inf, path + "[0]"), bound(j[1], inf, path + "[1]")};
  if (!(a.lo < a.hi)) schema_error(path, "empty interval");
  return a;
}

Json interval_json(const Interval& a) {
  return Json::array({number(a.lo), number(a.hi)});
}

bool top(const std::string& path) { return path.find('.') == std::string::npos; }

}  // namespace

Json function_to_json(const FunctionSpec1D& f) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = std::string(to_string(f.kind()));
  if (f.kind() == FunctionKind::tabulated_spline) {
    j["knots"] = numbers(f.knots());
    j["values"] = numbers(f.values());
  } else {
    j["parameters"] = numbers(f.parameters());
    j["domain"] = interval_json(f.domain());
  }
  return j;
}

FunctionSpec1D function_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const Json& kind_j = field(j, "kind", path);
  if (!kind_j.is_string()) schema_error(path + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "tabulated-spline") {
    require_object(j, path, top(path), {"kind", "knots", "values"});
    auto knots = as_numbers(field(j, "knots", path), path + ".knots");
    auto values = as_numbers(field(j, "values", path), path + ".values");
    if (knots.size() != values.size()) schema_error(path + ".values", "length differs from knots");
    try {
      return FunctionSpec1D::tabulated(std::move(knots), std::move(values));
    } catch (const GeometryError& e) {
      schema_error(path + ".knots", e.what());
    }
  }

  require_object(j, path, top(path), {"kind", "parameters", "domain"});
  const auto p = as_numbers(field(j, "parameters", path), path + ".parameters");
  const Interval dom = j.contains("domain") ? as_interval(j["domain"], path + ".domain") : Interval{};
  auto need = [&](std::size_t n) {
    if (p.size() != n) {
      schema_error(path + ".parameters",
                   "kind " + kind + " takes " + std::to_string(n) + " parameters");
    }
  };
  if (kind == "constant") {
    need(1);
    return FunctionSpec1D::constant(p[0], dom);
  }
  if (kind == "affine") {
    need(2);
    return FunctionSpec1D::affine(p[0], p[1], dom);
  }
  if (kind == "sine-affine") {
    need(4);
    return FunctionSpec1D::sine_affine(p[0], p[1], p[2], p[3], dom);
  }
  if (kind == "polynomial") {
    if (p.empty()) schema_error(path + ".parameters", "polynomial needs coefficients");
    return FunctionSpec1D::polynomial(p, dom);
  }
  if (kind == "tanh-bump") {
    need(3);
    return FunctionSpec1D::tanh_bump(p[0], p[1], p[2], dom);
  }
  if (kind == "exponential") {
    need(3);
    return FunctionSpec1D::exponential(p[0], p[1], p[2], dom);
  }
  schema_error(path + ".kind", "unknown function kind '" + kind + "'");
}

Json chart_to_json(const MetricChart& chart) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = std::string(to_string(chart.kind()));
  auto nested = [](const FunctionSpec1D& f) {
    Json n = function_to_json(f);
    n.erase("schema");
    return n;
  };
  switch (chart.kind()) {
    case ChartKind::theta3:
    case ChartKind::base2:
      j["theta"] = nested(chart.theta());
      break;
    case ChartKind::warped_product:
      j["f"] = nested(chart.warping());
      j["fiber_dim"] = chart.fiber_dim();
      j["fiber"] = std::string(to_string(chart.fiber()));
      break;
    case ChartKind::diagonal_axis:
      j["a"] = nested(chart.axis_a());
      j["b"] = nested(chart.axis_b());
      break;
    case ChartKind::conformal: {
      j["h"] = nested(chart.conformal_factor());
      Json base = chart_to_json(chart.conformal_base());
      base.erase("schema");
      j["base"] = base;
      break;
    }
  }
  Json box = Json::array();
  for (const auto& a : chart.box().axes) box.push_back(interval_json(a));
  j["box"] = box;
  return j;
}

MetricChart chart_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const Json& kind_j = field(j, "kind", path);
  if (!kind_j.is_string()) schema_error(path + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  const bool is_top = top(path);

  auto build = [&]() -> MetricChart {
    if (kind == "theta3" || kind == "base2") {
      require_object(j, path, is_top, {"kind", "theta", "box"});
      auto theta = function_from_json(field(j, "theta", path), path + ".theta");
      return kind == "theta3" ? MetricChart::theta3(theta) : MetricChart::base2(theta);
    }
    if (kind == "warped-product") {
      require_object(j, path, is_top, {"kind", "f", "fiber_dim", "fiber", "box"});
      auto f = function_from_json(field(j, "f", path), path + ".f");
      const Json& m = field(j, "fiber_dim", path);
      if (!m.is_number_integer()) schema_error(path + ".fiber_dim", "expected an integer");
      FiberPreset fiber = FiberPreset::flat;
      if (j.contains("fiber")) {
        const Json& fj = j["fiber"];
        if (fj == "flat") {
          fiber = FiberPreset::flat;
        } else if (fj == "round-unit-sphere") {
          fiber = FiberPreset::round_sphere;
        } else {
          schema_error(path + ".fiber", "expected \"flat\" or \"round-unit-sphere\"");
        }
      }
      return MetricChart::warped_product(f, m.get<int>(), fiber);
    }
    if (kind == "diagonal-axis") {
      require_object(j, path, is_top, {"kind", "a", "b", "box"});
      return MetricChart::diagonal_axis(function_from_json(field(j, "a", path), path + ".a"),
                                        function_from_json(field(j, "b", path), path + ".b"));
    }
    if (kind == "conformal") {
      require_object(j, path, is_top, {"kind", "h", "base", "box"});
      auto h = function_from_json(field(j, "h", path), path + ".h");
      return MetricChart::conformal(h, chart_from_json(field(j, "base", path), path + ".base"));
    }
    schema_error(path + ".kind", "unknown chart kind '" + kind + "'");
  };

  MetricChart chart = build();
  if (j.contains("box")) {
    const Json& bj = j["box"];
    if (!bj.is_array() || static_cast<int>(bj.size()) != chart.dim()) {
      schema_error(path + ".box", "expected one [lo, hi] per coordinate");
    }
    Box box;
    for (std::size_t i = 0; i < bj.size(); ++i) {
      box.axes.push_back(as_interval(bj[i], path + ".box[" + std::to_string(i) + "]"));
    }
    chart = chart.with_box(std::move(box));
  }
  return chart;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorCode::schema, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw GeometryError(ErrorCode::schema, path + ": " + e.what());
  }
}

Json to_json(const KillingReport& r) {
  Json j;
  j["check"] = "killing";
  j["killing"] = r.killing;
  j["tolerance"] = number(r.tolerance);
  j["max_defect"] = number(r.max_defect);
  j["worst_point"] = r.grid.empty() ? Json() : numbers(r.grid[r.worst_index]);
  j["points"] = r.grid.size();
  j["defects"] = numbers(r.defects);
  return j;
}

Json to_json(const ConformalReport& r) {
  Json j;
  j["check"] = "closed-conformal";
  j["closed_conformal"] = r.closed_conformal;
  j["tolerance"] = number(r.tolerance);
  j["max_residual"] = number(r.max_residual);
  j["factor"] = r.factor;
  j["worst_point"] = r.grid.empty() ? Json() : numbers(r.grid[r.worst_index]);
  j["phi"] = numbers(r.phi);
  j["residual"] = numbers(r.residual);
  return j;
}

Json to_json(const UmbilicityReport& r) {
  Json j;
  j["totally_umbilical"] = r.totally_umbilical;
  j["totally_geodesic"] = r.totally_geodesic;
  j["tolerance"] = number(r.tolerance);
  j["deviation"] = number(r.deviation);
  j["max_abs_eigenvalue"] = number(r.max_abs_eigenvalue);
  j["normal_orientation"] =
      r.orientation == NormalOrientation::positive ? "positive-frame" : "flipped";
  j["worst_point"] = r.grid.empty() ? Json() : numbers(r.grid[r.worst_index]);
  Json pts = Json::array();
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    Json p;
    p["q"] = numbers(r.grid[i]);
    p["eigenvalues"] = numbers(r.eigenvalues[i]);
    p["lambda_mean"] = number(r.mean_eigenvalue[i]);
    p["spread"] = number(r.spread[i]);
    pts.push_back(p);
  }
  j["points"] = pts;
  return j;
}

Json to_json(const SmoothnessReport& r) {
  Json j;
  j["target"] = std::string(to_string(r.target));
  j["pass"] = r.pass;
  const ConditionEntry* fail = r.first_failure();
  j["first_failure"] = fail ? Json(fail->name) : Json();
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x;
    x["condition"] = e.name;
    x["endpoint"] = e.endpoint;
    x["order"] = e.order;
    x["measured"] = number(e.measured);
    x["expected"] = number(e.expected);
    x["threshold"] = number(e.threshold);
    x["pass"] = e.pass;
    x["location"] = e.location ? number(*e.location) : Json();
    entries.push_back(x);
  }
  j["entries"] = entries;
  if (r.target == ClosureTarget::r3) {
    j["min_margin"] = number(r.min_margin);
    j["length_constant"] = number(r.length_constant);
    Json probes = Json::array();
    for (const auto& p : r.probes) {
      Json x;
      x["axis"] = p.axis;
      x["parameters"] = numbers(p.parameters);
      x["lengths"] = numbers(p.lengths);
      x["monotone"] = p.monotone;
      x["bounded_below"] = p.bounded_below;
      probes.push_back(x);
    }
    j["length_probes"] = probes;
    j["note"] = "completeness heuristic from sampled lengths, not a proof";
  } else {
    j["k_max"] = r.k_max;
    j["k_max_note"] = "even-order conditions checked up to order 2 k_max";
    j["tolerance"] = number(r.tolerance);
    j["c4_estimate"] = number(r.c4_estimate);
    j["phi_at_0"] = numbers(r.phi_at_0);
    j["psi_at_0"] = numbers(r.psi_at_0);
    j["phi_at_b"] = numbers(r.phi_at_b);
    j["psi_at_b"] = numbers(r.psi_at_b);
  }
  return j;
}

Json to_json(const ConstantCurvatureResult& r) {
  Json j;
  j["constant"] = r.alpha_squared.has_value();
  j["alpha_squared"] = r.alpha_squared ? number(*r.alpha_squared) : Json();
  j["class"] = r.curvature_class ? Json(std::string(to_string(*r.curvature_class))) : Json();
  j["mean_slope"] = number(r.mean_slope);
  j["max_slope_deviation"] = number(r.max_slope_deviation);
  Json spots = Json::array();
  for (const auto& s : r.spot_checks) {
    Json x;
    x["point"] = numbers(s.point);
    x["sectional"] = number(s.sectional);
    spots.push_back(x);
  }
  j["spot_checks"] = spots;
  j["spot_checks_pass"] = r.spot_checks_pass;
  return j;
}

Json profile_summary(const ProfileCurve& p) {
  Json j;
  j["c"] = number(p.c);
  j["step"] = number(p.step);
  j["samples"] = p.samples.size();
  j["length"] = number(p.length());
  j["domain_exit"] = p.domain_exit;
  j["max_drift"] = number(p.max_drift);
  j["step_halvings"] = p.halvings;
  return j;
}

void write_profile_csv(std::ostream& os, const ProfileCurve& p) {
  os << "s,x0,x1,theta,c_drift\n";
  for (const auto& st : p.samples) {
    os << format_number(st.s) << ',' << format_number(st.x0) << ',' << format_number(st.x1)
       << ',' << format_number(st.theta) << ',' << format_number(p.drift(st)) << '\n';
  }
}

void write_surface_csv(std::ostream& os, const MetricChart& chart, const ImmersionSpec& imm,
                       const UmbilicityReport& r) {
  for (int i = 0; i < imm.parameter_dim(); ++i) os << 'q' << i + 1 << ',';
  for (const auto& name : chart.coordinates()) os << name << ',';
  os << "lambda_mean,spread\n";
  for (std::size_t k = 0; k < r.grid.size(); ++k) {
    const Vec& q = r.grid[k];
    const Vec p = imm.point(q);
    for (Eigen::Index i = 0; i < q.size(); ++i) os << format_number(q(i)) << ',';
    for (Eigen::Index i = 0; i < p.size(); ++i) os << format_number(p(i)) << ',';
    os << format_number(r.mean_eigenvalue[k]) << ',' << format_number(r.spread[k]) << '\n';
  }
}

void write_mesh(std::ostream& os, const ImmersionSpec& imm, int nu, int nv) {
  if (nu < 2 || nv < 2) throw GeometryError(ErrorCode::invalid_argument, "mesh needs 2x2 points");
  const int k = imm.parameter_dim();
  const Interval a = imm.parameters().sampling_axis(0);
  const Interval b = k > 1 ? imm.parameters().sampling_axis(1) : Interval{0.0, 0.0};
  const auto us = linspace(a.lo, a.hi, nu);
  const auto vs = linspace(b.lo, b.hi, nv);
  Vec q(k);
  for (int i = 2; i < k; ++i) q(i) = imm.parameters().sampling_axis(i).midpoint();
  for (double u : us) {
    for (double v : vs) {
      q(0) = u;
      if (k > 1) q(1) = v;
      const Vec p = imm.point(q);
      os << 'v';
      for (int c = 0; c < 3; ++c) os << ' ' << format_number(c < p.size() ? p(c) : 0.0);
      os << '\n';
    }
  }
  auto id = [nv](int i, int j) { return i * nv + j + 1; };
  for (int i = 0; i + 1 < nu; ++i) {
    for (int j = 0; j + 1 < nv; ++j) {
      os << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << '\n';
      os << "f " << id(i, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << '\n';
    }
  }
}

}  // namespace umbilic
