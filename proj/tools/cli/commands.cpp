#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "log.hpp"
#include "presets.hpp"
#include "umbilic/connection.hpp"
#include "umbilic/constructor.hpp"
#include "umbilic/curvature.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/fields.hpp"
#include "umbilic/geodesic.hpp"
#include "umbilic/hypersurface.hpp"
#include "umbilic/io.hpp"
#include "umbilic/kernels.hpp"
#include "umbilic/structure.hpp"

namespace cli {

using namespace umbilic;
namespace fs = std::filesystem;

namespace {

fs::path output_dir(const Options& o) {
  fs::path p(o.out);
  fs::create_directories(p);
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GeometryError(ErrorCode::invalid_argument, "cannot write " + path.string());
  out << text;
  debug("wrote " + path.string());
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

double tol_or(const Options& o, double fallback) { return o.tol > 0.0 ? o.tol : fallback; }
int grid_or(const Options& o, int fallback) { return o.grid > 0 ? o.grid : fallback; }

std::string fmt(double x) { return format_number(x); }

Vec parse_vec(const std::string& text, const std::string& what) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw GeometryError(ErrorCode::invalid_argument, what + ": cannot parse '" + item + "'");
    }
  }
  if (xs.empty() || xs.size() > static_cast<std::size_t>(kMaxDim)) {
    throw GeometryError(ErrorCode::invalid_argument, what + ": expected 1 to 4 numbers");
  }
  Vec v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

// Grid over the chart box with n points per axis, pulled in by `inset` of the
// sampling width so stencils stay near the box.
Grid chart_grid(const MetricChart& chart, int n, double inset) {
  std::vector<double> lo, hi;
  for (int i = 0; i < chart.dim(); ++i) {
    const Interval a = chart.box().sampling_axis(i);
    lo.push_back(a.lo + inset * a.width());
    hi.push_back(a.hi - inset * a.width());
  }
  return tensor_grid(lo, hi, std::vector<int>(static_cast<std::size_t>(chart.dim()), n));
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace

int cmd_inspect(const Options& o) {
  const MetricChart chart = load_chart(o.chart.empty() ? "hopf" : o.chart);
  const int d = chart.dim();
  const auto& names = chart.coordinates();
  const Grid grid = chart_grid(chart, grid_or(o, 5), 0.0);
  const bool theta3 = chart.kind() == ChartKind::theta3;
  const ChristoffelMethod method =
      has_closed_form(chart) ? ChristoffelMethod::closed_form : ChristoffelMethod::metric_derivatives;

  std::ostringstream head;
  for (const auto& n : names) head << n << ',';
  for (int i = 0; i < d; ++i) head << "g_" << names[i] << names[i] << ',';
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) head << "Gamma^" << names[k] << '_' << names[i] << names[j] << ',';
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) head << "K_" << names[i] << names[j] << ',';
  }
  head << "scalar";
  if (theta3) head << ",scalar_frame_oracle,oracle_gap,scalar_unit_coeff_formula,unit_coeff_gap";
  head << '\n';

  struct Row {
    std::string text;
    std::vector<double> sectional;
    double scalar = 0.0;
    double oracle_gap = 0.0;
    bool disagrees = false;
  };
  const auto rows = map_grid<Row>(grid.size(), [&](std::size_t idx) {
    const Vec& p = grid[idx];
    Row r;
    std::ostringstream line;
    for (int i = 0; i < d; ++i) line << fmt(p(i)) << ',';
    const Mat g = metric_at(chart, p);
    for (int i = 0; i < d; ++i) line << fmt(g(i, i)) << ',';
    const Christoffel gamma = christoffel_at(chart, p, method);
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) line << fmt(gamma(k, i, j)) << ',';
      }
    }
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const double k = sectional_curvature_at(chart, p, unit_vec(d, i), unit_vec(d, j));
        r.sectional.push_back(k);
        line << fmt(k) << ',';
      }
    }
    if (theta3) {
      const ScalarCurvatureCheck s = theta3_scalar_check(chart, p);
      r.scalar = s.finite_difference;
      r.oracle_gap = s.oracle_gap;
      r.disagrees = s.formula_disagrees;
      line << fmt(s.finite_difference) << ',' << fmt(s.frame_oracle) << ',' << fmt(s.oracle_gap)
           << ',' << fmt(s.unit_coefficient_formula) << ',' << fmt(s.formula_gap);
    } else {
      r.scalar = scalar_curvature_at(chart, p);
      line << fmt(r.scalar);
    }
    line << '\n';
    r.text = line.str();
    return r;
  });

  std::string csv = head.str();
  double kmin = INFINITY, kmax = -INFINITY, smin = INFINITY, smax = -INFINITY, gap = 0.0;
  std::size_t disagree = 0;
  for (const Row& r : rows) {
    csv += r.text;
    for (double k : r.sectional) {
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
    }
    smin = std::min(smin, r.scalar);
    smax = std::max(smax, r.scalar);
    gap = std::max(gap, r.oracle_gap);
    if (r.disagrees) ++disagree;
  }
  const fs::path dir = output_dir(o);
  write_text(dir / "inspect.csv", csv);

  Json summary;
  summary["command"] = "inspect";
  summary["chart"] = chart_to_json(chart);
  summary["christoffel_method"] = std::string(to_string(method));
  summary["points"] = grid.size();
  summary["sectional_min"] = number(kmin);
  summary["sectional_max"] = number(kmax);
  summary["scalar_min"] = number(smin);
  summary["scalar_max"] = number(smax);
  if (theta3) {
    summary["scalar_oracle_max_gap"] = number(gap);
    summary["unit_coeff_formula_disagreements"] = disagree;
  }
  write_json(dir / "inspect.json", summary);

  info("inspect: " + std::to_string(grid.size()) + " points, coordinate-plane sectional curvature in [" +
       fmt(kmin) + ", " + fmt(kmax) + "], scalar in [" + fmt(smin) + ", " + fmt(smax) + "]");
  if (theta3) {
    info("scalar curvature vs frame oracle 6 theta'^2 - 4 cot(2 theta) theta'': max gap " + fmt(gap));
    if (disagree > 0) {
      info("unit-coefficient formula theta'^2 - 4 cot(2 theta) theta'' disagrees with the frame value at " +
           std::to_string(disagree) + " of " + std::to_string(grid.size()) + " points");
    }
  }
  return kOk;
}

int cmd_build_umbilical(const Options& o) {
  const FunctionSpec1D f = load_warping(o.f.empty() ? "cos" : o.f);
  const ProfileCurve profile = integrate_profile(f, o.x10, o.x00, o.theta0, o.arclen, o.step);
  if (profile.domain_exit) {
    info("profile left the warping domain at s = " + fmt(profile.length()) +
         "; continuing with the partial curve");
  }
  const MetricChart chart = MetricChart::warped_product(f, o.fiber_dim, FiberPreset::flat);
  const ImmersionSpec imm = build_umbilical_immersion(chart, profile);
  std::vector<int> counts(static_cast<std::size_t>(imm.parameter_dim()), 3);
  counts[0] = grid_or(o, 21);
  const Grid grid = parameter_grid(imm, counts);
  const double tol = tol_or(o, 1e-6);
  const UmbilicityReport report = umbilicity_report(chart, imm, grid, tol);

  double lambda_gap = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lambda_gap = std::max(lambda_gap, std::abs(report.mean_eigenvalue[i] -
                                               imm.metadata().expected_lambda(grid[i])));
  }

  const fs::path dir = output_dir(o);
  std::ostringstream pcsv, scsv, mesh;
  write_profile_csv(pcsv, profile);
  write_surface_csv(scsv, chart, imm, report);
  write_mesh(mesh, imm, 41, 9);
  write_text(dir / "profile.csv", pcsv.str());
  write_text(dir / "surface.csv", scsv.str());
  write_text(dir / "surface.mesh", mesh.str());

  Json j;
  j["command"] = "build-umbilical";
  j["warping"] = function_to_json(f);
  j["theta0"] = number(o.theta0);
  j["x1_0"] = number(o.x10);
  j["profile"] = profile_summary(profile);
  j["umbilicity"] = to_json(report);
  j["lambda_vs_theta_prime_max_gap"] = number(lambda_gap);
  if (profile.c == 0.0) j["note"] = "c = 0: slice-equivalent profile";
  write_json(dir / "umbilicity.json", j);

  info("build-umbilical: c = " + fmt(profile.c) + ", drift " + fmt(profile.max_drift) +
       ", deviation " + fmt(report.deviation) + ", |lambda - theta'| " + fmt(lambda_gap) + ": " +
       (report.totally_umbilical ? "totally umbilical" : "NOT umbilical"));
  return report.totally_umbilical ? kOk : kCheckFailed;
}

int cmd_conformal(const Options& o) {
  const FunctionSpec1D f = load_warping(o.f.empty() ? "exp" : o.f);
  const ConformalReparam r = conformal_to_product(f, {o.lo, o.hi}, o.t0);
  const double tol = tol_or(o, 1e-8);

  std::string csv = "t,s,h\n";
  double gap = 0.0;
  for (std::size_t i = 0; i < r.t_nodes.size(); ++i) {
    csv += fmt(r.t_nodes[i]) + ',' + fmt(r.s_nodes[i]) + ',' + fmt(r.h.eval(r.s_nodes[i])) + '\n';
    if (i + 1 < r.t_nodes.size()) {
      const double tm = 0.5 * (r.t_nodes[i] + r.t_nodes[i + 1]);
      gap = std::max(gap, std::abs(r.h.eval(r.s_of_t.eval(tm)) - f.eval(tm)));
    }
  }
  const fs::path dir = output_dir(o);
  write_text(dir / "conformal.csv", csv);
  Json j;
  j["command"] = "conformal";
  j["warping"] = function_to_json(f);
  j["t_range"] = numbers(std::vector<double>{r.t_range.lo, r.t_range.hi});
  j["s_range"] = numbers(std::vector<double>{r.s_range.lo, r.s_range.hi});
  j["t0"] = number(r.t0);
  j["nodes"] = r.t_nodes.size();
  j["consistency_max_gap"] = number(gap);
  j["tolerance"] = number(tol);
  j["consistent"] = gap < tol;
  write_json(dir / "conformal.json", j);
  info("conformal: s in [" + fmt(r.s_range.lo) + ", " + fmt(r.s_range.hi) + "], |h(s(t)) - f(t)| <= " +
       fmt(gap));
  return gap < tol ? kOk : kCheckFailed;
}

int cmd_check_smoothness(const Options& o) {
  const FunctionSpec1D theta = load_theta(o.theta.empty() ? "hopf" : o.theta);
  ClosureTarget target;
  if (o.target == "s3") {
    target = ClosureTarget::s3;
  } else if (o.target == "s2xr") {
    target = ClosureTarget::s2xr;
  } else {
    throw GeometryError(ErrorCode::invalid_argument, "--target must be s3 or s2xr");
  }
  const SmoothnessReport r = closure_smoothness_check(theta, o.b, target, o.k_max, tol_or(o, 1e-6));
  write_json(output_dir(o) / "smoothness.json", to_json(r));
  for (const auto& e : r.entries) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-4s %-32s measured %-16s", verdict(e.pass).c_str(),
                  e.name.c_str(), fmt(e.measured).c_str());
    info(line);
  }
  info(std::string("smoothness ") + std::string(to_string(target)) + ": " + verdict(r.pass));
  return r.pass ? kOk : kCheckFailed;
}

int cmd_check_r3(const Options& o) {
  const FunctionSpec1D theta = load_theta(o.theta.empty() ? "const" : o.theta);
  const auto grid = linspace(-o.range, o.range, grid_or(o, 2001));
  const SmoothnessReport r = r3_admissibility(theta, grid, tol_or(o, 1e-6));
  write_json(output_dir(o) / "r3.json", to_json(r));
  const ConditionEntry& e = r.entries.front();
  info("r3: min margin to k pi/2 is " + fmt(e.measured) +
       (e.location ? " at x = " + fmt(*e.location) : std::string()) + ", length constant " +
       fmt(r.length_constant) + ": " + verdict(r.pass));
  return r.pass ? kOk : kCheckFailed;
}

int cmd_check_submersion(const Options& o) {
  const MetricChart chart = o.theta.empty()
                                ? load_chart(o.chart.empty() ? "hopf" : o.chart)
                                : MetricChart::theta3(load_theta(o.theta));
  if (chart.kind() != ChartKind::theta3) {
    throw GeometryError(ErrorCode::invalid_argument, "submersion check needs a theta3 chart");
  }
  const FunctionSpec1D& theta = chart.theta();
  const Interval xs = chart.box().sampling_axis(0);
  const auto us = linspace(xs.lo + 0.02 * xs.width(), xs.hi - 0.02 * xs.width(), grid_or(o, 9));

  Json samples = Json::array();
  double k_gap = 0.0, iso = 0.0, fiber = 0.0;
  for (double u : us) {
    const BaseCurvature k = base_gauss_curvature_at(theta, u);
    const double t = theta.eval(u);
    const Vec p = make_vec({u, 0.0, 0.0});
    const Vec ex = make_vec({1.0, 0.0, 0.0});
    const Vec hz = make_vec({0.0, std::cos(t) / std::sin(t), -std::sin(t) / std::cos(t)});
    const double d1 = submersion_isometry_defect(theta, p, ex);
    const double d2 = submersion_isometry_defect(theta, p, hz);
    const double df = submersion_differential(xi_components(chart)).norm();
    k_gap = std::max(k_gap, k.gap);
    iso = std::max({iso, d1, d2});
    fiber = std::max(fiber, df);
    Json s;
    s["u"] = number(u);
    s["K_closed_form"] = number(k.closed_form);
    s["K_finite_difference"] = number(k.finite_difference);
    s["isometry_defect_dx"] = number(d1);
    s["isometry_defect_horizontal"] = number(d2);
    samples.push_back(s);
  }
  const ConstantCurvatureResult cc = constant_curvature_detect(theta, xs, 1e-10, o.seed);
  const bool pass = k_gap < 1e-6 && iso < 1e-10 && fiber < 1e-12 &&
                    (!cc.alpha_squared || cc.spot_checks_pass);
  Json j;
  j["command"] = "check submersion";
  j["chart"] = chart_to_json(chart);
  j["base_curvature_max_gap"] = number(k_gap);
  j["isometry_max_defect"] = number(iso);
  j["fiber_image_max_norm"] = number(fiber);
  j["samples"] = samples;
  j["constant_curvature"] = to_json(cc);
  j["seed"] = o.seed;
  j["pass"] = pass;
  write_json(output_dir(o) / "submersion.json", j);
  info("submersion: base K gap " + fmt(k_gap) + ", isometry defect " + fmt(iso) +
       (cc.alpha_squared ? ", constant curvature alpha^2 = " + fmt(*cc.alpha_squared)
                         : std::string(", curvature not constant")) +
       ": " + verdict(pass));
  return pass ? kOk : kCheckFailed;
}

int cmd_check_tg_surfaces(const Options& o) {
  const MetricChart chart = load_chart(o.chart.empty() ? "bump" : o.chart);
  const ImmersionSpec imm = build_level_surface(chart, o.x0);
  const int n = grid_or(o, 5);
  const Grid grid = parameter_grid(imm, {n, n});
  const double tol = tol_or(o, 1e-8);
  const UmbilicityReport r = umbilicity_report(chart, imm, grid, tol);
  const ExtrinsicCurvature ext = level_surface_extrinsic_curvature(chart.theta(), o.x0);
  const bool expected = *imm.metadata().expected_totally_geodesic;
  Json j;
  j["command"] = "check tg-surfaces";
  j["chart"] = chart_to_json(chart);
  j["x0"] = number(o.x0);
  j["theta_prime_at_x0"] = number(chart.theta().eval(o.x0, 1));
  j["expected_totally_geodesic"] = expected;
  j["det_shape_closed_form"] = number(ext.closed_form);
  j["det_shape_numeric"] = number(ext.numeric);
  j["umbilicity"] = to_json(r);
  j["verdict_matches_expectation"] = r.totally_geodesic == expected;
  j["pass"] = r.totally_geodesic;
  write_json(output_dir(o) / "tg_surfaces.json", j);
  info("tg-surfaces: level x = " + fmt(o.x0) + ", max |eigenvalue| " + fmt(r.max_abs_eigenvalue) +
       ", det S " + fmt(ext.numeric) + ": " + (r.totally_geodesic ? "totally geodesic" : "not totally geodesic"));
  return r.totally_geodesic ? kOk : kCheckFailed;
}

int cmd_check_killing(const Options& o) {
  const MetricChart chart = load_chart(o.chart.empty() ? "wobble" : o.chart);
  VectorFieldSpec field = VectorFieldSpec::xi();
  if (o.field != "xi") {
    const auto& names = chart.coordinates();
    int idx = -1;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (o.field == "d" + names[i]) idx = static_cast<int>(i);
    }
    if (idx < 0) {
      throw GeometryError(ErrorCode::invalid_argument,
                          "--field must be xi or d<coordinate>, got '" + o.field + "'");
    }
    field = VectorFieldSpec::coordinate(idx);
  }
  const Grid grid = chart_grid(chart, grid_or(o, 5), 0.02);
  const KillingReport r = killing_defect(chart, field, grid, tol_or(o, 1e-10));
  Json j = to_json(r);
  j["field"] = o.field;
  j["chart"] = chart_to_json(chart);
  write_json(output_dir(o) / "killing.json", j);
  info("killing: field " + o.field + ", max defect " + fmt(r.max_defect) + ": " + verdict(r.killing));
  return r.killing ? kOk : kCheckFailed;
}

int cmd_check_lemma1(const Options& o) {
  const MetricChart chart = load_chart(o.chart.empty() ? "warped-cos" : o.chart);
  if (chart.kind() != ChartKind::warped_product) {
    throw GeometryError(ErrorCode::invalid_argument, "lemma1 check runs on warped-product charts");
  }
  const int d = chart.dim();
  std::optional<ImmersionSpec> imm;
  Box params;
  for (int k = 1; k < d; ++k) params.axes.push_back(chart.box().sampling_axis(k));
  if (o.surface == "profile") {
    const ProfileCurve pc = integrate_profile(chart.warping(), o.x10, o.x00, o.theta0, o.arclen, o.step);
    imm = build_umbilical_immersion(chart, pc);
  } else if (o.surface == "slice") {
    imm = ImmersionSpec(ImmersionKind::slice, params, [d](const Vec& q) {
      Vec p(d);
      p(0) = 0.0;
      p.tail(d - 1) = q;
      return p;
    });
  } else if (o.surface == "graph") {
    imm = ImmersionSpec(ImmersionKind::custom, params, [d](const Vec& q) {
      Vec p(d);
      p(0) = 0.1 * q(0) * q(0);
      p.tail(d - 1) = q;
      return p;
    });
  } else {
    throw GeometryError(ErrorCode::invalid_argument, "--surface must be slice, profile or graph");
  }

  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.1, 0.9);
  const int n = grid_or(o, 10);
  Grid qs;
  for (int i = 0; i < n; ++i) {
    Vec q(imm->parameter_dim());
    for (int k = 0; k < q.size(); ++k) {
      const Interval a = imm->parameters().sampling_axis(k);
      q(k) = a.lo + a.width() * unit(rng);
    }
    qs.push_back(q);
  }
  const auto res = map_grid<Lemma1Residual>(qs.size(), [&](std::size_t i) {
    return lemma1_residual(chart, *imm, qs[i]);
  });
  const double tol = tol_or(o, 1e-5);
  double r1 = 0.0, r2 = 0.0;
  Json pts = Json::array();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    r1 = std::max(r1, res[i].r1);
    r2 = std::max(r2, res[i].r2);
    Json p;
    p["q"] = numbers(qs[i]);
    p["r1"] = number(res[i].r1);
    p["r2"] = number(res[i].r2);
    pts.push_back(p);
  }
  const bool pass = r1 < tol && r2 < tol;
  Json j;
  j["command"] = "check lemma1";
  j["chart"] = chart_to_json(chart);
  j["surface"] = o.surface;
  j["seed"] = o.seed;
  j["tolerance"] = number(tol);
  j["r1_max"] = number(r1);
  j["r2_max"] = number(r2);
  j["points"] = pts;
  j["pass"] = pass;
  write_json(output_dir(o) / "lemma1.json", j);
  info("lemma1: " + o.surface + " surface, r1 " + fmt(r1) + ", r2 " + fmt(r2) + ": " + verdict(pass));
  return pass ? kOk : kCheckFailed;
}

int cmd_geodesic(const Options& o) {
  const MetricChart chart = load_chart(o.chart.empty() ? "hopf" : o.chart);
  const Vec p = parse_vec(o.point, "--point");
  Vec v = parse_vec(o.dir, "--dir");
  if (p.size() != chart.dim() || v.size() != chart.dim()) {
    throw GeometryError(ErrorCode::invalid_argument, "--point and --dir need one entry per coordinate");
  }
  const Mat g = metric_at(chart, p);
  const double norm = std::sqrt(inner(g, v, v));
  if (!(norm > 0.0)) throw GeometryError(ErrorCode::invalid_argument, "--dir must be nonzero");
  v /= norm;
  const GeodesicPath path = geodesic_integrate(chart, p, v, o.length, o.step);

  const auto& names = chart.coordinates();
  std::string csv = "s";
  for (const auto& n : names) csv += ',' + n;
  for (const auto& n : names) csv += ",d" + n;
  csv += ",speed_drift\n";
  const std::size_t stride = std::max<std::size_t>(1, path.samples.size() / 1000);
  for (std::size_t i = 0; i < path.samples.size(); i += stride) {
    const GeodesicState& st = path.samples[i];
    csv += fmt(st.s);
    for (Eigen::Index k = 0; k < st.point.size(); ++k) csv += ',' + fmt(st.point(k));
    for (Eigen::Index k = 0; k < st.velocity.size(); ++k) csv += ',' + fmt(st.velocity(k));
    const Mat gs = chart.metric_unchecked(st.point);
    csv += ',' + fmt(std::abs(std::sqrt(inner(gs, st.velocity, st.velocity)) - 1.0)) + '\n';
  }
  const fs::path dir = output_dir(o);
  write_text(dir / "geodesic.csv", csv);
  Json j;
  j["command"] = "geodesic";
  j["chart"] = chart_to_json(chart);
  j["start"] = numbers(p);
  j["direction"] = numbers(v);
  j["step"] = number(path.step);
  j["length"] = number(path.samples.back().s);
  j["left_domain"] = path.left_domain;
  j["max_speed_drift"] = number(path.max_speed_drift);
  j["end"] = numbers(path.samples.back().point);
  write_json(dir / "geodesic.json", j);
  info("geodesic: length " + fmt(path.samples.back().s) + ", speed drift " + fmt(path.max_speed_drift) +
       (path.left_domain ? " (left the chart)" : ""));
  return kOk;
}

}  // namespace cli
