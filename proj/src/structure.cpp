#include "umbilic/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "umbilic/constructor.hpp"
#include "umbilic/curvature.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/fields.hpp"
#include "umbilic/hypersurface.hpp"
#include "umbilic/kernels.hpp"

namespace umbilic {

std::string_view to_string(ClosureTarget target) {
  switch (target) {
    case ClosureTarget::s3: return "S3";
    case ClosureTarget::s2xr: return "S2xR";
    case ClosureTarget::r3: return "R3";
  }
  return "unknown";
}

std::string_view to_string(CurvatureClass c) {
  return c == CurvatureClass::flat ? "flat" : "spherical";
}

const ConditionEntry* SmoothnessReport::first_failure() const {
  for (const auto& e : entries) {
    if (!e.pass) return &e;
  }
  return nullptr;
}

namespace {

std::string derivative_name(int order, const char* at) {
  std::string name = "theta";
  if (order <= 3) {
    name += std::string(static_cast<std::size_t>(order), '\'');
  } else {
    name += "^(" + std::to_string(order) + ")";
  }
  return name + "(" + at + ")";
}

std::string format_value(double v) {
  if (std::abs(v - M_PI / 2) < 1e-15) return "pi/2";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

ConditionEntry endpoint_entry(const FunctionSpec1D& theta, double x, const char* at, int order,
                              double expected, double threshold) {
  ConditionEntry e;
  e.name = derivative_name(order, at) + " = " + format_value(expected);
  e.endpoint = at;
  e.order = order;
  e.measured = theta.eval(x, order);
  e.expected = expected;
  e.threshold = threshold;
  e.pass = std::abs(e.measured - expected) <= threshold;
  return e;
}

// Derivatives 0..4 of the outer function sin(t + shift pi/2) composed with g,
// by Faa di Bruno's formula.
std::vector<double> compose(double t, int shift, const std::array<double, 5>& g, int n) {
  std::array<double, 5> f{};
  for (int k = 0; k <= 4; ++k) f[k] = std::sin(t + (shift + k) * M_PI / 2);
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  const double g1 = g[1], g2 = g[2], g3 = g[3], g4 = g[4];
  const std::array<double, 5> all{
      f[0],
      f[1] * g1,
      f[2] * g1 * g1 + f[1] * g2,
      f[3] * g1 * g1 * g1 + 3.0 * f[2] * g1 * g2 + f[1] * g3,
      f[4] * g1 * g1 * g1 * g1 + 6.0 * f[3] * g1 * g1 * g2 + 3.0 * f[2] * g2 * g2 +
          4.0 * f[2] * g1 * g3 + f[1] * g4,
  };
  for (int k = 0; k <= n; ++k) out[static_cast<std::size_t>(k)] = all[static_cast<std::size_t>(k)];
  return out;
}

}  // namespace

std::vector<double> trig_composite_derivatives(const FunctionSpec1D& theta, double x, int n,
                                               int shift) {
  if (n < 0 || n > 4) throw GeometryError(ErrorCode::unsupported_order, "order above 4");
  std::array<double, 5> g{};
  for (int k = 0; k <= n; ++k) g[static_cast<std::size_t>(k)] = theta.eval(x, k);
  return compose(g[0], shift, g, n);
}

SmoothnessReport closure_smoothness_check(const FunctionSpec1D& theta, double b,
                                          ClosureTarget target, int k_max, double tol) {
  if (k_max < 0 || k_max > 2) {
    throw GeometryError(ErrorCode::unsupported_order,
                        "k_max above 2 needs derivatives beyond order 4");
  }
  if (target == ClosureTarget::r3) {
    throw GeometryError(ErrorCode::invalid_argument, "use r3_admissibility for R3");
  }
  if (!(b > 0.0) || !theta.domain().contains(0.0) || !theta.domain().contains(b)) {
    throw GeometryError(ErrorCode::out_of_domain, "theta must be defined on [0, b]", b);
  }
  SmoothnessReport r;
  r.target = target;
  r.k_max = k_max;

  const int top = 2 * k_max;
  for (double x : linspace(0.0, b, 65)) {
    for (int k = 0; k <= 4; ++k) r.c4_estimate = std::max(r.c4_estimate, std::abs(theta.eval(x, k)));
  }
  r.tolerance = tol * (1.0 + r.c4_estimate);
  const double t = r.tolerance;

  const bool s3 = target == ClosureTarget::s3;
  // End at 0.
  r.entries.push_back(endpoint_entry(theta, 0.0, "0", 0, 0.0, t));
  r.entries.push_back(endpoint_entry(theta, 0.0, "0", 1, 1.0, t));
  for (int k = 1; k <= k_max; ++k) r.entries.push_back(endpoint_entry(theta, 0.0, "0", 2 * k, 0.0, t));
  // End at b.
  r.entries.push_back(endpoint_entry(theta, b, "b", 0, s3 ? M_PI / 2 : 0.0, t));
  r.entries.push_back(endpoint_entry(theta, b, "b", 1, s3 ? 1.0 : -1.0, t));
  for (int k = 1; k <= k_max; ++k) r.entries.push_back(endpoint_entry(theta, b, "b", 2 * k, 0.0, t));

  // Interior range: theta in (0, pi/2) on (0, b).
  ConditionEntry range;
  range.name = "theta in (0, pi/2) on (0, b)";
  range.endpoint = "interior";
  range.order = -1;
  range.measured = std::numeric_limits<double>::infinity();
  const auto xs = linspace(0.0, b, 259);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double v = theta.eval(xs[i]);
    const double margin = std::min(v, M_PI / 2 - v);
    if (margin < range.measured) {
      range.measured = margin;
      range.location = xs[i];
    }
  }
  range.expected = 0.0;
  range.threshold = 0.0;
  range.pass = range.measured > 0.0;
  r.entries.push_back(range);

  r.phi_at_0 = trig_composite_derivatives(theta, 0.0, top, 0);
  r.psi_at_0 = trig_composite_derivatives(theta, 0.0, top, 1);
  r.phi_at_b = trig_composite_derivatives(theta, b, top, 0);
  r.psi_at_b = trig_composite_derivatives(theta, b, top, 1);

  r.pass = std::all_of(r.entries.begin(), r.entries.end(), [](const auto& e) { return e.pass; });
  return r;
}

SmoothnessReport r3_admissibility(const FunctionSpec1D& theta, const std::vector<double>& grid,
                                  double tol) {
  SmoothnessReport r;
  r.target = ClosureTarget::r3;
  r.tolerance = tol;
  if (grid.empty()) throw GeometryError(ErrorCode::invalid_argument, "empty grid");

  ConditionEntry e;
  e.name = "theta avoids k pi/2";
  e.endpoint = "grid";
  e.order = -1;
  e.measured = std::numeric_limits<double>::infinity();
  e.threshold = tol;
  double min_sin = 1.0, min_cos = 1.0;
  for (double x : grid) {
    const double v = theta.eval(x);
    const double q = M_PI / 2;
    const double margin = std::abs(v - std::round(v / q) * q);
    if (margin < e.measured) {
      e.measured = margin;
      e.location = x;
    }
    min_sin = std::min(min_sin, std::abs(std::sin(v)));
    min_cos = std::min(min_cos, std::abs(std::cos(v)));
  }
  e.pass = e.measured >= tol;
  r.entries.push_back(e);
  r.min_margin = e.measured;
  r.length_constant = std::min({1.0, min_sin, min_cos});

  // Lengths of t -> t e_axis for t up to 2^k. Along x the integrand is 1;
  // along y and z it is the constant sin / cos of theta(0).
  const double x_ref = std::clamp(0.0, grid.front(), grid.back());
  const double th0 = theta.eval(x_ref);
  const std::array<double, 3> speed{1.0, std::abs(std::sin(th0)), std::abs(std::cos(th0))};
  const std::array<const char*, 3> names{"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    LengthProbe p;
    p.axis = names[static_cast<std::size_t>(a)];
    p.monotone = true;
    p.bounded_below = true;
    double prev = 0.0;
    for (int k = 0; k <= 6; ++k) {
      const double tt = std::ldexp(1.0, k);
      const double len = speed[static_cast<std::size_t>(a)] * tt;
      p.parameters.push_back(tt);
      p.lengths.push_back(len);
      if (!(len > prev)) p.monotone = false;
      if (len < r.length_constant * tt - 1e-12) p.bounded_below = false;
      prev = len;
    }
    r.probes.push_back(std::move(p));
  }
  r.pass = e.pass;
  return r;
}

MetricChart submersion_base_chart(const FunctionSpec1D& theta) { return MetricChart::base2(theta); }

BaseCurvature base_gauss_curvature_at(const FunctionSpec1D& theta, double u) {
  if (!theta.domain().contains(u)) {
    throw GeometryError(ErrorCode::out_of_domain, "u outside theta's domain", u);
  }
  BaseCurvature r;
  const double t = theta.eval(u);
  const double t1 = theta.eval(u, 1);
  const double t2 = theta.eval(u, 2);
  r.closed_form = 4.0 * t1 * t1 - 2.0 * t2 / std::tan(2.0 * t);

  auto phi = [&](double x) { return 0.5 * std::sin(2.0 * theta.eval_unchecked(x)); };
  const double h = 1e-3 * std::max(1.0, std::abs(u));
  const double d2 = (-phi(u + 2 * h) + 16.0 * phi(u + h) - 30.0 * phi(u) + 16.0 * phi(u - h) -
                     phi(u - 2 * h)) /
                    (12.0 * h * h);
  r.finite_difference = -d2 / phi(u);
  r.gap = std::abs(r.closed_form - r.finite_difference);
  return r;
}

Vec submersion_differential(const Vec& v) { return make_vec({v(0), v(1) - v(2)}); }

double submersion_isometry_defect(const FunctionSpec1D& theta, const Vec& p, const Vec& v) {
  if (p.size() != 3 || v.size() != 3) {
    throw GeometryError(ErrorCode::invalid_argument, "point and vector must be 3-dimensional");
  }
  if (!theta.domain().contains(p(0))) {
    throw GeometryError(ErrorCode::out_of_domain, "point outside theta's domain", p(0));
  }
  const double t = theta.eval(p(0));
  const double s = std::sin(t), c = std::cos(t);
  const Vec g = make_vec({1.0, s * s, c * c});
  const double along_xi = g(1) * v(1) + g(2) * v(2);
  if (std::abs(along_xi) > 1e-8) {
    throw GeometryError(ErrorCode::not_horizontal, "vector is not orthogonal to xi");
  }
  const Vec w = submersion_differential(v);
  const double sin2 = std::sin(2.0 * t);
  const double norm2 = w(0) * w(0) + 0.25 * sin2 * sin2 * w(1) * w(1);
  return std::abs(std::sqrt(norm2) - 1.0);
}

ConstantCurvatureResult constant_curvature_detect(const FunctionSpec1D& theta, Interval interval,
                                                  double tol, std::uint64_t seed) {
  ConstantCurvatureResult r;
  const auto xs = linspace(interval.lo, interval.hi, 257);
  std::vector<double> slopes;
  slopes.reserve(xs.size());
  for (double x : xs) slopes.push_back(theta.eval(x, 1));
  double mean = 0.0;
  for (double v : slopes) mean += v;
  mean /= static_cast<double>(slopes.size());
  r.mean_slope = mean;
  for (double v : slopes) r.max_slope_deviation = std::max(r.max_slope_deviation, std::abs(v - mean));
  if (!(r.max_slope_deviation < tol)) return r;

  r.alpha_squared = mean * mean;
  r.curvature_class = *r.alpha_squared == 0.0 ? CurvatureClass::flat : CurvatureClass::spherical;

  const MetricChart chart = MetricChart::theta3(theta.restricted(interval));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Keep spot points away from the ends so the curvature stencils stay inside.
  const double pad = 0.05 * interval.width();
  r.spot_checks_pass = true;
  while (r.spot_checks.size() < 3) {
    SpotCheck sc;
    sc.point = make_vec({interval.lo + pad + (interval.width() - 2 * pad) * unit(rng),
                         2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0});
    sc.v1 = make_vec({normal(rng), normal(rng), normal(rng)});
    sc.v2 = make_vec({normal(rng), normal(rng), normal(rng)});
    try {
      sc.sectional = sectional_curvature_at(chart, sc.point, sc.v1, sc.v2);
    } catch (const GeometryError& e) {
      if (e.code() == ErrorCode::degenerate_plane) continue;
      throw;
    }
    if (std::abs(sc.sectional - *r.alpha_squared) > 1e-4) r.spot_checks_pass = false;
    r.spot_checks.push_back(sc);
  }
  return r;
}

ExtrinsicCurvature level_surface_extrinsic_curvature(const FunctionSpec1D& theta, double x0) {
  if (!theta.domain().contains(x0)) {
    throw GeometryError(ErrorCode::out_of_domain, "x0 outside theta's domain", x0);
  }
  ExtrinsicCurvature r;
  const double t = theta.eval(x0);
  const double t1 = theta.eval(x0, 1);
  r.closed_form = (t1 / std::tan(t)) * (-std::tan(t) * t1);

  // A small chart around x0 keeps the range check local.
  const Interval dom = theta.domain();
  const Interval local{std::max(dom.lo, x0 - 0.05), std::min(dom.hi, x0 + 0.05)};
  const MetricChart chart = MetricChart::theta3(theta.restricted(local));
  const ImmersionSpec imm = build_level_surface(chart, x0);
  const FundamentalForms f = fundamental_forms_at(chart, imm, make_vec({0.0, 0.0}));
  r.numeric = f.shape.determinant();
  r.gap = std::abs(r.closed_form - r.numeric);
  return r;
}

}  // namespace umbilic
