#include "umbilic/constructor.hpp"

#include <algorithm>
#include <cmath>

#include "umbilic/errors.hpp"
#include "umbilic/fields.hpp"
#include "umbilic/geodesic.hpp"

namespace umbilic {

namespace {

constexpr double kBreach = 1e-6;

struct Deriv {
  double x0, x1, theta;
};

Deriv rhs(const FunctionSpec1D& f, double x1, double theta) {
  const double s = std::sin(theta);
  return {s, std::cos(theta), s * f.eval_unchecked(x1, 1) / f.eval_unchecked(x1, 0)};
}

struct RunResult {
  ProfileCurve curve;
  std::optional<double> first_breach;
};

RunResult run(const FunctionSpec1D& f, double x10, double x00, double theta0, double arclen,
              double step, double c) {
  RunResult r;
  ProfileCurve& pc = r.curve;
  pc.f = f;
  pc.c = c;
  const auto n = static_cast<long>(std::max(1.0, std::ceil(arclen / step - 1e-9)));
  pc.step = arclen / static_cast<double>(n);
  pc.samples.reserve(static_cast<std::size_t>(n) + 1);
  pc.samples.push_back({0.0, x00, x10, theta0});
  for (long i = 0; i < n; ++i) {
    ProfileState next = profile_step(f, pc.samples.back(), pc.step);
    next.s = static_cast<double>(i + 1) * pc.step;
    if (!f.domain().contains(next.x1) || !(f.eval_unchecked(next.x1) > 0.0) ||
        !std::isfinite(next.theta)) {
      pc.domain_exit = true;
      break;
    }
    pc.samples.push_back(next);
    const double d = pc.drift(next);
    pc.max_drift = std::max(pc.max_drift, d);
    if (d > kBreach && !r.first_breach) r.first_breach = next.s;
  }
  return r;
}

}  // namespace

double ProfileCurve::drift(const ProfileState& st) const {
  return std::abs(std::sin(st.theta) - c * f.eval_unchecked(st.x1));
}

ProfileState profile_step(const FunctionSpec1D& f, const ProfileState& st, double ds) {
  const Deriv k1 = rhs(f, st.x1, st.theta);
  const Deriv k2 = rhs(f, st.x1 + 0.5 * ds * k1.x1, st.theta + 0.5 * ds * k1.theta);
  const Deriv k3 = rhs(f, st.x1 + 0.5 * ds * k2.x1, st.theta + 0.5 * ds * k2.theta);
  const Deriv k4 = rhs(f, st.x1 + ds * k3.x1, st.theta + ds * k3.theta);
  ProfileState out;
  out.s = st.s + ds;
  out.x0 = st.x0 + ds / 6.0 * (k1.x0 + 2.0 * k2.x0 + 2.0 * k3.x0 + k4.x0);
  out.x1 = st.x1 + ds / 6.0 * (k1.x1 + 2.0 * k2.x1 + 2.0 * k3.x1 + k4.x1);
  out.theta = st.theta + ds / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
  return out;
}

ProfileState ProfileCurve::state_at(double s) const {
  if (samples.empty() || s < -1e-12 || s > length() + 1e-12) {
    throw GeometryError(ErrorCode::out_of_domain, "arc length outside the profile", s);
  }
  const auto last = static_cast<long>(samples.size()) - 1;
  const long i = std::clamp(static_cast<long>(std::floor(s / step)), 0L, last);
  const ProfileState& base = samples[static_cast<std::size_t>(i)];
  const double ds = s - base.s;
  if (ds == 0.0) return base;
  ProfileState out = profile_step(f, base, ds);
  out.s = s;
  return out;
}

double ProfileCurve::theta_prime(double s) const {
  const ProfileState st = state_at(s);
  return rhs(f, st.x1, st.theta).theta;
}

ProfileCurve integrate_profile(const FunctionSpec1D& f, double x10, double x00, double theta0,
                               double arclen, double step) {
  if (!(step > 0.0) || !(arclen > 0.0)) {
    throw GeometryError(ErrorCode::invalid_argument, "step and arclen must be positive");
  }
  if (!(theta0 >= 0.0 && theta0 <= M_PI)) {
    throw GeometryError(ErrorCode::invalid_argument, "theta0 must lie in [0, pi]", theta0);
  }
  const double f0 = f.eval(x10);
  if (!(f0 > 0.0)) {
    throw GeometryError(ErrorCode::non_positive_warping, "f must be positive at x1_0", x10);
  }
  const double c = std::sin(theta0) / f0;
  RunResult r = run(f, x10, x00, theta0, arclen, step, c);
  if (r.first_breach) {
    r = run(f, x10, x00, theta0, arclen, 0.5 * step, c);
    r.curve.halvings = 1;
    if (r.first_breach) {
      throw GeometryError(ErrorCode::conservation_breach,
                          "conserved quantity drifted above 1e-6 after halving the step",
                          r.first_breach);
    }
  }
  return r.curve;
}

ImmersionSpec build_umbilical_immersion(const MetricChart& chart, const ProfileCurve& profile) {
  if (chart.kind() != ChartKind::warped_product) {
    throw GeometryError(ErrorCode::invalid_argument, "profile surfaces live in warped products");
  }
  if (!(chart.warping() == profile.f)) {
    throw GeometryError(ErrorCode::mismatched_warping,
                        "profile was integrated with a different warping function");
  }
  if (profile.samples.size() < 2) {
    throw GeometryError(ErrorCode::invalid_argument, "profile has fewer than two samples");
  }
  const int d = chart.dim();
  Box params;
  params.axes.push_back({0.0, profile.length()});
  for (int k = 2; k < d; ++k) params.axes.push_back(chart.box().sampling_axis(k));

  auto map = [profile, d](const Vec& q) -> Vec {
    const ProfileState st = profile.state_at(std::clamp(q(0), 0.0, profile.length()));
    // Past the ends, continue along the end tangent so stencils stay defined.
    const double ds = q(0) - std::clamp(q(0), 0.0, profile.length());
    Vec p(d);
    p(0) = st.x0 + ds * std::sin(st.theta);
    p(1) = st.x1 + ds * std::cos(st.theta);
    for (int k = 2; k < d; ++k) p(k) = q(k - 1);
    return p;
  };
  auto jac = [profile, d](const Vec& q) -> Mat {
    const ProfileState st = profile.state_at(std::clamp(q(0), 0.0, profile.length()));
    Mat j = Mat::Zero(d, d - 1);
    j(0, 0) = std::sin(st.theta);
    j(1, 0) = std::cos(st.theta);
    for (int k = 2; k < d; ++k) j(k, k - 1) = 1.0;
    return j;
  };
  ImmersionMetadata meta;
  meta.expected_lambda = [profile](const Vec& q) {
    return profile.theta_prime(std::clamp(q(0), 0.0, profile.length()));
  };
  meta.expected_totally_geodesic = std::nullopt;
  meta.note = "profile-built, c = " + std::to_string(profile.c);
  return ImmersionSpec(ImmersionKind::profile_built, std::move(params), map, jac,
                       std::move(meta));
}

ConformalReparam conformal_to_product(const FunctionSpec1D& f, Interval interval, double t0) {
  if (!interval.bounded() || !(interval.lo < interval.hi)) {
    throw GeometryError(ErrorCode::invalid_argument, "interval must be bounded and nonempty");
  }
  if (!interval.contains(t0)) {
    throw GeometryError(ErrorCode::invalid_argument, "t0 must lie in the interval", t0);
  }
  constexpr double kPanel = 1e-3;
  auto inv = [&](double t) {
    const double v = f.eval(t);
    if (!(v > 0.0)) {
      throw GeometryError(ErrorCode::non_positive_warping, "warping function is not positive", t);
    }
    return 1.0 / v;
  };

  // Nodes on each side of t0; s accumulates panel by panel away from t0.
  auto side = [&](double end) {
    std::vector<std::pair<double, double>> out;  // (t, s), excluding t0
    const double len = std::abs(end - t0);
    if (len == 0.0) return out;
    const auto n = static_cast<long>(std::ceil(len / kPanel));
    const double w = (end - t0) / static_cast<double>(n);
    double s = 0.0;
    double ta = t0;
    for (long i = 1; i <= n; ++i) {
      const double tb = i == n ? end : t0 + static_cast<double>(i) * w;
      s += (tb - ta) / 6.0 * (inv(ta) + 4.0 * inv(0.5 * (ta + tb)) + inv(tb));
      out.emplace_back(tb, s);
      ta = tb;
    }
    return out;
  };
  inv(t0);
  const auto left = side(interval.lo);
  const auto right = side(interval.hi);

  ConformalReparam r;
  r.t0 = t0;
  r.t_range = interval;
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    r.t_nodes.push_back(it->first);
    r.s_nodes.push_back(it->second);
  }
  r.t_nodes.push_back(t0);
  r.s_nodes.push_back(0.0);
  for (const auto& [t, s] : right) {
    r.t_nodes.push_back(t);
    r.s_nodes.push_back(s);
  }
  if (r.t_nodes.size() < 4) {
    throw GeometryError(ErrorCode::invalid_argument, "interval too short to tabulate");
  }
  std::vector<double> hv(r.t_nodes.size());
  for (std::size_t i = 0; i < hv.size(); ++i) hv[i] = f.eval(r.t_nodes[i]);
  r.s_range = {r.s_nodes.front(), r.s_nodes.back()};
  r.s_of_t = FunctionSpec1D::tabulated(r.t_nodes, r.s_nodes);
  r.t_of_s = FunctionSpec1D::tabulated(r.s_nodes, r.t_nodes);
  r.h = FunctionSpec1D::tabulated(r.s_nodes, hv);
  return r;
}

ImmersionSpec build_level_surface(const MetricChart& chart, double x0) {
  if (chart.kind() != ChartKind::theta3) {
    throw GeometryError(ErrorCode::invalid_argument, "level surfaces are built on theta3 charts");
  }
  if (!chart.box().axes[0].contains(x0)) {
    throw GeometryError(ErrorCode::out_of_domain, "x0 outside the chart", x0);
  }
  const double dtheta = chart.theta().eval(x0, 1);
  Box params{{chart.box().sampling_axis(1), chart.box().sampling_axis(2)}};
  auto map = [x0](const Vec& q) { return make_vec({x0, q(0), q(1)}); };
  auto jac = [](const Vec&) {
    Mat j = Mat::Zero(3, 2);
    j(1, 0) = 1.0;
    j(2, 1) = 1.0;
    return j;
  };
  ImmersionMetadata meta;
  meta.expected_totally_geodesic = std::abs(dtheta) < 1e-8;
  meta.expected_shape_determinant = -dtheta * dtheta;
  meta.note = "level x = " + std::to_string(x0);
  return ImmersionSpec(ImmersionKind::level_x, std::move(params), map, jac, std::move(meta));
}

ImmersionSpec build_tg_flow_surface(const MetricChart& chart, const Vec& p, const Vec& dir,
                                    double arclen) {
  if (chart.kind() != ChartKind::theta3) {
    throw GeometryError(ErrorCode::invalid_argument, "flow surfaces are built on theta3 charts");
  }
  const Mat g = metric_at(chart, p);
  const Vec xi = xi_components(chart);
  if (std::abs(inner(g, dir, xi)) > 1e-8) {
    throw GeometryError(ErrorCode::not_orthogonal, "direction is not orthogonal to xi");
  }
  const GeodesicPath path = geodesic_integrate(chart, p, dir, arclen);
  for (const GeodesicState& st : path.samples) {
    if (!(std::abs(chart.theta().eval(st.point(0), 1)) < 1e-8)) {
      throw GeometryError(ErrorCode::tau_nonzero_on_geodesic,
                          "twist does not vanish along the geodesic", st.s);
    }
  }
  const double len = path.samples.back().s;
  if (!(len > 0.0)) {
    throw GeometryError(ErrorCode::out_of_domain, "geodesic leaves the chart immediately");
  }
  Box params{{Interval{0.0, len}, Interval{-1.0, 1.0}}};
  auto map = [chart, path, len, xi](const Vec& q) -> Vec {
    const double s = std::clamp(q(0), 0.0, len);
    const GeodesicState st = geodesic_state_at(chart, path, s);
    return st.point + (q(0) - s) * st.velocity + q(1) * xi;
  };
  auto jac = [chart, path, len, xi](const Vec& q) -> Mat {
    const GeodesicState st = geodesic_state_at(chart, path, std::clamp(q(0), 0.0, len));
    Mat j(3, 2);
    j.col(0) = st.velocity;
    j.col(1) = xi;
    return j;
  };
  ImmersionMetadata meta;
  meta.expected_totally_geodesic = true;
  meta.note = path.left_domain ? "flow sweep (geodesic truncated at the chart edge)"
                               : "flow sweep";
  return ImmersionSpec(ImmersionKind::flow_sweep, std::move(params), map, jac, std::move(meta));
}

}  // namespace umbilic
