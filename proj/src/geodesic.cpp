#include "umbilic/geodesic.hpp"

#include <algorithm>
#include <cmath>

#include "umbilic/connection.hpp"
#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

struct Deriv {
  Vec dx;
  Vec dv;
};

Deriv rhs(const MetricChart& chart, const Vec& x, const Vec& v) {
  return {v, -connection_unchecked(chart, x).contract(v, v)};
}

}  // namespace

GeodesicState geodesic_step(const MetricChart& chart, const GeodesicState& state, double ds) {
  const Vec& x = state.point;
  const Vec& v = state.velocity;
  const Deriv k1 = rhs(chart, x, v);
  const Deriv k2 = rhs(chart, x + 0.5 * ds * k1.dx, v + 0.5 * ds * k1.dv);
  const Deriv k3 = rhs(chart, x + 0.5 * ds * k2.dx, v + 0.5 * ds * k2.dv);
  const Deriv k4 = rhs(chart, x + ds * k3.dx, v + ds * k3.dv);
  GeodesicState next;
  next.s = state.s + ds;
  next.point = x + ds / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  next.velocity = v + ds / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  return next;
}

GeodesicPath geodesic_integrate(const MetricChart& chart, const Vec& p, const Vec& v,
                                double length, double step) {
  const Mat g = metric_at(chart, p);
  const double speed = std::sqrt(inner(g, v, v));
  if (std::abs(speed - 1.0) > 1e-10) {
    throw GeometryError(ErrorCode::invalid_argument, "initial velocity must have unit length");
  }
  if (!(step > 0.0) || !(length >= 0.0)) {
    throw GeometryError(ErrorCode::invalid_argument, "step must be positive, length non-negative");
  }
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(length / step - 1e-9)));
  GeodesicPath path;
  path.step = length / static_cast<double>(n);
  path.samples.reserve(n + 1);
  path.samples.push_back({0.0, p, v});
  for (std::size_t i = 0; i < n; ++i) {
    GeodesicState next = geodesic_step(chart, path.samples.back(), path.step);
    next.s = path.step * static_cast<double>(i + 1);
    if (!chart.contains(next.point)) {
      path.left_domain = true;
      break;
    }
    const Mat gn = chart.metric_unchecked(next.point);
    path.max_speed_drift =
        std::max(path.max_speed_drift, std::abs(std::sqrt(inner(gn, next.velocity, next.velocity)) - 1.0));
    path.samples.push_back(std::move(next));
  }
  return path;
}

GeodesicState geodesic_state_at(const MetricChart& chart, const GeodesicPath& path, double s) {
  if (path.samples.empty()) {
    throw GeometryError(ErrorCode::invalid_argument, "empty geodesic path");
  }
  const double idx = std::floor(s / path.step);
  const auto i = static_cast<std::size_t>(
      std::clamp(idx, 0.0, static_cast<double>(path.samples.size() - 1)));
  const GeodesicState& base = path.samples[i];
  const double ds = s - base.s;
  if (ds == 0.0) return base;
  return geodesic_step(chart, base, ds);
}

}  // namespace umbilic
