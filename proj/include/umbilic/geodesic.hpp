#pragma once

#include <vector>

#include "umbilic/chart.hpp"

namespace umbilic {

struct GeodesicState {
  double s = 0.0;
  Vec point;
  Vec velocity;
};

struct GeodesicPath {
  std::vector<GeodesicState> samples;
  double step = 0.0;
  bool left_domain = false;       // partial path; integration stopped at the box edge
  double max_speed_drift = 0.0;   // max | |gamma'|_g - 1 |
};

// One classical RK4 step of gamma'' = -Gamma(gamma', gamma').
GeodesicState geodesic_step(const MetricChart& chart, const GeodesicState& state, double ds);

// Unit-speed geodesic from p with initial velocity v (|v|_g = 1 +- 1e-10).
// `length` is split into ceil(length / step) equal steps.
GeodesicPath geodesic_integrate(const MetricChart& chart, const Vec& p, const Vec& v,
                                double length, double step = 1e-3);

// State at arc length s, advancing from the nearest earlier sample.
GeodesicState geodesic_state_at(const MetricChart& chart, const GeodesicPath& path, double s);

}  // namespace umbilic
