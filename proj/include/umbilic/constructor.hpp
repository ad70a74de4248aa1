#pragma once

#include <vector>

#include "umbilic/chart.hpp"
#include "umbilic/function.hpp"
#include "umbilic/hypersurface.hpp"

namespace umbilic {

struct ProfileState {
  double s = 0.0;
  double x0 = 0.0;
  double x1 = 0.0;
  double theta = 0.0;
};

// Arc-length profile (x0(s), x1(s)) with angle theta(s), solving
//   x0' = sin theta,  x1' = cos theta,  theta' = sin theta f'(x1) / f(x1).
// c = sin theta / f(x1) is conserved along the solution.
struct ProfileCurve {
  std::vector<ProfileState> samples;  // uniform in s, samples[0].s == 0
  double c = 0.0;
  FunctionSpec1D f = FunctionSpec1D::constant(1.0);
  double step = 0.0;
  bool domain_exit = false;  // stopped early: x1 left f's domain
  double max_drift = 0.0;    // max |sin theta - c f(x1)| over samples
  int halvings = 0;          // automatic step halvings performed

  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
  double drift(const ProfileState& st) const;
  // Advances from the nearest earlier sample; throws OutOfDomain past the ends.
  ProfileState state_at(double s) const;
  double theta_prime(double s) const;
};

// One RK4 step of the profile system. Evaluates f without domain checks.
ProfileState profile_step(const FunctionSpec1D& f, const ProfileState& st, double ds);

// Classical RK4 over `arclen` in ceil(arclen / step) equal steps.
// Drift above 1e-6 triggers one retry at half the step, then ConservationBreach
// (location = first violating s). Leaving f's domain ends the curve early with
// domain_exit set.
ProfileCurve integrate_profile(const FunctionSpec1D& f, double x10, double x00, double theta0,
                               double arclen, double step = 1e-3);

// (s, u) -> (x0(s), x1(s), u) in a warped product; expected lambda = theta'(s).
// Throws MismatchedWarping if the curve was integrated with another f.
ImmersionSpec build_umbilical_immersion(const MetricChart& chart, const ProfileCurve& profile);

// s(t) = integral from t0 to t of dt / f, and the warping h(s) = f(t(s)) of the
// conformally equivalent product metric.
struct ConformalReparam {
  Interval t_range;
  Interval s_range;
  double t0 = 0.0;
  FunctionSpec1D s_of_t = FunctionSpec1D::constant(0.0);
  FunctionSpec1D t_of_s = FunctionSpec1D::constant(0.0);
  FunctionSpec1D h = FunctionSpec1D::constant(1.0);
  std::vector<double> t_nodes;
  std::vector<double> s_nodes;
};

// Composite Simpson with panels of width <= 1e-3 laid out from t0 in both
// directions. Throws NonPositiveWarping at the first node where f <= 0.
ConformalReparam conformal_to_product(const FunctionSpec1D& f, Interval interval, double t0);

// Level surface {x = x0} of a theta3 chart, parameters (y, z). Totally
// geodesic iff theta'(x0) = 0; det S = -theta'(x0)^2.
ImmersionSpec build_level_surface(const MetricChart& chart, double x0);

// Sweeps the geodesic from p in direction dir by the xi-flow
// (y, z) -> (y + t, z + t), t in [-1, 1]. Parameters (s, t).
// Throws NotOrthogonal if <dir, xi> != 0 and TauNonzeroOnGeodesic at the
// first sample with |theta'| >= 1e-8.
ImmersionSpec build_tg_flow_surface(const MetricChart& chart, const Vec& p, const Vec& dir,
                                    double arclen);

}  // namespace umbilic
