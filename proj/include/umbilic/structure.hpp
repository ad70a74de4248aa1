#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umbilic/chart.hpp"
#include "umbilic/function.hpp"

namespace umbilic {

enum class ClosureTarget { s3, s2xr, r3 };

std::string_view to_string(ClosureTarget target);

struct ConditionEntry {
  std::string name;      // e.g. "theta''(0) = 0"
  std::string endpoint;  // "0", "b", "interior", "grid"
  int order = 0;         // derivative order; -1 for range conditions
  double measured = 0.0;
  double expected = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::optional<double> location;  // abscissa of the worst sample for range conditions
};

// Straight coordinate curve from the origin; sampled lengths at increasing
// parameter values. `bounded_below` records L(T) >= c T at every T.
struct LengthProbe {
  std::string axis;
  std::vector<double> parameters;
  std::vector<double> lengths;
  bool monotone = false;
  bool bounded_below = false;
};

struct SmoothnessReport {
  ClosureTarget target = ClosureTarget::s3;
  std::vector<ConditionEntry> entries;
  bool pass = false;
  int k_max = 0;
  double tolerance = 0.0;  // scaled endpoint tolerance actually used
  double c4_estimate = 0.0;
  // phi = sin theta, psi = cos theta; derivatives 0..2 k_max at each end.
  std::vector<double> phi_at_0, psi_at_0, phi_at_b, psi_at_b;
  // R3 only.
  double min_margin = 0.0;
  double length_constant = 0.0;
  std::vector<LengthProbe> probes;

  // First failing entry, in entry order.
  const ConditionEntry* first_failure() const;
};

// Endpoint conditions for smooth closure of the theta normal form, for
// derivative orders up to 2 k_max (k_max <= 2, else UnsupportedOrder):
//   S3:    theta(0) = 0, theta'(0) = 1, theta^(2k)(0) = 0 (k >= 1),
//          theta(b) = pi/2, theta'(b) = 1, theta^(2k)(b) = 0 (k >= 1)
//   S2xR:  theta^(2k)(0) = theta^(2k)(b) = 0 (k >= 0), theta'(0) = 1, theta'(b) = -1
// plus theta in (0, pi/2) on sampled interior points. Endpoint tolerances are
// tol * (1 + max |theta^(j)|, j <= 4, sampled on [0, b]).
SmoothnessReport closure_smoothness_check(const FunctionSpec1D& theta, double b,
                                          ClosureTarget target, int k_max = 2,
                                          double tol = 1e-6);

// theta avoids multiples of pi/2 on the grid with margin >= tol, and the
// length probes along x, y and z from the origin.
SmoothnessReport r3_admissibility(const FunctionSpec1D& theta, const std::vector<double>& grid,
                                  double tol = 1e-6);

// Derivatives 0..n of sin(theta(x)) (shift = 0) or cos(theta(x)) (shift = 1).
std::vector<double> trig_composite_derivatives(const FunctionSpec1D& theta, double x, int n,
                                               int shift);

// Base of the submersion (x, y, z) -> (x, y - z).
MetricChart submersion_base_chart(const FunctionSpec1D& theta);

struct BaseCurvature {
  double closed_form = 0.0;        // 4 theta'^2 - 2 cot(2 theta) theta''
  double finite_difference = 0.0;  // -phi''/phi, phi = sin(2 theta) / 2
  double gap = 0.0;
};
BaseCurvature base_gauss_curvature_at(const FunctionSpec1D& theta, double u);

// d pi(v) = (v_x, v_y - v_z).
Vec submersion_differential(const Vec& v);

// | |d pi(v)|_base - 1 | for a unit horizontal v at p. Throws NotHorizontal
// when |<v, xi>| > 1e-8.
double submersion_isometry_defect(const FunctionSpec1D& theta, const Vec& p, const Vec& v);

enum class CurvatureClass { flat, spherical };
std::string_view to_string(CurvatureClass c);

struct SpotCheck {
  Vec point;
  Vec v1;
  Vec v2;
  double sectional = 0.0;
};

struct ConstantCurvatureResult {
  std::optional<double> alpha_squared;
  std::optional<CurvatureClass> curvature_class;
  double mean_slope = 0.0;
  double max_slope_deviation = 0.0;
  std::vector<SpotCheck> spot_checks;
  bool spot_checks_pass = false;
};

// theta' constant to tol on a 257-point grid => alpha^2 = theta'^2, then three
// seeded random sectional curvatures must equal alpha^2 to 1e-4.
ConstantCurvatureResult constant_curvature_detect(const FunctionSpec1D& theta, Interval interval,
                                                  double tol = 1e-10, std::uint64_t seed = 1);

struct ExtrinsicCurvature {
  double closed_form = 0.0;  // (cot theta theta') (-tan theta theta') = -theta'^2
  double numeric = 0.0;      // det S from the numeric fundamental forms
  double gap = 0.0;
};
ExtrinsicCurvature level_surface_extrinsic_curvature(const FunctionSpec1D& theta, double x0);

}  // namespace umbilic
