#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "umbilic/chart.hpp"
#include "umbilic/fields.hpp"
#include "umbilic/kernels.hpp"

namespace umbilic {

enum class ImmersionKind { slice, vertical_lift, profile_built, level_x, flow_sweep, custom };

std::string_view to_string(ImmersionKind kind);

struct ImmersionMetadata {
  // Expected common shape-operator eigenvalue as a function of the parameters.
  std::function<double(const Vec&)> expected_lambda;
  std::optional<bool> expected_totally_geodesic;
  std::optional<double> expected_shape_determinant;
  std::string note;
};

// Parametrized hypersurface q -> Sigma(q) of a chart, with q in a (d-1)-box.
// The frame (columns d Sigma(e_i)) is closed-form when a Jacobian callback is
// given and centered differences of the map otherwise.
class ImmersionSpec {
 public:
  using Map = std::function<Vec(const Vec&)>;
  using Jacobian = std::function<Mat(const Vec&)>;

  ImmersionSpec(ImmersionKind kind, Box parameters, Map map, Jacobian jacobian = {},
                ImmersionMetadata metadata = {});

  ImmersionKind kind() const { return kind_; }
  const Box& parameters() const { return params_; }
  const ImmersionMetadata& metadata() const { return meta_; }
  int parameter_dim() const { return params_.dim(); }

  Vec point(const Vec& q) const { return map_(q); }
  Mat frame(const Vec& q) const;
  bool closed_form_frame() const { return static_cast<bool>(jacobian_); }

  // Differencing step on parameter axis i: 1e-4 of the axis width.
  double step(int i) const;

 private:
  ImmersionKind kind_;
  Box params_;
  Map map_;
  Jacobian jacobian_;
  ImmersionMetadata meta_;
};

// Full-rank and induced-metric checks on a samples^(d-1) grid; throws RankDeficient.
void validate_immersion(const MetricChart& chart, const ImmersionSpec& imm, int samples = 5);

// Tensor grid over the parameter box, pulled in from each edge by `inset`
// (a fraction of the width) so difference stencils stay near the box.
Grid parameter_grid(const ImmersionSpec& imm, const std::vector<int>& counts,
                    double inset = 0.02);

enum class NormalOrientation { positive, flipped };

// positive: (d Sigma(e_1), ..., d Sigma(e_{d-1}), N) is a positively
// oriented frame of the chart.
struct FundamentalForms {
  Vec q;
  Vec point;
  Mat frame;   // d x (d-1)
  Mat first;   // I
  Vec normal;  // N, chart components
  Mat second;  // II_ij = <D_{e_i} d Sigma(e_j), N>
  Mat shape;   // S = I^{-1} II, S X = -D_X N
};

FundamentalForms fundamental_forms_at(const MetricChart& chart, const ImmersionSpec& imm,
                                      const Vec& q,
                                      NormalOrientation orientation = NormalOrientation::positive);

// Eigenvalues of S, ascending.
std::vector<double> shape_eigenvalues(const FundamentalForms& forms);

struct UmbilicityReport {
  Grid grid;
  std::vector<std::vector<double>> eigenvalues;
  std::vector<double> mean_eigenvalue;  // lambda-bar per point
  std::vector<double> spread;           // max - min eigenvalue per point
  double deviation = 0.0;               // max spread
  double max_abs_eigenvalue = 0.0;
  std::size_t worst_index = 0;
  double tolerance = 0.0;
  bool totally_umbilical = false;
  bool totally_geodesic = false;  // implies totally_umbilical
  NormalOrientation orientation = NormalOrientation::positive;
};

UmbilicityReport umbilicity_report(const MetricChart& chart, const ImmersionSpec& imm,
                                   const Grid& grid, double tol = 1e-6,
                                   NormalOrientation orientation = NormalOrientation::positive,
                                   Execution ex = Execution::parallel);

// xi = d Sigma(T) + nu N.
struct XiSplit {
  Vec q;
  Vec tangent;          // parameter components of T
  Vec tangent_ambient;  // chart components of d Sigma(T)
  double nu = 0.0;
};

XiSplit decompose_xi_at(const MetricChart& chart, const ImmersionSpec& imm, const Vec& q,
                        NormalOrientation orientation = NormalOrientation::positive,
                        const VectorFieldSpec& field = VectorFieldSpec::xi());

// Residuals of D_X T = nu S X and X(nu) = -h(X, T), maximized over an
// orthonormal frame of I. Uses the induced (intrinsic) connection.
struct Lemma1Residual {
  double r1 = 0.0;
  double r2 = 0.0;
};

Lemma1Residual lemma1_residual(const MetricChart& chart, const ImmersionSpec& imm,
                               const Vec& q);

// T(nu), the derivative of nu along the tangential part of xi.
double nu_derivative_along_tangent(const MetricChart& chart, const ImmersionSpec& imm,
                                   const Vec& q);

// Extends T off a totally geodesic surface by the flow of xi (a coordinate
// translation on charts where xi has constant components) and measures the
// Killing defect of the extension on `grid`.
// Throws NotTotallyGeodesic or TangentToXi when the preconditions fail.
KillingReport extended_T_killing_defect(const MetricChart& chart, const ImmersionSpec& imm,
                                        const Grid& grid, double tol = 1e-10,
                                        Execution ex = Execution::parallel);

// The extended field on its own, for callers that want to inspect it.
VectorFieldSpec extended_tangent_field(const MetricChart& chart, const ImmersionSpec& imm);

}  // namespace umbilic
