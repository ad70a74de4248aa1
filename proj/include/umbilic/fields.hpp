#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "umbilic/chart.hpp"
#include "umbilic/kernels.hpp"

namespace umbilic {

enum class FieldKind { coordinate, xi, linear_combination, sampled };

std::string_view to_string(FieldKind kind);

// A vector field given by coordinate components.
//   coordinate          d_index
//   xi                  the chart's unit Killing field: d_y + d_z on theta3, d_x0 on warped products
//   linear_combination  sum_k c_k(x^arg) d_k, coefficients are functions of one coordinate
//   sampled             arbitrary callback; derivatives by centered differences
class VectorFieldSpec {
 public:
  static VectorFieldSpec coordinate(int index);
  static VectorFieldSpec xi();
  static VectorFieldSpec linear_combination(std::vector<FunctionSpec1D> coefficients,
                                            int argument = 0);
  static VectorFieldSpec sampled(std::function<Vec(const Vec&)> fn,
                                 std::string label = "sampled");

  FieldKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  Vec value(const MetricChart& chart, const Vec& p) const;
  // J(k, j) = d_j V^k.
  Mat jacobian(const MetricChart& chart, const Vec& p) const;

 private:
  FieldKind kind_ = FieldKind::coordinate;
  int index_ = 0;
  std::vector<FunctionSpec1D> coefficients_;
  std::function<Vec(const Vec&)> sampled_;
  std::string label_;
};

// Coordinate components of the unit Killing field of the chart. Throws
// InvalidArgument for charts that do not carry one.
Vec xi_components(const MetricChart& chart);

// Column j is D_{d_j} V at p.
Mat covariant_matrix_at(const MetricChart& chart, const VectorFieldSpec& field, const Vec& p);

// Spectral norm, in a g-orthonormal frame, of
// g(D_X V, Y) + g(D_Y V, X).
double killing_defect_at(const MetricChart& chart, const VectorFieldSpec& field, const Vec& p);

struct KillingReport {
  Grid grid;
  std::vector<double> defects;
  double max_defect = 0.0;
  std::size_t worst_index = 0;
  double tolerance = 0.0;
  bool killing = false;
};

KillingReport killing_defect(const MetricChart& chart, const VectorFieldSpec& field,
                             const Grid& grid, double tol = 1e-10,
                             Execution ex = Execution::parallel);

struct ConformalReport {
  Grid grid;
  std::vector<double> phi;       // trace(D V) / d
  std::vector<double> residual;  // max over orthonormal frame of |D_E V - phi E|
  double max_residual = 0.0;
  std::size_t worst_index = 0;
  double tolerance = 0.0;
  bool closed_conformal = false;
  std::vector<int> factor;  // coordinates the check was restricted to
};

// `factor` restricts the check to a coordinate sub-factor of a product chart
// (e.g. {x1, u1} of a warped product); empty means all coordinates.
ConformalReport closed_conformal_defect(const MetricChart& chart, const VectorFieldSpec& field,
                                        const Grid& grid, double tol = 1e-8,
                                        std::vector<int> factor = {},
                                        Execution ex = Execution::parallel);

// Metric cross product on a 3-chart, (x, y, z) positively oriented.
Vec cross_product(const MetricChart& chart, const Vec& p, const Vec& a, const Vec& b);

// Twist tau with D_X xi = tau (X x xi), read off as <D_e xi, e x xi> for a
// unit e orthogonal to xi. `e_hint` picks e (projected and normalized);
// otherwise the first usable coordinate direction is used.
// Throws NotUnitKilling when | |xi| - 1 | or the Killing defect at p exceeds 1e-6.
double tau_at(const MetricChart& chart, const VectorFieldSpec& field, const Vec& p,
              std::optional<Vec> e_hint = std::nullopt);

// xi(tau) by centered differences along the field.
double tau_derivative_along_field(const MetricChart& chart, const VectorFieldSpec& field,
                                  const Vec& p);

// [X, Y]^k = X^j d_j Y^k - Y^j d_j X^k.
Vec lie_bracket_at(const MetricChart& chart, const VectorFieldSpec& x, const VectorFieldSpec& y,
                   const Vec& p);

}  // namespace umbilic
