#include "umbilic/fields.hpp"

#include <algorithm>
#include <cmath>

#include "umbilic/connection.hpp"
#include "umbilic/errors.hpp"

namespace umbilic {

std::string_view to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::coordinate: return "coordinate";
    case FieldKind::xi: return "xi";
    case FieldKind::linear_combination: return "linear-combination";
    case FieldKind::sampled: return "sampled";
  }
  return "unknown";
}

VectorFieldSpec VectorFieldSpec::coordinate(int index) {
  VectorFieldSpec f;
  f.kind_ = FieldKind::coordinate;
  f.index_ = index;
  f.label_ = "coordinate " + std::to_string(index);
  return f;
}

VectorFieldSpec VectorFieldSpec::xi() {
  VectorFieldSpec f;
  f.kind_ = FieldKind::xi;
  f.label_ = "xi";
  return f;
}

VectorFieldSpec VectorFieldSpec::linear_combination(std::vector<FunctionSpec1D> coefficients,
                                                    int argument) {
  VectorFieldSpec f;
  f.kind_ = FieldKind::linear_combination;
  f.coefficients_ = std::move(coefficients);
  f.index_ = argument;
  f.label_ = "linear-combination";
  return f;
}

VectorFieldSpec VectorFieldSpec::sampled(std::function<Vec(const Vec&)> fn, std::string label) {
  VectorFieldSpec f;
  f.kind_ = FieldKind::sampled;
  f.sampled_ = std::move(fn);
  f.label_ = std::move(label);
  return f;
}

Vec xi_components(const MetricChart& chart) {
  switch (chart.kind()) {
    case ChartKind::theta3:
      return make_vec({0.0, 1.0, 1.0});
    case ChartKind::warped_product:
      return unit_vec(chart.dim(), 0);
    default:
      throw GeometryError(ErrorCode::invalid_argument,
                          std::string("chart kind ") + std::string(to_string(chart.kind())) +
                              " carries no unit Killing field xi");
  }
}

Vec VectorFieldSpec::value(const MetricChart& chart, const Vec& p) const {
  const int d = chart.dim();
  switch (kind_) {
    case FieldKind::coordinate:
      if (index_ < 0 || index_ >= d) {
        throw GeometryError(ErrorCode::invalid_argument, "coordinate field index out of range");
      }
      return unit_vec(d, index_);
    case FieldKind::xi:
      return xi_components(chart);
    case FieldKind::linear_combination: {
      if (static_cast<int>(coefficients_.size()) != d) {
        throw GeometryError(ErrorCode::invalid_argument,
                            "linear combination needs one coefficient per coordinate");
      }
      Vec v(d);
      for (int k = 0; k < d; ++k) {
        v(k) = coefficients_[static_cast<std::size_t>(k)].eval_unchecked(p(index_));
      }
      return v;
    }
    case FieldKind::sampled:
      return sampled_(p);
  }
  return Vec::Zero(d);
}

Mat VectorFieldSpec::jacobian(const MetricChart& chart, const Vec& p) const {
  const int d = chart.dim();
  Mat J = Mat::Zero(d, d);
  switch (kind_) {
    case FieldKind::coordinate:
    case FieldKind::xi:
      return J;
    case FieldKind::linear_combination:
      for (int k = 0; k < d; ++k) {
        J(k, index_) = coefficients_[static_cast<std::size_t>(k)].eval_unchecked(p(index_), 1);
      }
      return J;
    case FieldKind::sampled:
      for (int j = 0; j < d; ++j) {
        const double h = fd_step(p(j));
        Vec plus = p, minus = p;
        plus(j) += h;
        minus(j) -= h;
        J.col(j) = (sampled_(plus) - sampled_(minus)) / (2.0 * h);
      }
      return J;
  }
  return J;
}

Mat covariant_matrix_at(const MetricChart& chart, const VectorFieldSpec& field, const Vec& p) {
  chart.require_inside(p);
  const int d = chart.dim();
  const Vec v = field.value(chart, p);
  Mat A = field.jacobian(chart, p);
  const Christoffel gamma = connection_unchecked(chart, p);
  for (int j = 0; j < d; ++j) {
    A.col(j) += gamma.contract(unit_vec(d, j), v);
  }
  return A;
}

namespace {

// Lower-triangular L with g = L L^T; vectors go to orthonormal components by L^T.
Mat cholesky_factor(const Mat& g) {
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) {
    throw GeometryError(ErrorCode::invalid_spec, "metric not positive definite");
  }
  return llt.matrixL();
}

double killing_defect_from(const Mat& g, const Mat& A) {
  const Mat gA = g * A;
  const Mat K = gA + gA.transpose();
  const Mat L = cholesky_factor(g);
  const Mat Linv = L.inverse();
  const Mat B = Linv * K * Linv.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> es(B, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Mat select(const Mat& m, const std::vector<int>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Mat out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(r, c) = m(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

}  // namespace

double killing_defect_at(const MetricChart& chart, const VectorFieldSpec& field, const Vec& p) {
  const Mat A = covariant_matrix_at(chart, field, p);
  return killing_defect_from(chart.metric_unchecked(p), A);
}

KillingReport killing_defect(const MetricChart& chart, const VectorFieldSpec& field,
                             const Grid& grid, double tol, Execution ex) {
  if (grid.empty()) throw GeometryError(ErrorCode::invalid_argument, "empty grid");
  KillingReport r;
  r.grid = grid;
  r.tolerance = tol;
  r.defects = map_grid<double>(
      grid.size(), [&](std::size_t i) { return killing_defect_at(chart, field, grid[i]); }, ex);
  const auto worst = std::max_element(r.defects.begin(), r.defects.end());
  r.worst_index = static_cast<std::size_t>(worst - r.defects.begin());
  r.max_defect = *worst;
  r.killing = r.max_defect < tol;
  return r;
}

ConformalReport closed_conformal_defect(const MetricChart& chart, const VectorFieldSpec& field,
                                        const Grid& grid, double tol, std::vector<int> factor,
                                        Execution ex) {
  if (grid.empty()) throw GeometryError(ErrorCode::invalid_argument, "empty grid");
  if (factor.empty()) {
    for (int i = 0; i < chart.dim(); ++i) factor.push_back(i);
  }
  for (int i : factor) {
    if (i < 0 || i >= chart.dim()) {
      throw GeometryError(ErrorCode::invalid_argument, "factor coordinate out of range");
    }
  }
  struct Point {
    double phi;
    double residual;
  };
  const auto points = map_grid<Point>(
      grid.size(),
      [&](std::size_t i) {
        const Vec& p = grid[i];
        const Mat A = select(covariant_matrix_at(chart, field, p), factor);
        const Mat g = select(chart.metric_unchecked(p), factor);
        const auto d = A.rows();
        const double phi = A.trace() / static_cast<double>(d);
        const Mat L = cholesky_factor(g);
        const Mat C = L.transpose() * (A - phi * Mat::Identity(d, d)) * L.transpose().inverse();
        return Point{phi, C.colwise().norm().maxCoeff()};
      },
      ex);
  ConformalReport r;
  r.grid = grid;
  r.tolerance = tol;
  r.factor = factor;
  for (const auto& pt : points) {
    r.phi.push_back(pt.phi);
    r.residual.push_back(pt.residual);
  }
  const auto worst = std::max_element(r.residual.begin(), r.residual.end());
  r.worst_index = static_cast<std::size_t>(worst - r.residual.begin());
  r.max_residual = *worst;
  r.closed_conformal = r.max_residual < tol;
  return r;
}

Vec cross_product(const MetricChart& chart, const Vec& p, const Vec& a, const Vec& b) {
  if (chart.dim() != 3) {
    throw GeometryError(ErrorCode::invalid_argument, "cross product needs a 3-dimensional chart");
  }
  const Mat g = chart.metric_unchecked(p);
  const Eigen::Vector3d a3(a(0), a(1), a(2));
  const Eigen::Vector3d b3(b(0), b(1), b(2));
  const Eigen::Vector3d lowered = std::sqrt(g.determinant()) * a3.cross(b3);
  const Vec low = make_vec({lowered(0), lowered(1), lowered(2)});
  return g.inverse() * low;
}

double tau_at(const MetricChart& chart, const VectorFieldSpec& field, const Vec& p,
              std::optional<Vec> e_hint) {
  if (chart.dim() != 3) {
    throw GeometryError(ErrorCode::invalid_argument, "tau needs a 3-dimensional chart");
  }
  chart.require_inside(p);
  const Mat g = chart.metric_unchecked(p);
  const Vec xi = field.value(chart, p);
  const double len = std::sqrt(inner(g, xi, xi));
  const Mat A = covariant_matrix_at(chart, field, p);
  if (std::abs(len - 1.0) > 1e-6 || killing_defect_from(g, A) > 1e-6) {
    throw GeometryError(ErrorCode::not_unit_killing, "field is not a unit Killing field at p");
  }

  std::vector<Vec> candidates;
  if (e_hint) candidates.push_back(*e_hint);
  for (int i = 0; i < 3; ++i) candidates.push_back(unit_vec(3, i));
  for (const Vec& c : candidates) {
    Vec e = c - inner(g, c, xi) * xi;
    const double n = std::sqrt(inner(g, e, e));
    if (n < 1e-6) continue;
    e /= n;
    return inner(g, A * e, cross_product(chart, p, e, xi));
  }
  throw GeometryError(ErrorCode::degenerate_frame, "no direction orthogonal to xi found");
}

double tau_derivative_along_field(const MetricChart& chart, const VectorFieldSpec& field,
                                  const Vec& p) {
  const Vec xi = field.value(chart, p);
  const double h = 1e-4;
  return (tau_at(chart, field, p + h * xi) - tau_at(chart, field, p - h * xi)) / (2.0 * h);
}

Vec lie_bracket_at(const MetricChart& chart, const VectorFieldSpec& x, const VectorFieldSpec& y,
                   const Vec& p) {
  chart.require_inside(p);
  return y.jacobian(chart, p) * x.value(chart, p) - x.jacobian(chart, p) * y.value(chart, p);
}

}  // namespace umbilic
