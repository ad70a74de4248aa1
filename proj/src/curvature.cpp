#include "umbilic/curvature.hpp"

#include <cmath>

#include "umbilic/errors.hpp"

namespace umbilic {

std::string_view to_string(CurvatureMethod method) {
  return method == CurvatureMethod::closed_form ? "closed-form" : "finite-difference";
}

Vec Riemann::apply(const Vec& x, const Vec& y, const Vec& z) const {
  Vec out = Vec::Zero(dim_);
  for (int l = 0; l < dim_; ++l) {
    double acc = 0.0;
    for (int k = 0; k < dim_; ++k) {
      for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) acc += (*this)(l, k, i, j) * x(i) * y(j) * z(k);
      }
    }
    out(l) = acc;
  }
  return out;
}

Riemann riemann_at(const MetricChart& chart, const Vec& p) {
  chart.require_inside(p);
  const int d = chart.dim();
  const Christoffel gamma = connection_unchecked(chart, p);

  // dgamma[i](l, j, k) = d_i Gamma^l_jk
  std::array<Christoffel, kMaxDim> dgamma;
  for (int i = 0; i < d; ++i) {
    const double h = fd_step(p(i));
    auto shifted = [&](double offset) {
      Vec q = p;
      q(i) += offset;
      return connection_unchecked(chart, q);
    };
    const Christoffel p2 = shifted(2 * h), p1 = shifted(h), m1 = shifted(-h), m2 = shifted(-2 * h);
    Christoffel out(d);
    for (int l = 0; l < d; ++l) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          out(l, j, k) = (-p2(l, j, k) + 8.0 * p1(l, j, k) - 8.0 * m1(l, j, k) + m2(l, j, k)) /
                         (12.0 * h);
        }
      }
    }
    dgamma[static_cast<std::size_t>(i)] = out;
  }

  Riemann r(d);
  for (int l = 0; l < d; ++l) {
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          double v = dgamma[static_cast<std::size_t>(i)](l, j, k) -
                     dgamma[static_cast<std::size_t>(j)](l, i, k);
          for (int m = 0; m < d; ++m) {
            v += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          }
          r(l, k, i, j) = v;
        }
      }
    }
  }
  return r;
}

Mat ricci_at(const MetricChart& chart, const Vec& p) {
  const Riemann r = riemann_at(chart, p);
  const int d = chart.dim();
  Mat ric = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < d; ++i) ric(j, k) += r(i, k, i, j);
    }
  }
  return ric;
}

double sectional_curvature_at(const MetricChart& chart, const Vec& p, const Vec& v1,
                              const Vec& v2) {
  const Mat g = metric_at(chart, p);
  const double area2 = inner(g, v1, v1) * inner(g, v2, v2) - std::pow(inner(g, v1, v2), 2);
  if (!(area2 > 1e-24)) {
    throw GeometryError(ErrorCode::degenerate_plane, "tangent vectors span no 2-plane");
  }
  const Riemann r = riemann_at(chart, p);
  return inner(g, r.apply(v1, v2, v2), v1) / area2;
}

double scalar_curvature_at(const MetricChart& chart, const Vec& p) {
  if (chart.dim() > kMaxDim) {
    throw GeometryError(ErrorCode::invalid_argument, "scalar curvature needs dimension <= 4");
  }
  const Mat g = metric_at(chart, p);
  return (g.inverse().cwiseProduct(ricci_at(chart, p))).sum();
}

CurvatureSample curvature_sample(const MetricChart& chart, const Vec& p, const Vec& v1,
                                 const Vec& v2) {
  CurvatureSample s;
  s.point = p;
  s.v1 = v1;
  s.v2 = v2;
  s.sectional = sectional_curvature_at(chart, p, v1, v2);
  s.scalar = scalar_curvature_at(chart, p);
  s.method = CurvatureMethod::finite_difference;
  return s;
}

Theta3FrameCurvature theta3_frame_curvature(const FunctionSpec1D& theta, double x) {
  const double t = theta.eval(x);
  const double d1 = theta.eval(x, 1);
  const double d2 = theta.eval(x, 2);
  Theta3FrameCurvature k;
  k.k_xy = d1 * d1 - std::cos(t) / std::sin(t) * d2;
  k.k_xz = d1 * d1 + std::tan(t) * d2;
  k.k_yz = d1 * d1;
  k.scalar = 6.0 * d1 * d1 - 4.0 / std::tan(2.0 * t) * d2;
  return k;
}

ScalarCurvatureCheck theta3_scalar_check(const MetricChart& chart, const Vec& p, double tol) {
  if (chart.kind() != ChartKind::theta3) {
    throw GeometryError(ErrorCode::invalid_argument, "scalar check needs a theta3 chart");
  }
  const auto& theta = chart.theta();
  const double t = theta.eval(p(0));
  const double d1 = theta.eval(p(0), 1);
  const double d2 = theta.eval(p(0), 2);
  ScalarCurvatureCheck c;
  c.finite_difference = scalar_curvature_at(chart, p);
  c.frame_oracle = theta3_frame_curvature(theta, p(0)).scalar;
  c.unit_coefficient_formula = d1 * d1 - 4.0 / std::tan(2.0 * t) * d2;
  c.oracle_gap = std::abs(c.finite_difference - c.frame_oracle);
  c.formula_gap = c.frame_oracle - c.unit_coefficient_formula;
  c.formula_disagrees = std::abs(c.formula_gap) > tol;
  return c;
}

}  // namespace umbilic
