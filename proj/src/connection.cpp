#include "umbilic/connection.hpp"

#include <cmath>

#include "umbilic/errors.hpp"

namespace umbilic {

std::string_view to_string(ChristoffelMethod method) {
  switch (method) {
    case ChristoffelMethod::closed_form: return "closed-form";
    case ChristoffelMethod::finite_difference: return "finite-difference";
    case ChristoffelMethod::metric_derivatives: return "metric-derivatives";
  }
  return "unknown";
}

Vec Christoffel::contract(const Vec& a, const Vec& b) const {
  Vec out = Vec::Zero(dim_);
  for (int k = 0; k < dim_; ++k) {
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) acc += (*this)(k, i, j) * a(i) * b(j);
    }
    out(k) = acc;
  }
  return out;
}

double Christoffel::max_abs_difference(const Christoffel& other) const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    m = std::max(m, std::abs(values_[i] - other.values_[i]));
  }
  return m;
}

namespace {

// Gamma^k_ij = 1/2 g^{kl} (d_i g_lj + d_j g_li - d_l g_ij)
Christoffel koszul(const Mat& g, const std::array<Mat, kMaxDim>& dg) {
  const int d = static_cast<int>(g.rows());
  const Mat ginv = g.inverse();
  Christoffel gamma(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Vec lowered(d);
      for (int l = 0; l < d; ++l) {
        lowered(l) = 0.5 * (dg[static_cast<std::size_t>(i)](l, j) +
                            dg[static_cast<std::size_t>(j)](l, i) -
                            dg[static_cast<std::size_t>(l)](i, j));
      }
      const Vec raised = ginv * lowered;
      for (int k = 0; k < d; ++k) {
        gamma(k, i, j) = raised(k);
        gamma(k, j, i) = raised(k);
      }
    }
  }
  return gamma;
}

Christoffel from_exact_partials(const MetricChart& chart, const Vec& p) {
  const int d = chart.dim();
  const Mat D = chart.metric_diagonal_partials(p);
  std::array<Mat, kMaxDim> dg;
  for (int l = 0; l < d; ++l) dg[static_cast<std::size_t>(l)] = D.col(l).asDiagonal();
  return koszul(chart.metric_unchecked(p), dg);
}

Christoffel from_finite_differences(const MetricChart& chart, const Vec& p) {
  const int d = chart.dim();
  std::array<Mat, kMaxDim> dg;
  for (int l = 0; l < d; ++l) {
    const double h = fd_step(p(l));
    Vec plus = p, minus = p;
    plus(l) += h;
    minus(l) -= h;
    dg[static_cast<std::size_t>(l)] =
        (chart.metric_unchecked(plus) - chart.metric_unchecked(minus)) / (2.0 * h);
  }
  return koszul(chart.metric_unchecked(p), dg);
}

// Diagonal metric dx^2 + a(x)^2 dy^2 + b(x)^2 dz^2. With a = sin theta and
// b = cos theta these are exactly the six connection formulas of the
// theta normal form.
Christoffel axis_closed_form(double a, double da, double b, double db) {
  Christoffel gamma(3);
  gamma(1, 0, 1) = gamma(1, 1, 0) = da / a;
  gamma(2, 0, 2) = gamma(2, 2, 0) = db / b;
  gamma(0, 1, 1) = -a * da;
  gamma(0, 2, 2) = -b * db;
  return gamma;
}

Christoffel theta3_closed_form(const FunctionSpec1D& theta, double x) {
  const double t = theta.eval_unchecked(x);
  const double dt = theta.eval_unchecked(x, 1);
  const double s = std::sin(t), c = std::cos(t);
  Christoffel gamma(3);
  gamma(1, 0, 1) = gamma(1, 1, 0) = c / s * dt;   // D_x d_y =  cot(theta) theta' d_y
  gamma(2, 0, 2) = gamma(2, 2, 0) = -s / c * dt;  // D_x d_z = -tan(theta) theta' d_z
  gamma(0, 1, 1) = -c * s * dt;                   // D_y d_y = -cos sin theta' d_x
  gamma(0, 2, 2) = c * s * dt;                    // D_z d_z =  cos sin theta' d_x
  return gamma;
}

}  // namespace

bool has_closed_form(const MetricChart& chart) {
  return chart.kind() == ChartKind::theta3 || chart.kind() == ChartKind::diagonal_axis;
}

Christoffel connection_unchecked(const MetricChart& chart, const Vec& p) {
  switch (chart.kind()) {
    case ChartKind::theta3:
      return theta3_closed_form(chart.theta(), p(0));
    case ChartKind::diagonal_axis: {
      const auto& a = chart.axis_a();
      const auto& b = chart.axis_b();
      return axis_closed_form(a.eval_unchecked(p(0)), a.eval_unchecked(p(0), 1),
                              b.eval_unchecked(p(0)), b.eval_unchecked(p(0), 1));
    }
    default:
      return from_exact_partials(chart, p);
  }
}

Christoffel christoffel_at(const MetricChart& chart, const Vec& p, ChristoffelMethod method) {
  chart.require_inside(p);
  switch (method) {
    case ChristoffelMethod::closed_form:
      if (!has_closed_form(chart)) {
        throw GeometryError(ErrorCode::method_unavailable,
                            "closed-form Christoffels exist only for theta3 and diagonal-axis");
      }
      return connection_unchecked(chart, p);
    case ChristoffelMethod::finite_difference:
      return from_finite_differences(chart, p);
    case ChristoffelMethod::metric_derivatives:
      return from_exact_partials(chart, p);
  }
  return Christoffel(chart.dim());
}

}  // namespace umbilic
