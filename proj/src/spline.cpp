#include "umbilic/spline.hpp"

#include <algorithm>

#include "umbilic/errors.hpp"

namespace umbilic {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 4 || y_.size() != n) {
    throw GeometryError(ErrorCode::invalid_spec,
                        "tabulated spline needs >= 4 knots and matching values");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw GeometryError(ErrorCode::invalid_spec, "spline knots must be strictly increasing");
    }
  }

  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

  // Tridiagonal system for M_1..M_{n-2}; the not-a-knot conditions
  // (third derivative continuous at x_1 and x_{n-2}) are eliminated into the
  // first and last rows.
  const std::size_t k = n - 2;
  std::vector<double> a(k), b(k), c(k), r(k);
  for (std::size_t row = 0; row < k; ++row) {
    const std::size_t i = row + 1;
    a[row] = h[i - 1];
    b[row] = 2.0 * (h[i - 1] + h[i]);
    c[row] = h[i];
    r[row] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  }
  b[0] += a[0] * (h[0] + h[1]) / h[1];
  c[0] -= a[0] * h[0] / h[1];
  a[0] = 0.0;
  b[k - 1] += c[k - 1] * (h[n - 3] + h[n - 2]) / h[n - 3];
  a[k - 1] -= c[k - 1] * h[n - 2] / h[n - 3];
  c[k - 1] = 0.0;

  for (std::size_t row = 1; row < k; ++row) {
    const double w = a[row] / b[row - 1];
    b[row] -= w * c[row - 1];
    r[row] -= w * r[row - 1];
  }
  m_.assign(n, 0.0);
  m_[k] = r[k - 1] / b[k - 1];
  for (std::size_t row = k - 1; row-- > 0;) {
    m_[row + 1] = (r[row] - c[row] * m_[row + 2]) / b[row];
  }
  m_[0] = ((h[0] + h[1]) * m_[1] - h[0] * m_[2]) / h[1];
  m_[n - 1] = ((h[n - 3] + h[n - 2]) * m_[n - 2] - h[n - 2] * m_[n - 3]) / h[n - 3];
}

std::size_t CubicSpline::segment(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double CubicSpline::eval(double t, int order) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double l = x_[i + 1] - t;
  const double r = t - x_[i];
  const double ci = y_[i] / h - m_[i] * h / 6.0;
  const double cj = y_[i + 1] / h - m_[i + 1] * h / 6.0;
  switch (order) {
    case 0:
      return m_[i] * l * l * l / (6.0 * h) + m_[i + 1] * r * r * r / (6.0 * h) + ci * l + cj * r;
    case 1:
      return -m_[i] * l * l / (2.0 * h) + m_[i + 1] * r * r / (2.0 * h) - ci + cj;
    case 2:
      return (m_[i] * l + m_[i + 1] * r) / h;
    default:
      throw GeometryError(ErrorCode::unsupported_order, "spline evaluates orders 0..2 directly");
  }
}

}  // namespace umbilic
