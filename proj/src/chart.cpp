#include "umbilic/chart.hpp"

#include <cmath>
#include <sstream>

#include "umbilic/errors.hpp"

namespace umbilic {

std::string_view to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::warped_product: return "warped-product";
    case ChartKind::theta3: return "theta3";
    case ChartKind::base2: return "base2";
    case ChartKind::diagonal_axis: return "diagonal-axis";
    case ChartKind::conformal: return "conformal";
  }
  return "unknown";
}

std::string_view to_string(FiberPreset fiber) {
  return fiber == FiberPreset::flat ? "flat" : "round-unit-sphere";
}

bool Box::contains(const Vec& p) const {
  if (p.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (!axes[static_cast<std::size_t>(i)].contains(p(i))) return false;
  }
  return true;
}

Interval Box::sampling_axis(int i) const {
  Interval a = axes[static_cast<std::size_t>(i)];
  if (!std::isfinite(a.lo) && !std::isfinite(a.hi)) return {-1.0, 1.0};
  if (!std::isfinite(a.lo)) return {a.hi - 2.0, a.hi};
  if (!std::isfinite(a.hi)) return {a.lo, a.lo + 2.0};
  return a;
}

namespace {

Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

bool inside(Interval inner, Interval outer) { return inner.lo >= outer.lo && inner.hi <= outer.hi; }

std::string point_string(const Vec& p) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < p.size(); ++i) out << (i ? ", " : "") << p(i);
  out << ")";
  return out.str();
}

// Samples of an axis for range checks; unbounded ends are clipped at +-50.
std::vector<double> axis_samples(Interval a, int n) {
  const double lo = std::isfinite(a.lo) ? a.lo : std::min(-50.0, a.hi);
  const double hi = std::isfinite(a.hi) ? a.hi : std::max(50.0, a.lo);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return xs;
}

}  // namespace

MetricChart::MetricChart(ChartKind kind, std::vector<FunctionSpec1D> fns, Box box,
                         std::vector<std::string> names)
    : kind_(kind), fns_(std::move(fns)), box_(std::move(box)), names_(std::move(names)) {}

MetricChart MetricChart::warped_product(FunctionSpec1D f, int fiber_dim, FiberPreset fiber) {
  if (fiber_dim != 1 && fiber_dim != 2) {
    throw GeometryError(ErrorCode::invalid_spec, "warped product fiber dimension must be 1 or 2");
  }
  std::vector<std::string> names{"x0", "x1", "u1"};
  Box box{{Interval::real_line(), f.domain(), Interval::real_line()}};
  if (fiber_dim == 2) {
    names.emplace_back("u2");
    if (fiber == FiberPreset::round_sphere) box.axes[2] = {0.1, M_PI - 0.1};
    box.axes.push_back(Interval::real_line());
  }
  MetricChart chart(ChartKind::warped_product, {std::move(f)}, std::move(box), std::move(names));
  chart.fiber_dim_ = fiber_dim;
  chart.fiber_ = fiber;
  chart.validate();
  return chart;
}

MetricChart MetricChart::theta3(FunctionSpec1D theta) {
  Box box{{theta.domain(), Interval::real_line(), Interval::real_line()}};
  MetricChart chart(ChartKind::theta3, {std::move(theta)}, std::move(box), {"x", "y", "z"});
  chart.validate();
  return chart;
}

MetricChart MetricChart::base2(FunctionSpec1D theta) {
  Box box{{theta.domain(), Interval::real_line()}};
  MetricChart chart(ChartKind::base2, {std::move(theta)}, std::move(box), {"u", "v"});
  chart.validate();
  return chart;
}

MetricChart MetricChart::diagonal_axis(FunctionSpec1D a, FunctionSpec1D b) {
  Box box{{intersect(a.domain(), b.domain()), Interval::real_line(), Interval::real_line()}};
  if (box.axes[0].lo > box.axes[0].hi) {
    throw GeometryError(ErrorCode::invalid_spec, "axis functions have disjoint domains");
  }
  MetricChart chart(ChartKind::diagonal_axis, {std::move(a), std::move(b)}, std::move(box),
                    {"x", "y", "z"});
  chart.validate();
  return chart;
}

MetricChart MetricChart::conformal(FunctionSpec1D h, const MetricChart& base) {
  Box box = base.box();
  box.axes[0] = intersect(box.axes[0], h.domain());
  if (box.axes[0].lo > box.axes[0].hi) {
    throw GeometryError(ErrorCode::invalid_spec, "conformal factor domain misses the base chart");
  }
  MetricChart chart(ChartKind::conformal, {std::move(h)}, std::move(box), base.coordinates());
  chart.base_ = std::make_shared<const MetricChart>(base);
  chart.validate();
  return chart;
}

Box MetricChart::natural_box() const {
  switch (kind_) {
    case ChartKind::warped_product: {
      Box b{{Interval::real_line(), fns_[0].domain(), Interval::real_line()}};
      if (fiber_dim_ == 2) {
        if (fiber_ == FiberPreset::round_sphere) b.axes[2] = {0.0, M_PI};
        b.axes.push_back(Interval::real_line());
      }
      return b;
    }
    case ChartKind::theta3:
      return {{fns_[0].domain(), Interval::real_line(), Interval::real_line()}};
    case ChartKind::base2:
      return {{fns_[0].domain(), Interval::real_line()}};
    case ChartKind::diagonal_axis:
      return {{intersect(fns_[0].domain(), fns_[1].domain()), Interval::real_line(),
               Interval::real_line()}};
    case ChartKind::conformal: {
      Box b = base_->box();
      b.axes[0] = intersect(b.axes[0], fns_[0].domain());
      return b;
    }
  }
  return {};
}

MetricChart MetricChart::with_box(Box box) const {
  const Box natural = natural_box();
  if (box.dim() != natural.dim()) {
    throw GeometryError(ErrorCode::invalid_spec, "box dimension does not match chart");
  }
  for (int i = 0; i < box.dim(); ++i) {
    const auto& a = box.axes[static_cast<std::size_t>(i)];
    if (a.lo > a.hi || !inside(a, natural.axes[static_cast<std::size_t>(i)])) {
      throw GeometryError(ErrorCode::out_of_domain,
                          "box axis " + names_[static_cast<std::size_t>(i)] +
                              " leaves the chart's coordinate domain");
    }
  }
  MetricChart out = *this;
  out.box_ = std::move(box);
  out.validate();
  return out;
}

void MetricChart::validate() const {
  if (kind_ == ChartKind::theta3 || kind_ == ChartKind::base2) {
    for (double x : axis_samples(box_.axes[0], 257)) {
      const double t = fns_[0].eval_unchecked(x);
      if (!(t > 0.0 && t < M_PI / 2)) {
        std::ostringstream msg;
        msg << "theta(" << x << ") = " << t << " not in (0, pi/2)";
        throw GeometryError(ErrorCode::invalid_spec, msg.str(), x);
      }
    }
  }
  if (kind_ == ChartKind::warped_product) {
    for (double x : axis_samples(box_.axes[1], 257)) {
      if (!(fns_[0].eval_unchecked(x) > 0.0)) {
        std::ostringstream msg;
        msg << "warping f(" << x << ") must be positive";
        throw GeometryError(ErrorCode::invalid_spec, msg.str(), x);
      }
    }
  }

  // 5^d positive-definiteness spot check.
  const int d = dim();
  int total = 1;
  for (int i = 0; i < d; ++i) total *= 5;
  Vec p(d);
  for (int idx = 0; idx < total; ++idx) {
    int rest = idx;
    for (int i = 0; i < d; ++i) {
      const Interval a = box_.sampling_axis(i);
      p(i) = a.lo + (a.hi - a.lo) * (rest % 5) / 4.0;
      rest /= 5;
    }
    const Vec g = metric_diagonal(p);
    for (int i = 0; i < d; ++i) {
      if (!(g(i) > 0.0) || !std::isfinite(g(i))) {
        throw GeometryError(ErrorCode::invalid_spec,
                            "metric not positive definite at " + point_string(p));
      }
    }
  }
}

const FunctionSpec1D& MetricChart::theta() const {
  if (kind_ != ChartKind::theta3 && kind_ != ChartKind::base2) {
    throw GeometryError(ErrorCode::invalid_argument, "chart has no theta function");
  }
  return fns_[0];
}

const FunctionSpec1D& MetricChart::warping() const {
  if (kind_ != ChartKind::warped_product) {
    throw GeometryError(ErrorCode::invalid_argument, "chart is not a warped product");
  }
  return fns_[0];
}

const FunctionSpec1D& MetricChart::axis_a() const {
  if (kind_ != ChartKind::diagonal_axis) {
    throw GeometryError(ErrorCode::invalid_argument, "chart is not diagonal-axis");
  }
  return fns_[0];
}

const FunctionSpec1D& MetricChart::axis_b() const {
  if (kind_ != ChartKind::diagonal_axis) {
    throw GeometryError(ErrorCode::invalid_argument, "chart is not diagonal-axis");
  }
  return fns_[1];
}

const FunctionSpec1D& MetricChart::conformal_factor() const {
  if (kind_ != ChartKind::conformal) {
    throw GeometryError(ErrorCode::invalid_argument, "chart is not conformal");
  }
  return fns_[0];
}

const MetricChart& MetricChart::conformal_base() const {
  if (kind_ != ChartKind::conformal) {
    throw GeometryError(ErrorCode::invalid_argument, "chart is not conformal");
  }
  return *base_;
}

void MetricChart::require_inside(const Vec& p) const {
  if (p.size() != dim()) {
    throw GeometryError(ErrorCode::invalid_argument, "point has wrong dimension");
  }
  for (int i = 0; i < dim(); ++i) {
    if (!box_.axes[static_cast<std::size_t>(i)].contains(p(i))) {
      throw GeometryError(ErrorCode::out_of_domain,
                          "point " + point_string(p) + " outside chart box on axis " +
                              names_[static_cast<std::size_t>(i)],
                          p(i));
    }
  }
}

Vec MetricChart::metric_diagonal(const Vec& p) const {
  Vec g(dim());
  switch (kind_) {
    case ChartKind::warped_product: {
      const double f = fns_[0].eval_unchecked(p(1));
      g(0) = 1.0;
      g(1) = 1.0;
      g(2) = f * f;
      if (fiber_dim_ == 2) {
        const double s = fiber_ == FiberPreset::round_sphere ? std::sin(p(2)) : 1.0;
        g(3) = f * f * s * s;
      }
      return g;
    }
    case ChartKind::theta3: {
      const double t = fns_[0].eval_unchecked(p(0));
      g << 1.0, std::sin(t) * std::sin(t), std::cos(t) * std::cos(t);
      return g;
    }
    case ChartKind::base2: {
      const double s = 0.5 * std::sin(2.0 * fns_[0].eval_unchecked(p(0)));
      g << 1.0, s * s;
      return g;
    }
    case ChartKind::diagonal_axis: {
      const double a = fns_[0].eval_unchecked(p(0));
      const double b = fns_[1].eval_unchecked(p(0));
      g << 1.0, a * a, b * b;
      return g;
    }
    case ChartKind::conformal: {
      const double h = fns_[0].eval_unchecked(p(0));
      return h * h * base_->metric_diagonal(p);
    }
  }
  return g;
}

Mat MetricChart::metric_diagonal_partials(const Vec& p) const {
  const int d = dim();
  Mat D = Mat::Zero(d, d);
  switch (kind_) {
    case ChartKind::warped_product: {
      const double f = fns_[0].eval_unchecked(p(1));
      const double df = fns_[0].eval_unchecked(p(1), 1);
      D(2, 1) = 2.0 * f * df;
      if (fiber_dim_ == 2) {
        if (fiber_ == FiberPreset::round_sphere) {
          const double s = std::sin(p(2));
          D(3, 1) = 2.0 * f * df * s * s;
          D(3, 2) = f * f * std::sin(2.0 * p(2));
        } else {
          D(3, 1) = 2.0 * f * df;
        }
      }
      return D;
    }
    case ChartKind::theta3: {
      const double t = fns_[0].eval_unchecked(p(0));
      const double dt = fns_[0].eval_unchecked(p(0), 1);
      D(1, 0) = std::sin(2.0 * t) * dt;
      D(2, 0) = -std::sin(2.0 * t) * dt;
      return D;
    }
    case ChartKind::base2: {
      const double t = fns_[0].eval_unchecked(p(0));
      const double dt = fns_[0].eval_unchecked(p(0), 1);
      D(1, 0) = std::sin(2.0 * t) * std::cos(2.0 * t) * dt;
      return D;
    }
    case ChartKind::diagonal_axis: {
      D(1, 0) = 2.0 * fns_[0].eval_unchecked(p(0)) * fns_[0].eval_unchecked(p(0), 1);
      D(2, 0) = 2.0 * fns_[1].eval_unchecked(p(0)) * fns_[1].eval_unchecked(p(0), 1);
      return D;
    }
    case ChartKind::conformal: {
      const double h = fns_[0].eval_unchecked(p(0));
      const double dh = fns_[0].eval_unchecked(p(0), 1);
      D = h * h * base_->metric_diagonal_partials(p);
      D.col(0) += 2.0 * h * dh * base_->metric_diagonal(p);
      return D;
    }
  }
  return D;
}

Mat MetricChart::metric_unchecked(const Vec& p) const {
  return metric_diagonal(p).asDiagonal();
}

Mat metric_at(const MetricChart& chart, const Vec& p) {
  chart.require_inside(p);
  return chart.metric_unchecked(p);
}

std::array<Mat, kMaxDim> metric_partials_at(const MetricChart& chart, const Vec& p) {
  chart.require_inside(p);
  const int d = chart.dim();
  const Mat D = chart.metric_diagonal_partials(p);
  std::array<Mat, kMaxDim> out;
  for (int l = 0; l < d; ++l) {
    out[static_cast<std::size_t>(l)] = D.col(l).asDiagonal();
  }
  return out;
}

}  // namespace umbilic
