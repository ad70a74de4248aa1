#include "umbilic/function.hpp"

#include <cmath>
#include <sstream>

#include "umbilic/errors.hpp"
#include "umbilic/spline.hpp"

namespace umbilic {

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::constant: return "constant";
    case FunctionKind::affine: return "affine";
    case FunctionKind::sine_affine: return "sine-affine";
    case FunctionKind::polynomial: return "polynomial";
    case FunctionKind::tanh_bump: return "tanh-bump";
    case FunctionKind::exponential: return "exponential";
    case FunctionKind::tabulated_spline: return "tabulated-spline";
  }
  return "unknown";
}

double fd_step(double x, double scale) { return scale * std::max(1.0, std::abs(x)); }

namespace {

void require_domain(const Interval& d) {
  if (!(d.lo <= d.hi) || std::isnan(d.lo) || std::isnan(d.hi)) {
    throw GeometryError(ErrorCode::invalid_spec, "function domain must satisfy lo <= hi");
  }
}

void require_finite(const std::vector<double>& xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw GeometryError(ErrorCode::invalid_spec, "non-finite parameter");
  }
}

double poly_derivative(const std::vector<double>& c, double x, int order) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(order);) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= static_cast<double>(k - static_cast<std::size_t>(j));
    acc = acc * x + c[k] * falling;
  }
  return acc;
}

// d^n/dx^n tanh(c x), n <= 4, written in u = tanh(c x).
double tanh_derivative(double c, double x, int order) {
  const double u = std::tanh(c * x);
  const double s = 1.0 - u * u;
  switch (order) {
    case 0: return u;
    case 1: return c * s;
    case 2: return -2.0 * c * c * u * s;
    case 3: return -2.0 * c * c * c * s * (1.0 - 3.0 * u * u);
    default: return 8.0 * c * c * c * c * u * s * (2.0 - 3.0 * u * u);
  }
}

}  // namespace

FunctionSpec1D::FunctionSpec1D(FunctionKind kind, std::vector<double> params, Interval domain)
    : kind_(kind), params_(std::move(params)), domain_(domain) {
  require_domain(domain_);
  require_finite(params_);
}

FunctionSpec1D FunctionSpec1D::constant(double a, Interval domain) {
  return FunctionSpec1D(FunctionKind::constant, {a}, domain);
}

FunctionSpec1D FunctionSpec1D::affine(double a, double b, Interval domain) {
  return FunctionSpec1D(FunctionKind::affine, {a, b}, domain);
}

FunctionSpec1D FunctionSpec1D::sine_affine(double a, double b, double omega, double phase,
                                           Interval domain) {
  return FunctionSpec1D(FunctionKind::sine_affine, {a, b, omega, phase}, domain);
}

FunctionSpec1D FunctionSpec1D::polynomial(std::vector<double> coefficients, Interval domain) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  return FunctionSpec1D(FunctionKind::polynomial, std::move(coefficients), domain);
}

FunctionSpec1D FunctionSpec1D::tanh_bump(double a, double b, double c, Interval domain) {
  return FunctionSpec1D(FunctionKind::tanh_bump, {a, b, c}, domain);
}

FunctionSpec1D FunctionSpec1D::exponential(double a, double b, double c, Interval domain) {
  return FunctionSpec1D(FunctionKind::exponential, {a, b, c}, domain);
}

FunctionSpec1D FunctionSpec1D::tabulated(std::vector<double> knots, std::vector<double> values) {
  require_finite(knots);
  require_finite(values);
  auto spline = std::make_shared<const CubicSpline>(std::move(knots), std::move(values));
  FunctionSpec1D out(FunctionKind::tabulated_spline, {},
                     Interval{spline->x().front(), spline->x().back()});
  out.spline_ = std::move(spline);
  return out;
}

const std::vector<double>& FunctionSpec1D::knots() const {
  static const std::vector<double> empty;
  return spline_ ? spline_->x() : empty;
}

const std::vector<double>& FunctionSpec1D::values() const {
  static const std::vector<double> empty;
  return spline_ ? spline_->y() : empty;
}

bool FunctionSpec1D::exact(int order) const {
  return kind_ != FunctionKind::tabulated_spline || order <= 2;
}

double FunctionSpec1D::eval(double x, int order) const {
  if (order < 0 || order > kMaxOrder) {
    std::ostringstream msg;
    msg << "derivative order " << order << " (max " << kMaxOrder << ")";
    throw GeometryError(ErrorCode::unsupported_order, msg.str());
  }
  if (!domain_.contains(x)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside [" << domain_.lo << ", " << domain_.hi << "]";
    throw GeometryError(ErrorCode::out_of_domain, msg.str(), x);
  }
  return eval_unchecked(x, order);
}

double FunctionSpec1D::eval_unchecked(double x, int order) const {
  const auto& p = params_;
  switch (kind_) {
    case FunctionKind::constant:
      return order == 0 ? p[0] : 0.0;
    case FunctionKind::affine:
      return order == 0 ? p[0] + p[1] * x : (order == 1 ? p[1] : 0.0);
    case FunctionKind::sine_affine: {
      const double w = p[2];
      const double base = p[1] * std::pow(w, order) *
                          std::sin(w * x + p[3] + 0.5 * M_PI * static_cast<double>(order));
      return order == 0 ? p[0] + base : base;
    }
    case FunctionKind::polynomial:
      return poly_derivative(p, x, order);
    case FunctionKind::tanh_bump: {
      const double base = p[1] * tanh_derivative(p[2], x, order);
      return order == 0 ? p[0] + base : base;
    }
    case FunctionKind::exponential: {
      const double base = p[1] * std::pow(p[2], order) * std::exp(p[2] * x);
      return order == 0 ? p[0] + base : base;
    }
    case FunctionKind::tabulated_spline: {
      if (order <= 2) return spline_->eval(x, order);
      const double h = fd_step(x);
      if (order == 3) return (spline_->eval(x + h, 2) - spline_->eval(x - h, 2)) / (2.0 * h);
      return (spline_->eval(x + h, 2) - 2.0 * spline_->eval(x, 2) + spline_->eval(x - h, 2)) /
             (h * h);
    }
  }
  return 0.0;
}

FunctionSpec1D FunctionSpec1D::restricted(Interval sub) const {
  if (!(domain_.contains(sub.lo) && domain_.contains(sub.hi)) || sub.lo > sub.hi) {
    throw GeometryError(ErrorCode::out_of_domain, "restriction interval not inside domain");
  }
  FunctionSpec1D out = *this;
  out.domain_ = sub;
  return out;
}

bool FunctionSpec1D::operator==(const FunctionSpec1D& other) const {
  if (kind_ != other.kind_ || params_ != other.params_ || !(domain_ == other.domain_)) {
    return false;
  }
  if (kind_ == FunctionKind::tabulated_spline) {
    return knots() == other.knots() && values() == other.values();
  }
  return true;
}

}  // namespace umbilic
