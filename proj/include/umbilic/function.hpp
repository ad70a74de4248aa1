#pragma once

#include <limits>
#include <memory>
#include <string_view>
#include <vector>

namespace umbilic {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval real_line() { return {}; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool bounded() const;
  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool operator==(const Interval&) const = default;
};

enum class FunctionKind {
  constant,          // a
  affine,            // a + b x
  sine_affine,       // a + b sin(omega x + phase)
  polynomial,        // sum c_k x^k
  tanh_bump,         // a + b tanh(c x)
  exponential,       // a + b exp(c x)
  tabulated_spline,  // not-a-knot cubic through (knot, value) pairs
};

std::string_view to_string(FunctionKind kind);

class CubicSpline;

// A scalar function of one variable with derivatives up to order 4.
//
// Analytic kinds differentiate in closed form. The tabulated spline is exact
// up to order 2; orders 3 and 4 are centered differences of the spline's
// second derivative and `exact(order)` reports the downgrade.
class FunctionSpec1D {
 public:
  static constexpr int kMaxOrder = 4;

  static FunctionSpec1D constant(double a, Interval domain = {});
  static FunctionSpec1D affine(double a, double b, Interval domain = {});
  static FunctionSpec1D sine_affine(double a, double b, double omega, double phase,
                                    Interval domain = {});
  static FunctionSpec1D polynomial(std::vector<double> coefficients, Interval domain = {});
  static FunctionSpec1D tanh_bump(double a, double b, double c, Interval domain = {});
  static FunctionSpec1D exponential(double a, double b, double c, Interval domain = {});
  // Knots strictly increasing, at least 4 of them. Domain is [front, back].
  static FunctionSpec1D tabulated(std::vector<double> knots, std::vector<double> values);

  // Throws OutOfDomain / UnsupportedOrder.
  double eval(double x, int order = 0) const;
  double operator()(double x) const { return eval(x, 0); }

  // No domain check: analytic kinds extend naturally, splines extrapolate the
  // end cubic. Used by stencils that step slightly past a box edge.
  double eval_unchecked(double x, int order = 0) const;

  bool exact(int order) const;

  FunctionKind kind() const { return kind_; }
  const Interval& domain() const { return domain_; }
  const std::vector<double>& parameters() const { return params_; }
  const std::vector<double>& knots() const;
  const std::vector<double>& values() const;

  FunctionSpec1D restricted(Interval sub) const;

  bool operator==(const FunctionSpec1D& other) const;

 private:
  FunctionSpec1D(FunctionKind kind, std::vector<double> params, Interval domain);

  FunctionKind kind_;
  std::vector<double> params_;
  Interval domain_;
  std::shared_ptr<const CubicSpline> spline_;
};

// Centered finite-difference step used across the library: 1e-4 * max(1, |x|).
double fd_step(double x, double scale = 1e-4);

}  // namespace umbilic
