#pragma once

#include <vector>

namespace umbilic {

// Not-a-knot cubic interpolant. Reproduces cubic polynomials exactly.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);

  // order 0..2 from the piecewise cubic; outside the knot range the end
  // cubic is extended.
  double eval(double t, int order) const;

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }

 private:
  std::size_t segment(double t) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace umbilic
