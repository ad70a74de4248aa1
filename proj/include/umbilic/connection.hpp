#pragma once

#include <array>

#include "umbilic/chart.hpp"

namespace umbilic {

enum class ChristoffelMethod {
  closed_form,         // explicit formulas; theta3 and diagonal-axis only
  finite_difference,   // Koszul formula on centered differences of g
  metric_derivatives,  // Koszul formula on exact partials of g; every chart
};

std::string_view to_string(ChristoffelMethod method);

// Gamma^k_ij, symmetric in (i, j).
class Christoffel {
 public:
  explicit Christoffel(int dim = 0) : dim_(dim) { values_.fill(0.0); }

  int dim() const { return dim_; }
  double operator()(int k, int i, int j) const { return values_[index(k, i, j)]; }
  double& operator()(int k, int i, int j) { return values_[index(k, i, j)]; }

  // Gamma^k_ij a^i b^j.
  Vec contract(const Vec& a, const Vec& b) const;
  double max_abs_difference(const Christoffel& other) const;

 private:
  static std::size_t index(int k, int i, int j) {
    return static_cast<std::size_t>((k * kMaxDim + i) * kMaxDim + j);
  }

  int dim_;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> values_{};
};

Christoffel christoffel_at(const MetricChart& chart, const Vec& p, ChristoffelMethod method);

// Closed form where the chart has one, exact-derivative Koszul otherwise.
// Unchecked: stencils call this just outside the box.
Christoffel connection_unchecked(const MetricChart& chart, const Vec& p);
bool has_closed_form(const MetricChart& chart);

}  // namespace umbilic
