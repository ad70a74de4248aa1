#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "umbilic/function.hpp"
#include "umbilic/linalg.hpp"

namespace umbilic {

enum class ChartKind {
  warped_product,  // dx0^2 + dx1^2 + f(x1)^2 g_fiber
  theta3,          // dx^2 + sin^2 theta(x) dy^2 + cos^2 theta(x) dz^2
  base2,           // du^2 + 1/4 sin^2(2 theta(u)) dv^2
  diagonal_axis,   // dx^2 + a(x)^2 dy^2 + b(x)^2 dz^2
  conformal,       // h(x0)^2 * (base chart metric)
};

enum class FiberPreset { flat, round_sphere };

std::string_view to_string(ChartKind kind);
std::string_view to_string(FiberPreset fiber);

struct Box {
  std::vector<Interval> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  bool contains(const Vec& p) const;
  // Axis clipped to something samplable: infinite ends become +-1 around 0.
  Interval sampling_axis(int i) const;
};

// Coordinate description of a Riemannian metric. Every supported kind is
// diagonal in its coordinates, with entries depending on at most two
// coordinates; the interface still hands out full matrices.
//
// Construction spot-checks positive definiteness on a 5^d grid of the box and
// throws InvalidSpec naming the failing point.
class MetricChart {
 public:
  static MetricChart warped_product(FunctionSpec1D f, int fiber_dim, FiberPreset fiber);
  static MetricChart theta3(FunctionSpec1D theta);
  static MetricChart base2(FunctionSpec1D theta);
  static MetricChart diagonal_axis(FunctionSpec1D a, FunctionSpec1D b);
  static MetricChart conformal(FunctionSpec1D h, const MetricChart& base);

  // Same metric on a smaller box. Throws OutOfDomain if `box` leaves the
  // natural coordinate domain.
  MetricChart with_box(Box box) const;

  ChartKind kind() const { return kind_; }
  int dim() const { return box_.dim(); }
  const Box& box() const { return box_; }
  const std::vector<std::string>& coordinates() const { return names_; }

  const FunctionSpec1D& theta() const;       // theta3, base2
  const FunctionSpec1D& warping() const;     // warped_product
  const FunctionSpec1D& axis_a() const;      // diagonal_axis
  const FunctionSpec1D& axis_b() const;      // diagonal_axis
  const FunctionSpec1D& conformal_factor() const;
  const MetricChart& conformal_base() const;
  int fiber_dim() const { return fiber_dim_; }
  FiberPreset fiber() const { return fiber_; }

  bool contains(const Vec& p) const { return box_.contains(p); }
  void require_inside(const Vec& p) const;

  // Unchecked evaluations used by stencils; callers validate p first.
  Vec metric_diagonal(const Vec& p) const;
  // D(i, l) = d g_ii / d x^l.
  Mat metric_diagonal_partials(const Vec& p) const;
  Mat metric_unchecked(const Vec& p) const;

 private:
  MetricChart(ChartKind kind, std::vector<FunctionSpec1D> fns, Box box,
              std::vector<std::string> names);
  void validate() const;
  Box natural_box() const;

  ChartKind kind_;
  std::vector<FunctionSpec1D> fns_;
  Box box_;
  std::vector<std::string> names_;
  int fiber_dim_ = 0;
  FiberPreset fiber_ = FiberPreset::flat;
  std::shared_ptr<const MetricChart> base_;
};

// Checked metric matrix g_ij(p).
Mat metric_at(const MetricChart& chart, const Vec& p);

// Exact first partials: result[l](i, j) = d g_ij / d x^l.
std::array<Mat, kMaxDim> metric_partials_at(const MetricChart& chart, const Vec& p);

}  // namespace umbilic
