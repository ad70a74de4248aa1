#include "umbilic/kernels.hpp"

#include "umbilic/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace umbilic {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw GeometryError(ErrorCode::invalid_argument, "grid count must be >= 1");
  std::vector<double> xs(static_cast<std::size_t>(n));
  if (n == 1) {
    xs[0] = 0.5 * (lo + hi);
    return xs;
  }
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  }
  return xs;
}

Grid tensor_grid(const std::vector<double>& lo, const std::vector<double>& hi,
                 const std::vector<int>& counts) {
  const std::size_t d = counts.size();
  if (lo.size() != d || hi.size() != d || d == 0 || d > kMaxDim) {
    throw GeometryError(ErrorCode::invalid_argument, "grid bounds and counts disagree");
  }
  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    axes.push_back(linspace(lo[i], hi[i], counts[i]));
    total *= static_cast<std::size_t>(counts[i]);
  }
  Grid grid;
  grid.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vec p(static_cast<Eigen::Index>(d));
    std::size_t rest = idx;
    for (std::size_t i = d; i-- > 0;) {
      const auto n = static_cast<std::size_t>(counts[i]);
      p(static_cast<Eigen::Index>(i)) = axes[i][rest % n];
      rest /= n;
    }
    grid.push_back(p);
  }
  return grid;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace umbilic
