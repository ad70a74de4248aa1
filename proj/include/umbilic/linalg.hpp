#pragma once

#include <Eigen/Dense>

namespace umbilic {

// Every chart in the library has dimension <= 4, so vectors and matrices use
// fixed-capacity storage and never allocate.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

inline constexpr int kMaxDim = 4;

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Vec unit_vec(int dim, int index) {
  Vec v = Vec::Zero(dim);
  v(index) = 1.0;
  return v;
}

inline double inner(const Mat& g, const Vec& a, const Vec& b) { return a.dot(g * b); }

}  // namespace umbilic
