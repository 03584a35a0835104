#pragma once

#include <Eigen/Dense>

#include "curvcompat/tensor.hpp"

namespace curvcompat::detail {

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
  const int n = m.dim();
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
  const int n = static_cast<int>(e.rows());
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = e(i, j);
  return m;
}

}  // namespace curvcompat::detail
