#pragma once

// Trace decompositions of a curvature-like tensor, written once for any
// component type (plain values or jets).

#include "curvcompat/tensor.hpp"

namespace curvcompat {

/// K_jl = K_jml^m = g^{mp} K_jmlp
template <typename T, typename U>
Tensor<T, 2> ricci_contraction(const Tensor<T, 4>& k, const Tensor<U, 2>& g_inv) {
  const int n = k.dim();
  Tensor<T, 2> r(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      T acc{};
      for (int m = 0; m < n; ++m)
        for (int p = 0; p < n; ++p) acc += g_inv(m, p) * k(j, m, l, p);
      r(j, l) = acc;
    }
  return r;
}

template <typename T, typename U>
T trace(const Tensor<T, 2>& s, const Tensor<U, 2>& g_inv) {
  T acc{};
  const int n = s.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += g_inv(i, j) * s(i, j);
  return acc;
}

/// S_ij = (R_ij - R g_ij / (2(n-1))) / (n-2), n >= 3.
template <typename T, typename U>
Tensor<T, 2> schouten_tensor(const Tensor<T, 2>& ricci, const T& scalar,
                             const Tensor<U, 2>& g) {
  const int n = ricci.dim();
  if (n < 3) throw DimensionError("Schouten tensor needs n >= 3");
  Tensor<T, 2> s(n);
  const double c = 1.0 / (2.0 * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = (ricci(i, j) - c * (scalar * g(i, j))) * (1.0 / (n - 2));
  return s;
}

/// C = K - S wedge g
template <typename T, typename U>
Tensor<T, 4> weyl_tensor(const Tensor<T, 4>& k, const Tensor<T, 2>& schouten,
                         const Tensor<U, 2>& g) {
  const int n = k.dim();
  Tensor<T, 4> c = k;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          c(i, j, l, m) -= schouten(i, l) * g(j, m) + schouten(j, m) * g(i, l) -
                           schouten(i, m) * g(j, l) - schouten(j, l) * g(i, m);
  return c;
}

}  // namespace curvcompat
