#include "curvcompat/maps.hpp"

#include <algorithm>

namespace curvcompat {

Rank4 contract_first(const Matrix& b, const Rank4& rm) {
  const int n = rm.dim();
  if (b.dim() != n) throw DimensionError("contract_first: dimension mismatch");
  Rank4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) acc += b(i, m) * rm(j, k, l, m);
          out(i, j, k, l) = acc;
        }
  return out;
}

Rank4 compat_sum_mixed(const Sym2& b, const Rank4& rm) {
  return cyclic3(contract_first(b.matrix(), rm));
}

GeodesicTransform geodesic_transform(const Rank4& rm, std::span<const double> x, const Matrix& dx,
                                     const Tolerance& tol) {
  const int n = rm.dim();
  if (static_cast<int>(x.size()) != n || dx.dim() != n)
    throw DimensionError("geodesic_transform: dimension mismatch");
  Matrix p(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) p(k, l) = dx(k, l) - x[k] * x[l];
  GeodesicTransform t{rm, p, norm(p - transpose(p)) / std::max(norm(p), tol.floor)};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        t.riemann_mixed(j, k, l, k) -= p(j, l);
        t.riemann_mixed(j, k, l, j) += p(k, l);
      }
  return t;
}

GeodesicTransform geodesic_transform(const CurvaturePack& pack, std::span<const double> x,
                                     const Matrix& dx, const Tolerance& tol) {
  return geodesic_transform(pack.riemann_mixed, x, dx, tol);
}

GeodesicMapCheck geodesic_map_check(const Rank4& rm, const GeodesicTransform& t, const Sym2& b,
                                    const Tolerance& tol) {
  const double scale = std::max(norm(rm), norm(t.riemann_mixed));
  const Rank4 d = compat_sum_mixed(b, t.riemann_mixed) - compat_sum_mixed(b, rm);
  const Rank4 dp = projective_tensor(t.riemann_mixed) - projective_tensor(rm);
  return {norm(d) / std::max(norm(b.matrix()) * scale, tol.floor),
          norm(dp) / std::max(scale, tol.floor)};
}

}  // namespace curvcompat
