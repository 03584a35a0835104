#include "curvcompat/electric_weyl.hpp"

#include <algorithm>
#include <cmath>

#include "curvcompat/compat.hpp"

namespace curvcompat {
namespace {

void require_four(int n) {
  if (n != 4) throw DimensionError("electric Weyl decomposition needs n = 4");
}

Vector lowered(std::span<const double> u_up, const MetricValue& g) {
  return matvec(g.covariant().matrix(), u_up);
}

}  // namespace

Sym2 electric_weyl(const GCT& c, std::span<const double> u_up, const MetricValue& g) {
  const int n = c.dim();
  require_four(n);
  if (static_cast<int>(u_up.size()) != n || g.dim() != n)
    throw DimensionError("electric_weyl: dimension mismatch");
  Matrix e(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) acc += c(j, k, l, m) * u_up[j] * u_up[m];
      e(k, l) = acc;
    }
  return Sym2(e, 1e-9);
}

GCT weyl_from_electric(const Sym2& e, std::span<const double> u_up, const MetricValue& g) {
  const int n = e.dim();
  require_four(n);
  if (static_cast<int>(u_up.size()) != n || g.dim() != n)
    throw DimensionError("weyl_from_electric: dimension mismatch");
  const Vector u = lowered(u_up, g);
  double uu = 0.0;
  for (int i = 0; i < n; ++i) uu += u[i] * u_up[i];
  if (std::abs(uu + 1.0) > 1e-10)
    throw PreconditionError("weyl_from_electric: u must be a unit time-like vector");
  Sym2 h = g.covariant();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h.set(i, j, h(i, j) + 2.0 * u[i] * u[j]);
  return -1.0 * kulkarni_nomizu(h, e);
}

ElectricReconstruction electric_reconstruction_check(const GCT& c, std::span<const double> u_up,
                                                     const MetricValue& g, const Tolerance& tol) {
  const Sym2 e = electric_weyl(c, u_up, g);
  const Vector u = lowered(u_up, g);
  const CompatDefect pre = compat_defect(Sym2::outer(u), c, g, tol);
  GCT rec = weyl_from_electric(e, u_up, g);
  const double cn = norm(c.components());
  const double en = norm(e.matrix());
  double tr = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) tr += g.inverse()(i, j) * e(i, j);
  const Vector eu = matvec(e.matrix(), u_up);
  const double err = norm(rec.components() - c.components()) / std::max(cn, tol.floor);
  return {e,
          std::move(rec),
          pre.residual,
          pre.residual <= kElectricPreconditionTol,
          err,
          std::abs(tr) / std::max(norm(g.inverse()) * en, tol.floor),
          norm(eu) / std::max(en * norm(u_up), tol.floor)};
}

}  // namespace curvcompat
