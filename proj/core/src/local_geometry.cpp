#include "curvcompat/local_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "curvcompat/curvature_algebra.hpp"

namespace curvcompat {

Tensor<Jet, 2> jet_inverse(const Tensor<Jet, 2>& m) {
  const int n = m.dim();
  Tensor<Jet, 2> a = m;
  Tensor<Jet, 2> inv(n);
  for (int i = 0; i < n; ++i) inv(i, i) = Jet(1.0);
  double scale = 0.0;
  for (const auto& v : m.values()) scale = std::max(scale, std::abs(v.value()));
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col).value()) > std::abs(a(piv, col).value())) piv = r;
    if (std::abs(a(piv, col).value()) <= 1e-13 * scale)
      throw SingularMatrixError("metric is singular at the probe point");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    const Jet r = reciprocal(a(col, col));
    for (int c = 0; c < n; ++c) {
      a(col, c) = a(col, c) * r;
      inv(col, c) = inv(col, c) * r;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const Jet f = a(row, col);
      if (f.is_constant() && f.value() == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a(row, c) -= f * a(col, c);
        inv(row, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

LocalGeometry::LocalGeometry(const MetricChart& chart, std::span<const double> point, int order)
    : n_(chart.dim()), order_(order), point_(point.begin(), point.end()) {
  if (static_cast<int>(point.size()) != n_)
    throw DimensionError("LocalGeometry: point has wrong number of coordinates");
  if (order < 2) throw InsufficientJetOrder("LocalGeometry: curvature needs metric jets of order >= 2");
  chart.value_at(point);  // singularity and signature check

  x_ = coordinate_jets(point, order);
  g_ = chart.evaluate(x_);
  g_inv_ = symmetrized_upper(jet_inverse(g_));

  Tensor<Jet, 3> dg(n_);  // d_p g_kl
  for (int p = 0; p < n_; ++p)
    for (int k = 0; k < n_; ++k)
      for (int l = 0; l < n_; ++l) dg(p, k, l) = g_(k, l).derivative(p);

  gamma_ = Tensor<Jet, 3>(n_);
  for (int k = 0; k < n_; ++k)
    for (int l = k; l < n_; ++l) {
      std::vector<Jet> first(static_cast<std::size_t>(n_));  // Gamma_{p,kl}
      for (int p = 0; p < n_; ++p) first[p] = 0.5 * (dg(k, p, l) + dg(l, p, k) - dg(p, k, l));
      for (int m = 0; m < n_; ++m) {
        Jet acc;
        for (int p = 0; p < n_; ++p) acc += g_inv_(m, p) * first[p];
        gamma_(m, k, l) = acc;
        gamma_(m, l, k) = acc;
      }
    }

  riemann_mixed_ = Tensor<Jet, 4>(n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k)
      for (int l = 0; l < n_; ++l)
        for (int m = 0; m < n_; ++m) {
          if (j == k) {
            riemann_mixed_(j, k, l, m) = Jet(0.0);
            continue;
          }
          if (k < j) {
            riemann_mixed_(j, k, l, m) = -riemann_mixed_(k, j, l, m);
            continue;
          }
          Jet acc = gamma_(m, j, l).derivative(k) - gamma_(m, k, l).derivative(j);
          for (int d = 0; d < n_; ++d)
            acc += gamma_(m, k, d) * gamma_(d, j, l) - gamma_(m, j, d) * gamma_(d, k, l);
          riemann_mixed_(j, k, l, m) = acc;
        }

  riemann_ = contract_slot(riemann_mixed_, 3, g_);
  ricci_ = symmetrized_upper(ricci_contraction(riemann_, g_inv_));
  scalar_ = trace(ricci_, g_inv_);

  if (n_ >= 3) {
    schouten_ = schouten_tensor(ricci_, scalar_, g_);
    if (n_ == 3) {
      weyl_ = Tensor<Jet, 4>(n_, Jet(0.0));
    } else {
      weyl_ = weyl_tensor(riemann_, *schouten_, g_);
    }
  }
}

const Tensor<Jet, 2>& LocalGeometry::schouten() const {
  if (!schouten_) throw DimensionError("Schouten tensor needs n >= 3");
  return *schouten_;
}

const Tensor<Jet, 4>& LocalGeometry::weyl() const {
  if (!weyl_) throw DimensionError("Weyl tensor needs n >= 3");
  return *weyl_;
}

MetricValue LocalGeometry::metric_value() const {
  Sym2 v(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) v.set(i, j, g_(i, j).value());
  return MetricValue(v);
}

namespace {

Sym2 sym_values(const Tensor<Jet, 2>& t) {
  return Sym2(values_of(t), 1e-9);
}

/// Weyl symmetries are judged against the Riemann scale: on conformally flat
/// charts the Weyl values are pure rounding noise.
GCT weyl_gct(const Tensor<Jet, 4>& weyl, const Rank4& riemann) {
  const Rank4 w = values_of(weyl);
  const double r = gct_residuals(w, std::max(norm(riemann), 1e-14)).max();
  if (!(r <= 1e-8))
    throw GctViolation("Weyl tensor violates curvature symmetries (residual " + std::to_string(r) + ")");
  return gct_project(w);
}

}  // namespace

CurvaturePack LocalGeometry::pack() const {
  const Rank4 rm = values_of(riemann_mixed_);
  CurvaturePack p{metric_value(), values_of(gamma_), rm,
                  GCT::checked(values_of(riemann_), 1e-8), sym_values(ricci_), scalar_.value(),
                  std::nullopt, std::nullopt, projective_tensor(rm)};
  if (n_ >= 3) {
    p.schouten = sym_values(*schouten_);
    p.weyl = weyl_gct(*weyl_, p.riemann.components());
  }
  return p;
}

Jet LocalGeometry::evaluate(const ScalarField& f) const { return f(x_); }

std::vector<Jet> LocalGeometry::evaluate(const VectorField& f) const {
  auto v = f(x_);
  if (static_cast<int>(v.size()) != n_) throw DimensionError("vector field has wrong length");
  return v;
}

Tensor<Jet, 2> LocalGeometry::evaluate(const Sym2Field& f) const {
  auto b = f(x_);
  if (b.dim() != n_) throw DimensionError("symmetric field has wrong dimension");
  return symmetrized_upper(b);
}

Rank4 projective_tensor(const Rank4& rm) {
  const int n = rm.dim();
  Matrix ric(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double acc = 0.0;
      for (int m = 0; m < n; ++m) acc += rm(k, m, l, m);
      ric(k, l) = acc;
    }
  Rank4 p = rm;
  const double c = 1.0 / (n - 1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        p(j, k, l, j) += c * ric(k, l);
        p(j, k, l, k) -= c * ric(j, l);
      }
  return p;
}

Rank3 christoffel(const MetricChart& chart, std::span<const double> point) {
  return values_of(LocalGeometry(chart, point, 2).christoffel());
}

CurvaturePack riemann(const MetricChart& chart, std::span<const double> point) {
  return LocalGeometry(chart, point, 2).pack();
}

std::pair<Sym2, double> ricci_scalar(const MetricChart& chart, std::span<const double> point) {
  const LocalGeometry geom(chart, point, 2);
  return {sym_values(geom.ricci()), geom.scalar().value()};
}

GCT weyl(const MetricChart& chart, std::span<const double> point) {
  if (chart.dim() < 3) throw DimensionError("Weyl tensor needs n >= 3");
  const LocalGeometry geom(chart, point, 2);
  return weyl_gct(geom.weyl(), values_of(geom.riemann()));
}

Sym2 schouten(const MetricChart& chart, std::span<const double> point) {
  if (chart.dim() < 3) throw DimensionError("Schouten tensor needs n >= 3");
  return sym_values(LocalGeometry(chart, point, 2).schouten());
}

Rank4 projective(const MetricChart& chart, std::span<const double> point) {
  return projective_tensor(values_of(LocalGeometry(chart, point, 2).riemann_mixed()));
}

Tensor<Jet, 3> codazzi_deviation(const LocalGeometry& geom, const Tensor<Jet, 2>& b) {
  const auto db = geom.covariant_derivative(b);
  const int n = geom.dim();
  Tensor<Jet, 3> c(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) c(j, k, l) = db(j, k, l) - db(k, j, l);
  return c;
}

Rank3 cov_deriv_sym2(const MetricChart& chart, const Sym2Field& field,
                     std::span<const double> point) {
  const LocalGeometry geom(chart, point, 2);
  return values_of(geom.covariant_derivative(geom.evaluate(field)));
}

Rank3 codazzi_deviation(const MetricChart& chart, const Sym2Field& field,
                        std::span<const double> point) {
  const LocalGeometry geom(chart, point, 2);
  return values_of(codazzi_deviation(geom, geom.evaluate(field)));
}

}  // namespace curvcompat
