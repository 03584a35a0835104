#pragma once

// Curvature of a chart at a point, computed on truncated Taylor jets.
//
// Sign conventions (textbooks differ):
//   Gamma^m_kl          stored as christoffel(m, k, l)
//   R_jkl^m = d_k Gamma^m_jl - d_j Gamma^m_kl + Gamma^m_kd Gamma^d_jl - Gamma^m_jd Gamma^d_kl
//                       stored as riemann_mixed(j, k, l, m)
//   R_jklm = R_jkl^p g_pm  (for a round sphere R_{theta phi theta phi} > 0)
//   R_jl = R_jml^m,  R = g^jl R_jl  (positive on spheres)
// With this choice a geodesic map with one-form X transforms the curvature as
// R_jkl^m - delta_k^m P_jl + delta_j^m P_kl, P = nabla X - X (x) X, and
// [nabla_i, nabla_j] w_k = R_ijk^m w_m.

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "curvcompat/chart.hpp"
#include "curvcompat/jet.hpp"
#include "curvcompat/tensor.hpp"

namespace curvcompat {

enum class Slot { lower, upper };

template <std::size_t R>
using Variance = std::array<Slot, R>;

template <std::size_t R>
Tensor<double, R> values_of(const Tensor<Jet, R>& t) {
  Tensor<double, R> v(t.dim());
  for (std::size_t f = 0; f < t.size(); ++f) v[f] = t[f].value();
  return v;
}

template <std::size_t R>
Tensor<Jet, R> truncated(const Tensor<Jet, R>& t, int order) {
  Tensor<Jet, R> out = t;
  for (auto& c : out.values()) c = c.truncated(order);
  return out;
}

struct CurvaturePack {
  MetricValue metric;
  Rank3 christoffel;     // Gamma^m_kl as (m, k, l)
  Rank4 riemann_mixed;   // R_jkl^m as (j, k, l, m)
  GCT riemann;           // R_jklm
  Sym2 ricci;
  double scalar = 0.0;
  std::optional<GCT> weyl;       // n >= 3
  std::optional<Sym2> schouten;  // n >= 3
  Rank4 projective;      // P_jkl^m as (j, k, l, m)
};

class LocalGeometry {
 public:
  /// Jets of the metric to `order`; curvature is then known to order - 2.
  /// Throws SingularMatrixError if the metric is singular at `point`.
  LocalGeometry(const MetricChart& chart, std::span<const double> point, int order = 4);

  int dim() const noexcept { return n_; }
  int order() const noexcept { return order_; }
  std::span<const double> point() const noexcept { return point_; }
  std::span<const Jet> coordinates() const noexcept { return x_; }

  const Tensor<Jet, 2>& metric() const noexcept { return g_; }
  const Tensor<Jet, 2>& inverse_metric() const noexcept { return g_inv_; }
  const Tensor<Jet, 3>& christoffel() const noexcept { return gamma_; }
  const Tensor<Jet, 4>& riemann_mixed() const noexcept { return riemann_mixed_; }
  const Tensor<Jet, 4>& riemann() const noexcept { return riemann_; }
  const Tensor<Jet, 2>& ricci() const noexcept { return ricci_; }
  const Jet& scalar() const noexcept { return scalar_; }
  /// Throw DimensionError for n < 3.
  const Tensor<Jet, 2>& schouten() const;
  const Tensor<Jet, 4>& weyl() const;

  MetricValue metric_value() const;
  CurvaturePack pack() const;

  Jet evaluate(const ScalarField& f) const;
  std::vector<Jet> evaluate(const VectorField& f) const;
  Tensor<Jet, 2> evaluate(const Sym2Field& f) const;

  /// nabla_i t_{...}, the derivative index prepended. Lowers jet order by one.
  template <std::size_t R>
  Tensor<Jet, R + 1> covariant_derivative(const Tensor<Jet, R>& t,
                                          const Variance<R>& variance) const;
  template <std::size_t R>
  Tensor<Jet, R + 1> covariant_derivative(const Tensor<Jet, R>& t) const {
    Variance<R> v;
    v.fill(Slot::lower);
    return covariant_derivative(t, v);
  }

  /// ||d t|| + R ||Gamma|| ||t||, the size of the terms summed into nabla t.
  template <std::size_t R>
  double derivative_scale(const Tensor<Jet, R>& t) const;

  /// g^{pm} t_{p..m}: contracts the first slot with the last one.
  template <std::size_t R>
  Tensor<Jet, R - 2> divergence(const Tensor<Jet, R>& t) const;

 private:
  int n_;
  int order_;
  std::vector<double> point_;
  std::vector<Jet> x_;
  Tensor<Jet, 2> g_;
  Tensor<Jet, 2> g_inv_;
  Tensor<Jet, 3> gamma_;
  Tensor<Jet, 4> riemann_mixed_;
  Tensor<Jet, 4> riemann_;
  Tensor<Jet, 2> ricci_;
  Jet scalar_;
  std::optional<Tensor<Jet, 2>> schouten_;
  std::optional<Tensor<Jet, 4>> weyl_;
};

/// Inverse of a matrix of jets by Gauss-Jordan elimination with partial
/// pivoting on values.
Tensor<Jet, 2> jet_inverse(const Tensor<Jet, 2>& m);

/// P_jkl^m = R_jkl^m + (delta_j^m R_kl - delta_k^m R_jl) / (n - 1),
/// with R_kl = R_kml^m taken from the argument.
Rank4 projective_tensor(const Rank4& riemann_mixed);

// Point-wise conveniences building a LocalGeometry of sufficient order.
Rank3 christoffel(const MetricChart& chart, std::span<const double> point);
CurvaturePack riemann(const MetricChart& chart, std::span<const double> point);
std::pair<Sym2, double> ricci_scalar(const MetricChart& chart, std::span<const double> point);
GCT weyl(const MetricChart& chart, std::span<const double> point);
Sym2 schouten(const MetricChart& chart, std::span<const double> point);
Rank4 projective(const MetricChart& chart, std::span<const double> point);
/// nabla_i b_jk
Rank3 cov_deriv_sym2(const MetricChart& chart, const Sym2Field& field,
                     std::span<const double> point);
/// C_jkl = nabla_j b_kl - nabla_k b_jl
Rank3 codazzi_deviation(const MetricChart& chart, const Sym2Field& field,
                        std::span<const double> point);

/// Codazzi deviation on jets.
Tensor<Jet, 3> codazzi_deviation(const LocalGeometry& geom, const Tensor<Jet, 2>& b);

// ---------------------------------------------------------------------------

template <std::size_t R>
Tensor<Jet, R + 1> LocalGeometry::covariant_derivative(const Tensor<Jet, R>& t,
                                                       const Variance<R>& variance) const {
  if (t.dim() != n_) throw DimensionError("covariant_derivative: dimension mismatch");
  Tensor<Jet, R + 1> out(n_);
  const std::size_t sz = t.size();
  for (int i = 0; i < n_; ++i) {
    for (std::size_t f = 0; f < sz; ++f) {
      const auto idx = t.unflatten(f);
      Jet acc = t[f].derivative(i);
      for (std::size_t s = 0; s < R; ++s) {
        const std::size_t st = t.stride(s);
        const std::size_t base = f - static_cast<std::size_t>(idx[s]) * st;
        for (int p = 0; p < n_; ++p) {
          const Jet& tp = t[base + static_cast<std::size_t>(p) * st];
          if (variance[s] == Slot::upper) {
            acc += gamma_(idx[s], i, p) * tp;
          } else {
            acc -= gamma_(p, i, idx[s]) * tp;
          }
        }
      }
      out[static_cast<std::size_t>(i) * sz + f] = std::move(acc);
    }
  }
  return out;
}

template <std::size_t R>
double LocalGeometry::derivative_scale(const Tensor<Jet, R>& t) const {
  double sq = 0.0;
  for (const Jet& v : t.values())
    for (int i = 0; i < n_; ++i) {
      const double d = v.derivative(i).value();
      sq += d * d;
    }
  return std::sqrt(sq) + static_cast<double>(R) * norm(values_of(gamma_)) * norm(values_of(t));
}

template <std::size_t R>
Tensor<Jet, R - 2> LocalGeometry::divergence(const Tensor<Jet, R>& t) const {
  static_assert(R >= 3);
  Tensor<Jet, R - 2> out(n_);
  const std::size_t inner = out.size();
  const std::size_t first = t.stride(0);
  for (std::size_t f = 0; f < inner; ++f) {
    Jet acc;
    for (int p = 0; p < n_; ++p)
      for (int m = 0; m < n_; ++m)
        acc += g_inv_(p, m) * t[static_cast<std::size_t>(p) * first + f * static_cast<std::size_t>(n_) +
                               static_cast<std::size_t>(m)];
    out[f] = std::move(acc);
  }
  return out;
}

}  // namespace curvcompat
