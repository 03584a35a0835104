#pragma once

// Dense multilinear algebra over an n-dimensional space with a (pseudo-)metric.
//
// Component convention: every tensor is stored by its components in a single
// coordinate basis, row-major over n^rank entries, covariant unless a
// function says otherwise. Symmetries are invariants checked on values, not a
// storage scheme.

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "curvcompat/errors.hpp"

namespace curvcompat {

/// Dimension of the underlying vector space (n >= 2).
class Dim {
 public:
  constexpr explicit Dim(int n) : n_(n) {
    if (n < 2) throw DimensionError("dimension must be at least 2");
  }
  constexpr int value() const noexcept { return n_; }
  constexpr operator int() const noexcept { return n_; }

 private:
  int n_;
};

namespace detail {
constexpr std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}
}  // namespace detail

template <typename T, std::size_t Rank>
class Tensor {
 public:
  static constexpr std::size_t rank = Rank;
  using value_type = T;
  using Index = std::array<int, Rank>;

  Tensor() = default;
  explicit Tensor(int n, const T& fill = T{})
      : n_(n), data_(detail::ipow(static_cast<std::size_t>(n), Rank), fill) {
    if (n < 1) throw DimensionError("tensor dimension must be positive");
  }

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t stride(std::size_t slot) const noexcept {
    return detail::ipow(static_cast<std::size_t>(n_), Rank - 1 - slot);
  }

  template <typename... I>
    requires(sizeof...(I) == Rank)
  T& operator()(I... idx) {
    return data_[flat(idx...)];
  }
  template <typename... I>
    requires(sizeof...(I) == Rank)
  const T& operator()(I... idx) const {
    return data_[flat(idx...)];
  }

  T& at(const Index& idx) { return data_[flat_of(idx)]; }
  const T& at(const Index& idx) const { return data_[flat_of(idx)]; }

  T& operator[](std::size_t f) { return data_[f]; }
  const T& operator[](std::size_t f) const { return data_[f]; }

  Index unflatten(std::size_t f) const {
    Index idx{};
    for (std::size_t s = Rank; s-- > 0;) {
      idx[s] = static_cast<int>(f % static_cast<std::size_t>(n_));
      f /= static_cast<std::size_t>(n_);
    }
    return idx;
  }
  std::size_t flat_of(const Index& idx) const {
    std::size_t f = 0;
    for (std::size_t s = 0; s < Rank; ++s) {
      assert(idx[s] >= 0 && idx[s] < n_);
      f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[s]);
    }
    return f;
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  Tensor& operator+=(const Tensor& o) {
    check_same(o);
    for (std::size_t f = 0; f < data_.size(); ++f) data_[f] += o.data_[f];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check_same(o);
    for (std::size_t f = 0; f < data_.size(); ++f) data_[f] -= o.data_[f];
    return *this;
  }
  Tensor& operator*=(double s) {
    for (auto& v : data_) v = v * s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend Tensor operator-(Tensor a) { return a *= -1.0; }

 private:
  template <typename... I>
  std::size_t flat(I... idx) const {
    std::size_t f = 0;
    ((assert(static_cast<int>(idx) >= 0 && static_cast<int>(idx) < n_),
      f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx)),
     ...);
    return f;
  }
  void check_same(const Tensor& o) const {
    if (o.n_ != n_) throw DimensionError("tensor dimension mismatch");
  }

  int n_ = 0;
  std::vector<T> data_;
};

using Vector = std::vector<double>;
using Matrix = Tensor<double, 2>;
using Rank3 = Tensor<double, 3>;
using Rank4 = Tensor<double, 4>;

/// Frobenius norm; the single norm used by every check.
template <std::size_t R>
double norm(const Tensor<double, R>& t) {
  double s = 0.0;
  for (double v : t.values()) s += v * v;
  return std::sqrt(s);
}
double norm(std::span<const double> v);

Matrix identity_matrix(int n);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Vector matvec(const Matrix& a, std::span<const double> v);

/// Symmetric covariant 2-tensor. Stored full, kept exactly symmetric.
class Sym2 {
 public:
  Sym2() = default;
  explicit Sym2(int n) : m_(n) {}
  /// Accepts a matrix whose asymmetry is within `tol` (relative) and stores
  /// its exact symmetric part.
  explicit Sym2(const Matrix& m, double tol = 1e-12);

  static Sym2 identity(int n);
  static Sym2 diagonal(std::span<const double> d);
  static Sym2 outer(std::span<const double> u);

  int dim() const noexcept { return m_.dim(); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Matrix& matrix() const noexcept { return m_; }

  friend Sym2 operator+(const Sym2& a, const Sym2& b);
  friend Sym2 operator-(const Sym2& a, const Sym2& b);
  friend Sym2 operator*(double s, const Sym2& a);

 private:
  Matrix m_;
};

/// A symmetric invertible metric value with its inverse and signature.
class MetricValue {
 public:
  explicit MetricValue(const Sym2& g);

  static MetricValue euclidean(int n);
  static MetricValue minkowski(int n);
  static MetricValue diagonal(std::span<const double> d);

  int dim() const noexcept { return g_.dim(); }
  const Sym2& covariant() const noexcept { return g_; }
  const Matrix& inverse() const noexcept { return g_inv_; }
  /// Eigenvalue signs, negatives first.
  const std::vector<int>& signature() const noexcept { return signature_; }

 private:
  Sym2 g_;
  Matrix g_inv_;
  std::vector<int> signature_;
};

/// Relative residuals of the algebraic curvature symmetries.
struct GctResiduals {
  double first_pair = 0;       // K_jklm + K_kjlm
  double second_pair = 0;      // K_jklm + K_jkml
  double bianchi = 0;          // K_jklm + K_kljm + K_ljkm
  double pair_exchange = 0;    // K_jklm - K_lmjk
  double last_three_cyclic = 0;  // K_jklm + K_jlmk + K_jmkl

  double max() const;
};

GctResiduals gct_residuals(const Rank4& k, double floor = 1e-14);

/// Rank-4 covariant tensor with the algebraic symmetries of a Riemann tensor.
class GCT {
 public:
  /// Throws GctViolation if any symmetry residual exceeds `tol`.
  static GCT checked(Rank4 k, double tol = 1e-10);
  static GCT zero(int n);

  int dim() const noexcept { return k_.dim(); }
  double tolerance() const noexcept { return tol_; }
  const Rank4& components() const noexcept { return k_; }
  double operator()(int j, int k, int l, int m) const { return k_(j, k, l, m); }

  friend GCT operator+(const GCT& a, const GCT& b);
  friend GCT operator-(const GCT& a, const GCT& b);
  friend GCT operator*(double s, const GCT& a);

 private:
  GCT(Rank4 k, double tol) : k_(std::move(k)), tol_(tol) {}
  Rank4 k_;
  double tol_ = 1e-10;
};

enum class ToleranceKind { algebra, geometry };

struct Tolerance {
  double rel_algebra = 1e-10;
  double rel_geometry = 1e-7;
  double floor = 1e-14;

  double select(ToleranceKind kind) const {
    return kind == ToleranceKind::algebra ? rel_algebra : rel_geometry;
  }
};

struct Residual {
  double value = 0;
  bool pass = true;
};

/// defect / max(product of scales, floor), compared against the selected
/// tolerance.
Residual rel_residual(double defect_norm, std::initializer_list<double> scale_norms,
                      const Tolerance& tol = {},
                      ToleranceKind kind = ToleranceKind::algebra);

// ---------------------------------------------------------------------------
// Generic index operations. Templated on the component type so that the same
// code serves plain values and jet-valued fields.

/// result_{..a..} = sum_b m(a, b) t_{..b..} on the given slot.
template <typename T, std::size_t R, typename U>
Tensor<T, R> contract_slot(const Tensor<T, R>& t, std::size_t slot,
                           const Tensor<U, 2>& m) {
  if (m.dim() != t.dim()) throw DimensionError("contract_slot: dimension mismatch");
  const int n = t.dim();
  const std::size_t st = t.stride(slot);
  Tensor<T, R> out(n);
  for (std::size_t f = 0; f < t.size(); ++f) {
    const int a = t.unflatten(f)[slot];
    const std::size_t base = f - static_cast<std::size_t>(a) * st;
    T acc{};
    for (int b = 0; b < n; ++b) acc += m(a, b) * t[base + static_cast<std::size_t>(b) * st];
    out[f] = acc;
  }
  return out;
}

/// (a wedge b)_{ijlm} = a_il b_jm + a_jm b_il - a_im b_jl - a_jl b_im
template <typename T>
Tensor<T, 4> kn_product(const Tensor<T, 2>& a, const Tensor<T, 2>& b) {
  if (a.dim() != b.dim()) throw DimensionError("kulkarni_nomizu: dimension mismatch");
  const int n = a.dim();
  Tensor<T, 4> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          out(i, j, l, m) = a(i, l) * b(j, m) + a(j, m) * b(i, l) -
                            a(i, m) * b(j, l) - a(j, l) * b(i, m);
  return out;
}

/// T_ijkl + T_jkil + T_kijl
template <typename T>
Tensor<T, 4> cyclic3(const Tensor<T, 4>& t) {
  const int n = t.dim();
  Tensor<T, 4> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = t(i, j, k, l) + t(j, k, i, l) + t(k, i, j, l);
  return out;
}

// ---------------------------------------------------------------------------
// Value-level operations.

template <std::size_t R>
Tensor<double, R> raise(const Tensor<double, R>& t, std::size_t slot,
                        const MetricValue& g) {
  return contract_slot(t, slot, g.inverse());
}
template <std::size_t R>
Tensor<double, R> lower(const Tensor<double, R>& t, std::size_t slot,
                        const MetricValue& g) {
  return contract_slot(t, slot, g.covariant().matrix());
}
Rank4 raise_last(const Rank4& t, const MetricValue& g);
Rank4 lower_last(const Rank4& t, const MetricValue& g);

/// b^i_j = g^{ik} b_kj
Matrix mixed(const Sym2& b, const MetricValue& g);

GCT kulkarni_nomizu(const Sym2& a, const Sym2& b);

/// Projection onto the curvature symmetry class: antisymmetrize both pairs,
/// symmetrize under pair exchange, remove one third of the cyclic sum.
GCT gct_project(const Rank4& t);

}  // namespace curvcompat
