#pragma once

// Truncated multivariate Taylor jets.
//
// A jet of order r in v variables stores the Taylor coefficients
// c_a = (d^a f)(p) / a! for every multi-index |a| <= r, in graded order, so a
// jet of lower order is a prefix of a higher one. Arithmetic on jets
// reproduces the derivatives of composite functions exactly up to rounding.

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "curvcompat/errors.hpp"

namespace curvcompat {

class JetSpace {
 public:
  JetSpace(int variables, int max_order);

  int variables() const noexcept { return nv_; }
  int max_order() const noexcept { return max_order_; }
  /// Number of monomials of degree <= order.
  std::size_t size(int order) const { return size_by_order_.at(static_cast<std::size_t>(order)); }
  int degree(std::size_t idx) const { return degree_[idx]; }
  std::span<const int> exponents(std::size_t idx) const {
    return {exps_.data() + idx * static_cast<std::size_t>(nv_), static_cast<std::size_t>(nv_)};
  }
  std::size_t index_of(std::span<const int> exps) const;

  struct ProductTerm {
    std::uint32_t a, b, c;
  };
  struct DerivativeTerm {
    std::uint32_t src, dst;
    double factor;
  };
  /// Terms (a, b, c) with x^a x^b = x^c and |c| <= order.
  std::span<const ProductTerm> product_terms(int order) const;
  /// Terms mapping coefficients of an order-(r+1) jet onto its derivative of
  /// order r with respect to `var`.
  std::span<const DerivativeTerm> derivative_terms(int var, int result_order) const;

 private:
  int nv_;
  int max_order_;
  std::vector<int> exps_;
  std::vector<int> degree_;
  std::vector<std::size_t> size_by_order_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<ProductTerm> products_;
  std::vector<std::size_t> products_end_;
  std::vector<std::vector<DerivativeTerm>> derivs_;
  std::vector<std::vector<std::size_t>> derivs_end_;
};

class Jet {
 public:
  /// Order reported by exact constants.
  static constexpr int kExact = std::numeric_limits<int>::max();

  Jet() = default;
  Jet(double c) : constant_(c) {}  // NOLINT: constants convert implicitly

  /// The coordinate function x_var expanded about `value`.
  static Jet variable(std::shared_ptr<const JetSpace> space, int var, double value, int order);

  bool is_constant() const noexcept { return !space_; }
  int order() const noexcept { return space_ ? order_ : kExact; }
  double value() const noexcept { return space_ ? c_[0] : constant_; }
  const std::shared_ptr<const JetSpace>& space() const noexcept { return space_; }
  std::span<const double> coefficients() const noexcept { return c_; }

  /// Partial derivative d^alpha at the expansion point.
  double partial(std::span<const int> alpha) const;
  /// d/dx_var as a jet of one order less.
  Jet derivative(int var) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator-(Jet a);

 private:
  Jet scaled(double s) const;
  Jet plus_constant(double s) const;

  std::shared_ptr<const JetSpace> space_;
  int order_ = kExact;
  double constant_ = 0.0;
  std::vector<double> c_;

  friend Jet compose(const Jet& a, std::span<const double> taylor);
};

/// sum_k taylor[k] (a - a(p))^k, truncated at the order of `a`.
Jet compose(const Jet& a, std::span<const double> taylor);

Jet reciprocal(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double p);
Jet pow(const Jet& a, int p);

}  // namespace curvcompat
