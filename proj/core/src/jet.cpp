#include "curvcompat/jet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace curvcompat {
namespace {

void monomials_of_degree(int nv, int degree, std::vector<int>& current, int var,
                         std::vector<std::vector<int>>& out) {
  if (var == nv - 1) {
    current[var] = degree;
    out.push_back(current);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[var] = e;
    monomials_of_degree(nv, degree - e, current, var + 1, out);
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

JetSpace::JetSpace(int variables, int max_order) : nv_(variables), max_order_(max_order) {
  if (variables < 1) throw DimensionError("JetSpace: need at least one variable");
  if (max_order < 0) throw InsufficientJetOrder("JetSpace: negative order");
  std::vector<std::vector<int>> monos;
  for (int d = 0; d <= max_order; ++d) {
    std::vector<int> cur(static_cast<std::size_t>(nv_), 0);
    monomials_of_degree(nv_, d, cur, 0, monos);
    size_by_order_.push_back(monos.size());
  }
  for (std::size_t i = 0; i < monos.size(); ++i) {
    exps_.insert(exps_.end(), monos[i].begin(), monos[i].end());
    int deg = 0;
    for (int e : monos[i]) deg += e;
    degree_.push_back(deg);
    index_.emplace(monos[i], i);
  }

  std::vector<int> sum(static_cast<std::size_t>(nv_));
  for (std::size_t a = 0; a < monos.size(); ++a)
    for (std::size_t b = 0; b < monos.size(); ++b) {
      if (degree_[a] + degree_[b] > max_order_) continue;
      for (int v = 0; v < nv_; ++v) sum[v] = monos[a][v] + monos[b][v];
      products_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                           static_cast<std::uint32_t>(index_.at(sum))});
    }
  std::stable_sort(products_.begin(), products_.end(), [&](const ProductTerm& x, const ProductTerm& y) {
    return degree_[x.c] < degree_[y.c];
  });
  for (int r = 0; r <= max_order_; ++r) {
    const auto it = std::find_if(products_.begin(), products_.end(),
                                 [&](const ProductTerm& t) { return degree_[t.c] > r; });
    products_end_.push_back(static_cast<std::size_t>(it - products_.begin()));
  }

  derivs_.resize(static_cast<std::size_t>(nv_));
  derivs_end_.resize(static_cast<std::size_t>(nv_));
  for (int v = 0; v < nv_; ++v) {
    for (std::size_t s = 0; s < monos.size(); ++s) {
      if (monos[s][v] == 0) continue;
      std::vector<int> lowered = monos[s];
      --lowered[v];
      derivs_[v].push_back({static_cast<std::uint32_t>(s),
                            static_cast<std::uint32_t>(index_.at(lowered)),
                            static_cast<double>(monos[s][v])});
    }
    for (int r = 0; r < max_order_; ++r) {
      const auto it = std::find_if(derivs_[v].begin(), derivs_[v].end(),
                                   [&](const DerivativeTerm& t) { return degree_[t.src] > r + 1; });
      derivs_end_[v].push_back(static_cast<std::size_t>(it - derivs_[v].begin()));
    }
  }
}

std::size_t JetSpace::index_of(std::span<const int> exps) const {
  const auto it = index_.find(std::vector<int>(exps.begin(), exps.end()));
  if (it == index_.end()) throw InsufficientJetOrder("JetSpace: multi-index beyond jet order");
  return it->second;
}

std::span<const JetSpace::ProductTerm> JetSpace::product_terms(int order) const {
  const int r = std::min(order, max_order_);
  return {products_.data(), products_end_[static_cast<std::size_t>(r)]};
}

std::span<const JetSpace::DerivativeTerm> JetSpace::derivative_terms(int var, int result_order) const {
  return {derivs_[var].data(), derivs_end_[var][static_cast<std::size_t>(result_order)]};
}

// ---------------------------------------------------------------------------

Jet Jet::variable(std::shared_ptr<const JetSpace> space, int var, double value, int order) {
  if (!space) throw PreconditionError("Jet::variable: missing jet space");
  if (order < 0 || order > space->max_order())
    throw InsufficientJetOrder("Jet::variable: order outside the jet space");
  if (var < 0 || var >= space->variables()) throw DimensionError("Jet::variable: bad variable");
  Jet j;
  j.order_ = order;
  j.c_.assign(space->size(order), 0.0);
  j.c_[0] = value;
  if (order >= 1) {
    std::vector<int> e(static_cast<std::size_t>(space->variables()), 0);
    e[var] = 1;
    j.c_[space->index_of(e)] = 1.0;
  }
  j.space_ = std::move(space);
  return j;
}

double Jet::partial(std::span<const int> alpha) const {
  int deg = 0;
  double fact = 1.0;
  for (int a : alpha) {
    deg += a;
    fact *= factorial(a);
  }
  if (!space_) return deg == 0 ? constant_ : 0.0;
  if (deg > order_) throw InsufficientJetOrder("Jet::partial: derivative beyond jet order");
  return c_[space_->index_of(alpha)] * fact;
}

Jet Jet::derivative(int var) const {
  if (!space_) return Jet(0.0);
  if (order_ < 1) throw InsufficientJetOrder("Jet::derivative: jet has order 0");
  Jet d;
  d.space_ = space_;
  d.order_ = order_ - 1;
  d.c_.assign(space_->size(d.order_), 0.0);
  for (const auto& t : space_->derivative_terms(var, d.order_)) d.c_[t.dst] += t.factor * c_[t.src];
  return d;
}

Jet Jet::truncated(int order) const {
  if (!space_ || order >= order_) return *this;
  Jet t = *this;
  t.order_ = order;
  t.c_.resize(space_->size(order));
  return t;
}

Jet Jet::scaled(double s) const {
  Jet r = *this;
  if (!space_) {
    r.constant_ *= s;
  } else {
    for (auto& v : r.c_) v *= s;
  }
  return r;
}

Jet Jet::plus_constant(double s) const {
  Jet r = *this;
  if (!space_) {
    r.constant_ += s;
  } else {
    r.c_[0] += s;
  }
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  if (!o.space_) {
    *this = plus_constant(o.constant_);
    return *this;
  }
  if (!space_) {
    const double c = constant_;
    *this = o.plus_constant(c);
    return *this;
  }
  if (space_ != o.space_) throw DimensionError("jets from different jet spaces");
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) { return *this += -o; }

Jet operator-(Jet a) { return a.scaled(-1.0); }

Jet operator*(const Jet& a, const Jet& b) {
  if (!a.space_) return b.scaled(a.constant_);
  if (!b.space_) return a.scaled(b.constant_);
  if (a.space_ != b.space_) throw DimensionError("jets from different jet spaces");
  Jet r;
  r.space_ = a.space_;
  r.order_ = std::min(a.order_, b.order_);
  r.c_.assign(r.space_->size(r.order_), 0.0);
  const double* ac = a.c_.data();
  const double* bc = b.c_.data();
  double* rc = r.c_.data();
  for (const auto& t : r.space_->product_terms(r.order_)) rc[t.c] += ac[t.a] * bc[t.b];
  return r;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = *this * o;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  *this = *this * reciprocal(o);
  return *this;
}

Jet compose(const Jet& a, std::span<const double> taylor) {
  if (taylor.empty()) return Jet(0.0);
  if (!a.space_) return Jet(taylor[0]);
  const int k_max = std::min<int>(a.order_, static_cast<int>(taylor.size()) - 1);
  Jet h = a;
  h.c_[0] = 0.0;
  Jet r(taylor[static_cast<std::size_t>(k_max)]);
  for (int k = k_max - 1; k >= 0; --k) r = r * h + Jet(taylor[static_cast<std::size_t>(k)]);
  if (r.is_constant()) {
    // Order-0 input: keep the result in the jet space.
    Jet c = a;
    c.c_.assign(c.c_.size(), 0.0);
    c.c_[0] = r.constant_;
    return c;
  }
  return r;
}

namespace {

int taylor_length(const Jet& a) {
  return a.is_constant() ? 1 : a.order() + 1;
}

}  // namespace

Jet reciprocal(const Jet& a) {
  const double x = a.value();
  if (x == 0.0) throw SingularMatrixError("jet reciprocal of zero");
  std::vector<double> t(static_cast<std::size_t>(taylor_length(a)));
  double p = 1.0 / x;
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p /= x;
  }
  return compose(a, t);
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  std::vector<double> t(static_cast<std::size_t>(taylor_length(a)));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = e / factorial(static_cast<int>(k));
  return compose(a, t);
}

Jet log(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw PreconditionError("jet log of non-positive value");
  std::vector<double> t(static_cast<std::size_t>(taylor_length(a)));
  t[0] = std::log(x);
  for (std::size_t k = 1; k < t.size(); ++k)
    t[k] = (k % 2 == 1 ? 1.0 : -1.0) / (static_cast<double>(k) * std::pow(x, static_cast<double>(k)));
  return compose(a, t);
}

namespace {

Jet periodic(const Jet& a, double phase) {
  const double x = a.value();
  std::vector<double> t(static_cast<std::size_t>(taylor_length(a)));
  for (std::size_t k = 0; k < t.size(); ++k)
    t[k] = std::sin(x + phase + static_cast<double>(k) * std::numbers::pi / 2.0) /
           factorial(static_cast<int>(k));
  return compose(a, t);
}

}  // namespace

Jet sin(const Jet& a) { return periodic(a, 0.0); }
Jet cos(const Jet& a) { return periodic(a, std::numbers::pi / 2.0); }

Jet sinh(const Jet& a) {
  const Jet e = exp(a);
  return (e - reciprocal(e)) * Jet(0.5);
}

Jet cosh(const Jet& a) {
  const Jet e = exp(a);
  return (e + reciprocal(e)) * Jet(0.5);
}

Jet pow(const Jet& a, double p) {
  const double x = a.value();
  std::vector<double> t(static_cast<std::size_t>(taylor_length(a)));
  double binom = 1.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = binom * std::pow(x, p - static_cast<double>(k));
    binom *= (p - static_cast<double>(k)) / static_cast<double>(k + 1);
  }
  return compose(a, t);
}

Jet pow(const Jet& a, int p) {
  if (p < 0) return reciprocal(pow(a, -p));
  Jet r(1.0);
  for (int i = 0; i < p; ++i) r *= a;
  return r;
}

Jet sqrt(const Jet& a) {
  if (!(a.value() > 0.0)) throw PreconditionError("jet sqrt of non-positive value");
  return pow(a, 0.5);
}

}  // namespace curvcompat
