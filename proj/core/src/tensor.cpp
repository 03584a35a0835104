#include "curvcompat/tensor.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "eigen_bridge.hpp"

namespace curvcompat {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Matrix identity_matrix(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matmul: dimension mismatch");
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix transpose(const Matrix& a) {
  const int n = a.dim();
  Matrix t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = a(j, i);
  return t;
}

Vector matvec(const Matrix& a, std::span<const double> v) {
  const int n = a.dim();
  if (static_cast<int>(v.size()) != n) throw DimensionError("matvec: dimension mismatch");
  Vector r(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += a(i, j) * v[j];
  return r;
}

// ---------------------------------------------------------------------------

Sym2::Sym2(const Matrix& m, double tol) : m_(m.dim()) {
  const int n = m.dim();
  double asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = m(i, j) - m(j, i);
      asym += d * d;
    }
  if (std::sqrt(asym) > tol * std::max(norm(m), 1e-300))
    throw PreconditionError("Sym2: input matrix is not symmetric");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) set(i, j, 0.5 * (m(i, j) + m(j, i)));
}

Sym2 Sym2::identity(int n) { return Sym2(identity_matrix(n)); }

Sym2 Sym2::diagonal(std::span<const double> d) {
  Sym2 s(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) s.set(int(i), int(i), d[i]);
  return s;
}

Sym2 Sym2::outer(std::span<const double> u) {
  const int n = static_cast<int>(u.size());
  Sym2 s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.set(i, j, u[i] * u[j]);
  return s;
}

Sym2 operator+(const Sym2& a, const Sym2& b) {
  Sym2 r = a;
  r.m_ += b.m_;
  return r;
}
Sym2 operator-(const Sym2& a, const Sym2& b) {
  Sym2 r = a;
  r.m_ -= b.m_;
  return r;
}
Sym2 operator*(double s, const Sym2& a) {
  Sym2 r = a;
  r.m_ *= s;
  return r;
}

// ---------------------------------------------------------------------------

MetricValue::MetricValue(const Sym2& g) : g_(g) {
  const int n = g.dim();
  const Eigen::MatrixXd ge = detail::to_eigen(g.matrix());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ge);
  if (!lu.isInvertible()) throw SingularMatrixError("metric is singular");
  const Eigen::MatrixXd inv = lu.inverse();
  const double err = (ge * inv - Eigen::MatrixXd::Identity(n, n)).norm();
  if (!(err <= 1e-13 * std::max(1.0, ge.norm() * inv.norm())))
    throw SingularMatrixError("metric inverse is numerically unreliable");
  g_inv_ = detail::from_eigen(inv);
  // Exact symmetry of the inverse keeps raised quantities symmetric.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (g_inv_(i, j) + g_inv_(j, i));
      g_inv_(i, j) = v;
      g_inv_(j, i) = v;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ge, Eigen::EigenvaluesOnly);
  for (int i = 0; i < n; ++i) signature_.push_back(es.eigenvalues()(i) < 0 ? -1 : 1);
  std::sort(signature_.begin(), signature_.end());
}

MetricValue MetricValue::euclidean(int n) { return MetricValue(Sym2::identity(n)); }

MetricValue MetricValue::minkowski(int n) {
  std::vector<double> d(static_cast<std::size_t>(n), 1.0);
  d[0] = -1.0;
  return diagonal(d);
}

MetricValue MetricValue::diagonal(std::span<const double> d) {
  return MetricValue(Sym2::diagonal(d));
}

// ---------------------------------------------------------------------------

double GctResiduals::max() const {
  return std::max({first_pair, second_pair, bianchi, pair_exchange, last_three_cyclic});
}

GctResiduals gct_residuals(const Rank4& k, double floor) {
  const int n = k.dim();
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0;
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < n; ++a)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          const double v = k(j, a, l, m);
          const double d1 = v + k(a, j, l, m);
          const double d2 = v + k(j, a, m, l);
          const double d3 = v + k(a, l, j, m) + k(l, j, a, m);
          const double d4 = v - k(l, m, j, a);
          const double d5 = v + k(j, l, m, a) + k(j, m, a, l);
          s1 += d1 * d1;
          s2 += d2 * d2;
          s3 += d3 * d3;
          s4 += d4 * d4;
          s5 += d5 * d5;
        }
  const double scale = std::max(norm(k), floor);
  return {std::sqrt(s1) / scale, std::sqrt(s2) / scale, std::sqrt(s3) / scale,
          std::sqrt(s4) / scale, std::sqrt(s5) / scale};
}

GCT GCT::checked(Rank4 k, double tol) {
  const GctResiduals r = gct_residuals(k);
  if (!(r.max() <= tol))
    throw GctViolation("tensor violates curvature symmetries (residual " +
                       std::to_string(r.max()) + ")");
  return GCT(std::move(k), tol);
}

GCT GCT::zero(int n) { return GCT(Rank4(n), 0.0); }

GCT operator+(const GCT& a, const GCT& b) {
  return GCT(a.k_ + b.k_, std::max(a.tol_, b.tol_));
}
GCT operator-(const GCT& a, const GCT& b) {
  return GCT(a.k_ - b.k_, std::max(a.tol_, b.tol_));
}
GCT operator*(double s, const GCT& a) { return GCT(a.k_ * s, a.tol_); }

// ---------------------------------------------------------------------------

Residual rel_residual(double defect_norm, std::initializer_list<double> scale_norms,
                      const Tolerance& tol, ToleranceKind kind) {
  if (defect_norm < 0) throw PreconditionError("rel_residual: negative defect norm");
  double scale = 1.0;
  for (double s : scale_norms) {
    if (s < 0) throw PreconditionError("rel_residual: negative scale norm");
    scale *= s;
  }
  const double r = defect_norm / std::max(scale, tol.floor);
  return {r, r <= tol.select(kind)};
}

Rank4 raise_last(const Rank4& t, const MetricValue& g) {
  if (t.dim() != g.dim()) throw DimensionError("raise_last: dimension mismatch");
  return raise(t, 3, g);
}

Rank4 lower_last(const Rank4& t, const MetricValue& g) {
  if (t.dim() != g.dim()) throw DimensionError("lower_last: dimension mismatch");
  return lower(t, 3, g);
}

Matrix mixed(const Sym2& b, const MetricValue& g) {
  if (b.dim() != g.dim()) throw DimensionError("mixed: dimension mismatch");
  return matmul(g.inverse(), b.matrix());
}

GCT kulkarni_nomizu(const Sym2& a, const Sym2& b) {
  return GCT::checked(kn_product(a.matrix(), b.matrix()), 1e-12);
}

GCT gct_project(const Rank4& t) {
  const int n = t.dim();
  Rank4 a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          a(i, j, k, l) = 0.25 * (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) + t(j, i, l, k));
  Rank4 s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s(i, j, k, l) = 0.5 * (a(i, j, k, l) + a(k, l, i, j));
  Rank4 p = s - cyclic3(s) * (1.0 / 3.0);
  return GCT::checked(std::move(p), 1e-12);
}

}  // namespace curvcompat
