#include "curvcompat/compat.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "curvcompat/curvature_algebra.hpp"
#include "eigen_bridge.hpp"

namespace curvcompat {
namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": dimension mismatch");
}

// b_i^m = b_ip g^pm, indexed (i, m)
Matrix index_raised_right(const Sym2& b, const MetricValue& g) {
  return matmul(b.matrix(), g.inverse());
}

Rank4 cyclic_compat_sum(const Matrix& bm, const Rank4& k) {
  const int n = k.dim();
  Rank4 d(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m)
            acc += bm(i, m) * k(j, kk, l, m) + bm(j, m) * k(kk, i, l, m) +
                   bm(kk, m) * k(i, j, l, m);
          d(i, j, kk, l) = acc;
        }
  return d;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return matmul(a, b) - matmul(b, a); }

Sym2 symmetrized(const Matrix& m) {
  Sym2 s(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

GctConstruction finish_construction(Rank4 t, bool preconditions_hold, std::string diagnostic,
                                    const Tolerance& tol) {
  GctConstruction out{std::move(t), std::nullopt, std::move(diagnostic)};
  if (!preconditions_hold) return out;
  try {
    out.gct = GCT::checked(out.tensor, tol.rel_algebra);
  } catch (const GctViolation& e) {
    out.diagnostic = e.what();
  }
  return out;
}

}  // namespace

CompatDefect compat_defect(const Sym2& b, const GCT& k, const MetricValue& g,
                           const Tolerance& tol) {
  require_same_dim(b.dim(), k.dim(), "compat_defect");
  require_same_dim(b.dim(), g.dim(), "compat_defect");
  Rank4 d = cyclic_compat_sum(index_raised_right(b, g), k.components());
  const double dn = norm(d);
  const Residual r = rel_residual(dn, {norm(b.matrix()), norm(k.components())}, tol);
  return {std::move(d), r.value};
}

bool is_compatible(const Sym2& b, const GCT& k, const MetricValue& g, const Tolerance& tol) {
  return compat_defect(b, k, g, tol).residual <= tol.rel_algebra;
}

RicciContraction ricci_of(const GCT& k, const MetricValue& g) {
  require_same_dim(k.dim(), g.dim(), "ricci_of");
  const Matrix r = ricci_contraction(k.components(), g.inverse());
  const double asym = norm(r - transpose(r)) / std::max(norm(r), 1e-300);
  return {symmetrized(r), norm(r) == 0.0 ? 0.0 : asym};
}

double scalar_of(const GCT& k, const MetricValue& g) {
  return trace(ricci_of(k, g).ricci.matrix(), g.inverse());
}

GCT weyl_part(const GCT& k, const MetricValue& g) {
  require_same_dim(k.dim(), g.dim(), "weyl_part");
  const int n = k.dim();
  if (n < 3) throw DimensionError("weyl_part needs n >= 3");
  if (n == 3) return GCT::zero(3);
  const Matrix ric = ricci_of(k, g).ricci.matrix();
  const double scal = trace(ric, g.inverse());
  const Matrix s = schouten_tensor(ric, scal, g.covariant().matrix());
  return GCT::checked(weyl_tensor(k.components(), s, g.covariant().matrix()), 1e-10);
}

Matrix ricci_commutator(const Sym2& b, const GCT& k, const MetricValue& g) {
  require_same_dim(b.dim(), k.dim(), "ricci_commutator");
  const Matrix ric = matmul(g.inverse(), ricci_of(k, g).ricci.matrix());
  return commutator(mixed(b, g), ric);
}

Matrix hat_commutator(const Sym2& b, const GCT& k, const MetricValue& g) {
  require_same_dim(b.dim(), k.dim(), "hat_commutator");
  const int n = b.dim();
  const Matrix b_up = matmul(matmul(g.inverse(), b.matrix()), g.inverse());
  Matrix hat(n);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m) {
      double acc = 0.0;
      for (int kk = 0; kk < n; ++kk)
        for (int l = 0; l < n; ++l) acc += k(j, kk, l, m) * b_up(kk, l);
      hat(j, m) = acc;
    }
  return commutator(mixed(b, g), matmul(g.inverse(), hat));
}

Sym2 jordan_product(const Sym2& a, const Sym2& b, const MetricValue& g) {
  require_same_dim(a.dim(), b.dim(), "jordan_product");
  require_same_dim(a.dim(), g.dim(), "jordan_product");
  const Matrix agb = matmul(matmul(a.matrix(), g.inverse()), b.matrix());
  const Matrix bga = matmul(matmul(b.matrix(), g.inverse()), a.matrix());
  return symmetrized((agb + bga) * 0.5);
}

GCT const_curvature_gct(double k_scal, const MetricValue& g) {
  const int n = g.dim();
  return (k_scal / (2.0 * n * (n - 1))) * kulkarni_nomizu(g.covariant(), g.covariant());
}

GctConstruction ring_gct(const Sym2& a, const Sym2& b, const GCT& k, const MetricValue& g,
                         const Tolerance& tol) {
  require_same_dim(a.dim(), k.dim(), "ring_gct");
  require_same_dim(b.dim(), k.dim(), "ring_gct");
  const int n = k.dim();
  const double ra = compat_defect(a, k, g, tol).residual;
  const double rb = compat_defect(b, k, g, tol).residual;
  const Matrix am = mixed(a, g);
  const Matrix bm = mixed(b, g);
  Rank4 t(n);
  for (int j = 0; j < n; ++j)
    for (int kk = 0; kk < n; ++kk)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double kv = k(j, kk, r, s);
          if (kv == 0.0) continue;
          for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
              t(j, kk, l, m) += kv * (am(r, l) * bm(s, m) + bm(r, l) * am(s, m));
        }
  const bool ok = ra <= tol.rel_algebra && rb <= tol.rel_algebra;
  std::string diag;
  if (!ok)
    diag = "inputs not K-compatible (residuals " + std::to_string(ra) + ", " +
           std::to_string(rb) + "); Bianchi identity not guaranteed";
  return finish_construction(std::move(t), ok, std::move(diag), tol);
}

GctConstruction kprime_gct(const Sym2& b, const GCT& k, const MetricValue& g,
                           const Tolerance& tol) {
  require_same_dim(b.dim(), k.dim(), "kprime_gct");
  const int n = k.dim();
  const double rb = compat_defect(b, k, g, tol).residual;
  const Matrix bm = mixed(b, g);
  Rank4 t(n);
  for (int j = 0; j < n; ++j)
    for (int kk = 0; kk < n; ++kk)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          double acc = 0.0;
          for (int s = 0; s < n; ++s) acc += k(j, kk, l, s) * bm(s, m) - k(j, kk, m, s) * bm(s, l);
          t(j, kk, l, m) = acc;
        }
  const bool ok = rb <= tol.rel_algebra;
  std::string diag;
  if (!ok)
    diag = "b not K-compatible (residual " + std::to_string(rb) +
           "); Bianchi identity not guaranteed";
  return finish_construction(std::move(t), ok, std::move(diag), tol);
}

InverseCompat inverse_compat_defect(const Sym2& b, const GCT& k, const MetricValue& g,
                                    const Tolerance& tol) {
  require_same_dim(b.dim(), k.dim(), "inverse_compat_defect");
  const int n = b.dim();
  const Eigen::MatrixXd bm = detail::to_eigen(mixed(b, g));
  const double det = bm.determinant();
  if (!(std::abs(det) >= 1e-12 * std::pow(bm.norm(), n)) || bm.norm() == 0.0)
    throw SingularMatrixError("inverse_compat_defect: b is singular");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(bm);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(n - 1);
  const Eigen::MatrixXd inv = bm.partialPivLu().inverse();
  const Matrix lowered = matmul(g.covariant().matrix(), detail::from_eigen(inv));
  Sym2 b_inv(lowered, 1e-6);
  CompatDefect d = compat_defect(b_inv, k, g, tol);
  return {std::move(b_inv), std::move(d), cond};
}

CompatDefect veblen_defect(const Sym2& b, const GCT& k, const MetricValue& g,
                           const Tolerance& tol) {
  require_same_dim(b.dim(), k.dim(), "veblen_defect");
  const int n = b.dim();
  const Matrix bm = index_raised_right(b, g);
  Rank4 v(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m)
            acc += bm(i, m) * k(j, kk, l, m) - bm(j, m) * k(i, l, kk, m) +
                   bm(kk, m) * k(i, l, j, m) - bm(l, m) * k(j, kk, i, m);
          v(i, j, kk, l) = acc;
        }
  const Residual r = rel_residual(norm(v), {norm(b.matrix()), norm(k.components())}, tol);
  return {std::move(v), r.value};
}

EigenSystem eigen_mixed(const Sym2& b, const MetricValue& g) {
  require_same_dim(b.dim(), g.dim(), "eigen_mixed");
  const int n = b.dim();
  const Eigen::MatrixXd m = detail::to_eigen(mixed(b, g));
  const double scale = std::max(m.norm(), 1e-300);
  EigenSystem out;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    out.diagnostic = "eigen solver did not converge";
    return out;
  }
  const auto& vals = es.eigenvalues();
  for (int i = 0; i < n; ++i)
    if (std::abs(vals(i).imag()) > 1e-10 * scale) {
      out.diagnostic = "complex spectrum";
      return out;
    }
  const Eigen::MatrixXd vecs = es.eigenvectors().real();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vecs);
  const auto& sv = svd.singularValues();
  if (!(sv(n - 1) > 1e-8 * sv(0))) {
    out.diagnostic = "defective (non-diagonalizable) mixed form";
    return out;
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int c) { return vals(a).real() < vals(c).real(); });
  for (int idx : order) {
    Eigen::VectorXd v = vecs.col(idx);
    v /= v.norm();
    Eigen::Index big = 0;
    v.cwiseAbs().maxCoeff(&big);
    if (v(big) < 0) v = -v;
    const double lambda = vals(idx).real();
    if ((m * v - lambda * v).norm() > 1e-10 * scale) {
      out.eigenvalues.clear();
      out.eigenvectors.clear();
      out.diagnostic = "eigenpair residual too large";
      return out;
    }
    out.eigenvalues.push_back(lambda);
    out.eigenvectors.emplace_back(v.data(), v.data() + n);
  }
  out.status = SpectrumStatus::real_diagonalizable;
  return out;
}

bool eigenvalues_distinct(double x, double y) {
  const double s = std::max(std::abs(x), std::abs(y));
  if (s == 0.0) return false;
  return std::abs(x - y) > kEigenGap * s;
}

double vandermonde_determinant(double x, double y, double z) {
  Eigen::Matrix3d v;
  v << 1, 1, 1, x, y, z, x * x, y * y, z * z;
  return v.partialPivLu().determinant();
}

namespace {

Vector triple_contraction(const Rank4& k, TriplePattern p, const Vector& x, const Vector& y,
                          const Vector& z) {
  const int n = k.dim();
  Vector w(static_cast<std::size_t>(n), 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int f = 0; f < n; ++f) {
          switch (p) {
            case TriplePattern::xyz_free3:
              w[f] += k(a, b, c, f) * x[a] * y[b] * z[c];
              break;
            case TriplePattern::xy_free2_z3:
              w[f] += k(a, b, f, c) * x[a] * y[b] * z[c];
              break;
            case TriplePattern::z0_free1_xy:
              w[f] += k(c, f, a, b) * x[a] * y[b] * z[c];
              break;
            case TriplePattern::free0_z1_xy:
              w[f] += k(f, c, a, b) * x[a] * y[b] * z[c];
              break;
          }
        }
  return w;
}

}  // namespace

DerdzinskiShenReport derdzinski_shen_check(const Sym2& b, const GCT& k, const MetricValue& g,
                                           const Tolerance& tol) {
  require_same_dim(b.dim(), k.dim(), "derdzinski_shen_check");
  DerdzinskiShenReport rep;
  const EigenSystem es = eigen_mixed(b, g);
  if (es.status != SpectrumStatus::real_diagonalizable) {
    rep.diagnostic = "skipped: " + es.diagnostic;
    return rep;
  }
  rep.applicable = true;
  const double kn = norm(k.components());
  const int n = b.dim();
  constexpr TriplePattern patterns[] = {TriplePattern::xyz_free3, TriplePattern::xy_free2_z3,
                                        TriplePattern::z0_free1_xy, TriplePattern::free0_z1_xy};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const double lz = es.eigenvalues[z];
        if (!eigenvalues_distinct(lz, es.eigenvalues[x]) ||
            !eigenvalues_distinct(lz, es.eigenvalues[y]))
          continue;
        const Vector& vx = es.eigenvectors[x];
        const Vector& vy = es.eigenvectors[y];
        const Vector& vz = es.eigenvectors[z];
        const double scale = std::max(kn * norm(vx) * norm(vy) * norm(vz), tol.floor);
        for (TriplePattern p : patterns) {
          const double v = kn == 0.0 ? 0.0 : norm(triple_contraction(k.components(), p, vx, vy, vz)) / scale;
          rep.triples.push_back({x, y, z, p, v});
          rep.max_contraction = std::max(rep.max_contraction, v);
        }
      }
  if (rep.triples.empty()) rep.diagnostic = "no applicable triples";
  rep.pass = rep.max_contraction <= tol.rel_algebra;
  return rep;
}

ConstCurvature const_curv_decompose(const GCT& k, const MetricValue& g, const Tolerance& tol) {
  require_same_dim(k.dim(), g.dim(), "const_curv_decompose");
  const int n = k.dim();
  const Matrix& gi = g.inverse();
  double scal = 0.0;
  for (int j = 0; j < n; ++j)
    for (int kk = 0; kk < n; ++kk)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) scal += gi(j, l) * gi(kk, m) * k(j, kk, l, m);
  const GCT ref = const_curvature_gct(scal, g);
  const double res = norm(k.components() - ref.components()) / std::max(norm(k.components()), tol.floor);
  return {scal, res};
}

UniversalCompatReport universal_compat_test(const GCT& k, const MetricValue& g, int trials,
                                            const RandomSpec& spec, const Tolerance& tol) {
  if (trials < 1) throw PreconditionError("universal_compat_test: trials must be >= 1");
  UniversalCompatReport rep;
  for (int t = 0; t < trials; ++t) {
    const Sym2 b = random_sym2({spec.seed + static_cast<std::uint64_t>(t), spec.scale}, Dim(k.dim()));
    const double r = compat_defect(b, k, g, tol).residual;
    rep.residuals.push_back(r);
    if (rep.worst_trial < 0 || r > rep.max_residual) {
      rep.max_residual = r;
      rep.worst_trial = t;
    }
    if (!(r <= tol.rel_algebra)) rep.all_pass = false;
  }
  return rep;
}

RankOneRicciReport rank_one_ricci_check(std::span<const double> u, const GCT& k,
                                        const MetricValue& g, const Tolerance& tol) {
  const int n = k.dim();
  if (static_cast<int>(u.size()) != n) throw DimensionError("rank_one_ricci_check: dimension mismatch");
  RankOneRicciReport rep;
  const Vector u_up = matvec(g.inverse(), u);
  double uu = 0.0;
  for (int i = 0; i < n; ++i) uu += u[i] * u_up[i];
  if (!(std::abs(uu) > 1e-10 * norm(u) * norm(u_up))) {
    rep.diagnostic = "inapplicable: null vector";
    return rep;
  }
  rep.compat_residual = compat_defect(Sym2::outer(u), k, g, tol).residual;
  if (!(rep.compat_residual <= tol.rel_algebra)) {
    rep.diagnostic = "inapplicable: u u is not K-compatible";
    return rep;
  }
  rep.applicable = true;
  const Matrix ric = ricci_of(k, g).ricci.matrix();
  const Vector v = matvec(ric, u_up);
  double vu = 0.0;
  for (int i = 0; i < n; ++i) vu += v[i] * u_up[i];
  rep.eigenvalue = vu / uu;
  Vector rej(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rej[i] = v[i] - rep.eigenvalue * u[i];
  rep.eigen_rejection = norm(rej) / std::max(norm(ric) * norm(u_up), tol.floor);
  rep.pass = rep.eigen_rejection <= tol.rel_algebra;
  return rep;
}

}  // namespace curvcompat
