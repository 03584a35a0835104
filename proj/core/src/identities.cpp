#include "curvcompat/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "curvcompat/curvature_algebra.hpp"
#include "curvcompat/maps.hpp"

namespace curvcompat {
namespace {

constexpr std::array<std::string_view, 7> kNames = {
    "cyclic_deviation", "veblen_deviation", "lovelock_riemann", "lovelock_weyl",
    "rc",               "ccodd",            "lovelock_4d"};

double relative(double defect, double scale, const Tolerance& tol) {
  return defect / std::max(scale, tol.floor);
}

/// R^m_i K_jklm summed over m, as (i, j, k, l).
Rank4 ricci_times(const Matrix& ric, const Matrix& g_inv, const Rank4& k) {
  const Matrix ric_up = matmul(g_inv, ric);  // R^m_i as (m, i)
  const int n = k.dim();
  Rank4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) acc += ric_up(m, i) * k(j, kk, l, m);
          out(i, j, kk, l) = acc;
        }
  return out;
}

/// g_kl A_ij + g_il A_jk + g_jl A_ki as (i, j, k, l).
Rank4 metric_cycle(const Matrix& g, const Matrix& a) {
  const int n = g.dim();
  Rank4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = g(k, l) * a(i, j) + g(i, l) * a(j, k) + g(j, l) * a(k, i);
  return out;
}

IdentityReport make_report(IdentityKind kind, const Rank4& lhs, const Rank4& rhs, double scale,
                           const Tolerance& tol) {
  const double r = relative(norm(lhs - rhs), scale, tol);
  const double t = identity_tolerance(kind, tol);
  return {kind, r, t, std::isfinite(r) && r <= t, norm(lhs), norm(rhs)};
}

void require_order(const LocalGeometry& geom, IdentityKind kind) {
  if (geom.order() < required_order(kind))
    throw InsufficientJetOrder(std::string(to_string(kind)) + ": needs metric jets of order " +
                               std::to_string(required_order(kind)));
}

Tensor<Jet, 2> field_jets(const LocalGeometry& geom, const Sym2Field* field, IdentityKind kind) {
  if (field == nullptr || !*field)
    throw PreconditionError(std::string(to_string(kind)) + ": needs a symmetric field");
  return geom.evaluate(*field);
}

struct GradDiv {
  Rank4 value;       // nabla_i nabla^m K_jklm as (i, j, k, l)
  double full_norm;  // ||g^-1|| ||nabla nabla K||
};

GradDiv grad_div(const LocalGeometry& geom, const Tensor<Jet, 4>& k) {
  const auto dk = geom.covariant_derivative(k);
  const auto div = geom.divergence(dk);
  const double g_inv = norm(values_of(geom.inverse_metric()));
  return {values_of(geom.covariant_derivative(div)),
          g_inv * norm(values_of(geom.covariant_derivative(dk)))};
}

}  // namespace

std::string_view to_string(IdentityKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

std::optional<IdentityKind> identity_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<IdentityKind>(i);
  return std::nullopt;
}

bool needs_field(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::cyclic_deviation:
    case IdentityKind::veblen_deviation:
    case IdentityKind::rc:
    case IdentityKind::ccodd:
      return true;
    default:
      return false;
  }
}

int required_order(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::cyclic_deviation:
    case IdentityKind::veblen_deviation:
    case IdentityKind::lovelock_riemann:
    case IdentityKind::lovelock_weyl:
    case IdentityKind::ccodd:
      return 4;
    case IdentityKind::rc:
    case IdentityKind::lovelock_4d:
      return 2;
  }
  return 4;
}

double identity_tolerance(IdentityKind kind, const Tolerance& tol) {
  return required_order(kind) >= 4 ? 10.0 * tol.rel_geometry : tol.rel_geometry;
}

IdentityReport identity_defect(IdentityKind kind, const LocalGeometry& geom,
                               const Sym2Field* field, const Tolerance& tol) {
  require_order(geom, kind);
  const int n = geom.dim();
  const Matrix g = values_of(geom.metric());
  const Matrix g_inv = values_of(geom.inverse_metric());
  const Rank4 rm = values_of(geom.riemann_mixed());

  switch (kind) {
    case IdentityKind::cyclic_deviation:
    case IdentityKind::veblen_deviation: {
      const auto b = field_jets(geom, field, kind);
      const Rank4 d = values_of(geom.covariant_derivative(codazzi_deviation(geom, b)));
      const Rank4 br = contract_first(values_of(b), rm);
      if (kind == IdentityKind::cyclic_deviation)
        return make_report(kind, cyclic3(d), cyclic3(br), norm(d) + norm(br), tol);
      Rank4 lhs(n), rhs(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              lhs(i, j, k, l) = d(i, j, l, k) + d(j, k, i, l) + d(k, l, j, i) + d(l, i, k, j);
              rhs(i, j, k, l) = br(i, j, l, k) + br(j, k, i, l) + br(k, l, j, i) + br(l, i, k, j);
            }
      return make_report(kind, lhs, rhs, norm(d) + norm(br), tol);
    }
    case IdentityKind::lovelock_riemann:
    case IdentityKind::lovelock_weyl: {
      if (kind == IdentityKind::lovelock_weyl && n < 4)
        throw DimensionError("lovelock_weyl: needs n >= 4");
      // Both sides vanish on Ricci-flat charts, so the scale is taken from
      // the full second derivative and from ||g^-1||^2 ||R||^2.
      const GradDiv a = grad_div(geom, kind == IdentityKind::lovelock_riemann ? geom.riemann() : geom.weyl());
      const double c = kind == IdentityKind::lovelock_riemann ? 1.0 : (n - 3.0) / (n - 2.0);
      const Rank4 r = values_of(geom.riemann());
      const Rank4 t = ricci_times(values_of(geom.ricci()), g_inv, r);
      const double rr = norm(g_inv) * norm(r);
      return make_report(kind, cyclic3(a.value), -c * cyclic3(t), a.full_norm + c * rr * rr, tol);
    }
    case IdentityKind::rc: {
      if (n < 3) throw DimensionError("rc: needs n >= 3");
      const Matrix b = values_of(field_jets(geom, field, kind));
      const Rank4 cm = contract_slot(values_of(geom.weyl()), 3, g_inv);
      const Rank4 bc = contract_first(b, cm);
      const Rank4 br = contract_first(b, rm);
      const Matrix q = matmul(matmul(b, g_inv), values_of(geom.ricci()));  // b_im R_j^m
      const Matrix qa = q - transpose(q);
      const double c = 1.0 / (n - 2.0);
      const Rank4 rhs = cyclic3(br) + c * metric_cycle(g, qa);
      return make_report(kind, cyclic3(bc), rhs, norm(bc) + norm(br) + c * norm(g) * norm(q), tol);
    }
    case IdentityKind::ccodd: {
      if (n < 3) throw DimensionError("ccodd: needs n >= 3");
      const auto b = field_jets(geom, field, kind);
      const Rank4 cm = contract_slot(values_of(geom.weyl()), 3, g_inv);
      const Rank4 bc = contract_first(values_of(b), cm);
      const auto cod = codazzi_deviation(geom, b);
      const auto& gj = geom.metric();
      const auto& gij = geom.inverse_metric();
      std::vector<Jet> tr(static_cast<std::size_t>(n));  // C_jm^m = g^ml C_jml
      for (int j = 0; j < n; ++j) {
        Jet acc;
        for (int m = 0; m < n; ++m)
          for (int l = 0; l < n; ++l) acc += gij(m, l) * cod(j, m, l);
        tr[j] = acc;
      }
      const double c = 1.0 / (n - 2.0);
      Tensor<Jet, 3> dev(n);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            dev(j, k, l) = cod(j, k, l) - c * (tr[j] * gj(k, l) - tr[k] * gj(j, l));
      const Rank4 dd = values_of(geom.covariant_derivative(dev));
      const Matrix div = values_of(geom.divergence(geom.covariant_derivative(cod)));
      const Rank4 rhs = cyclic3(dd) - c * metric_cycle(g, div);
      return make_report(kind, cyclic3(bc), rhs, norm(bc) + norm(dd) + c * norm(g) * norm(div), tol);
    }
    case IdentityKind::lovelock_4d: {
      if (n != 4) throw DimensionError("lovelock_4d: needs n = 4");
      const Rank4 c = values_of(geom.weyl());
      const double r = lovelock4d_residual(c, g, tol, norm(values_of(geom.riemann())));
      const double t = identity_tolerance(kind, tol);
      return {kind, r, t, std::isfinite(r) && r <= t, r * norm(g) * norm(c), 0.0};
    }
  }
  throw PreconditionError("unknown identity kind");
}

IdentityReport identity_defect(IdentityKind kind, const MetricChart& chart,
                               std::span<const double> point, const Sym2Field* field,
                               const Tolerance& tol) {
  const LocalGeometry geom(chart, point, std::max(2, required_order(kind)));
  return identity_defect(kind, geom, field, tol);
}

double lovelock4d_residual(const Rank4& c, const Matrix& g, const Tolerance& tol,
                           double curvature_scale) {
  if (c.dim() != 4 || g.dim() != 4) throw DimensionError("lovelock_4d: needs n = 4");
  double sq = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int cc = 0; cc < 4; ++cc)
        for (int r = 0; r < 4; ++r)
          for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) {
              const double v = g(a, r) * c(b, cc, s, t) + g(b, r) * c(cc, a, s, t) +
                               g(cc, r) * c(a, b, s, t) + g(a, t) * c(b, cc, r, s) +
                               g(b, t) * c(cc, a, r, s) + g(cc, t) * c(a, b, r, s) +
                               g(a, s) * c(b, cc, t, r) + g(b, s) * c(cc, a, t, r) +
                               g(cc, s) * c(a, b, t, r);
              sq += v * v;
            }
  return relative(std::sqrt(sq), norm(g) * std::max(norm(c), curvature_scale), tol);
}

double ricci_identity_residual(const LocalGeometry& geom, const Tensor<Jet, 2>& b,
                               const Tolerance& tol) {
  const int n = geom.dim();
  const Tensor<double, 4> dd = values_of(geom.covariant_derivative(geom.covariant_derivative(b)));
  const Rank4 rm = values_of(geom.riemann_mixed());
  const Matrix bv = values_of(b);
  Rank4 lhs(n), rhs(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          lhs(i, j, k, l) = dd(i, j, k, l) - dd(j, i, k, l);
          double acc = 0.0;
          for (int m = 0; m < n; ++m) acc += rm(i, j, k, m) * bv(m, l) + rm(i, j, l, m) * bv(k, m);
          rhs(i, j, k, l) = acc;
        }
  return relative(norm(lhs - rhs), norm(dd) + norm(rm) * norm(bv), tol);
}

double codazzi_ricci_residual(const LocalGeometry& geom, const Tolerance& tol) {
  if (geom.order() < 3) throw InsufficientJetOrder("codazzi_ricci_residual: needs order >= 3");
  const Rank3 c = values_of(codazzi_deviation(geom, geom.ricci()));
  const auto dr = geom.covariant_derivative(geom.riemann());
  const Rank3 d = values_of(geom.divergence(dr));
  const double scale = norm(values_of(geom.inverse_metric())) *
                       std::max(norm(values_of(dr)), geom.derivative_scale(geom.riemann()));
  return relative(norm(c + d), scale, tol);
}

double weyl_divergence_residual(const LocalGeometry& geom, const Tolerance& tol) {
  const int n = geom.dim();
  if (n < 4) throw DimensionError("weyl_divergence_residual: needs n >= 4");
  if (geom.order() < 3) throw InsufficientJetOrder("weyl_divergence_residual: needs order >= 3");
  const auto dc = geom.covariant_derivative(geom.weyl());
  const Rank3 div = values_of(geom.divergence(dc));
  const Rank3 cs = values_of(codazzi_deviation(geom, geom.schouten()));
  const double weyl_scale = std::max({norm(values_of(dc)), geom.derivative_scale(geom.weyl()),
                                      geom.derivative_scale(geom.riemann())});
  const double schouten_scale = std::max(norm(values_of(geom.covariant_derivative(geom.schouten()))),
                                         geom.derivative_scale(geom.schouten()));
  const double scale = norm(values_of(geom.inverse_metric())) * weyl_scale +
                       2.0 * (n - 3.0) * schouten_scale;
  return relative(norm(div + (n - 3.0) * cs), scale, tol);
}

double metricity_residual(const LocalGeometry& geom, const Tolerance& tol) {
  const int n = geom.dim();
  const Rank3 ng = values_of(geom.covariant_derivative(geom.metric()));
  Rank3 dg(n);
  for (int p = 0; p < n; ++p)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) dg(p, k, l) = geom.metric()(k, l).derivative(p).value();
  return relative(norm(ng), norm(dg), tol);
}

double SanityReport::max() const {
  return std::max({gct, ricci_symmetry, trace, weyl_trace, weyl_gct, metricity});
}

SanityReport sanity_check(const LocalGeometry& geom, const Tolerance& tol) {
  const int n = geom.dim();
  const Rank4 r = values_of(geom.riemann());
  const Matrix g_inv = values_of(geom.inverse_metric());
  const double rn = norm(r);
  SanityReport s;
  s.gct = gct_residuals(r, tol.floor).max();

  const Matrix ric_raw = ricci_contraction(r, g_inv);
  const double ric_scale = norm(g_inv) * rn;  // Ricci may vanish while Riemann does not
  s.ricci_symmetry = relative(norm(ric_raw - transpose(ric_raw)), ric_scale, tol);
  const double tr = trace(ric_raw, g_inv);
  s.trace = relative(std::abs(tr - geom.scalar().value()), norm(g_inv) * ric_scale, tol);

  if (n >= 3) {
    const Rank4 c = values_of(geom.weyl());
    double sq = 0.0;
    const std::array<std::array<int, 2>, 4> pairs{{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
    for (const auto& pr : pairs) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double acc = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
              std::array<int, 4> idx{};
              int free_slot = 0;
              for (int slot = 0; slot < 4; ++slot) {
                if (slot == pr[0]) {
                  idx[slot] = p;
                } else if (slot == pr[1]) {
                  idx[slot] = q;
                } else {
                  idx[slot] = free_slot++ == 0 ? a : b;
                }
              }
              acc += g_inv(p, q) * c.at(idx);
            }
          sq += acc * acc;
        }
    }
    const double scale = norm(g_inv) * std::max(norm(c), rn);
    s.weyl_trace = relative(std::sqrt(sq), scale, tol);
    s.weyl_gct = gct_residuals(c, std::max({tol.floor, rn})).max();
  }
  s.metricity = metricity_residual(geom, tol);
  return s;
}

}  // namespace curvcompat
