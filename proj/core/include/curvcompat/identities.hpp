#pragma once

// Differential identities relating covariant derivatives of symmetric fields
// and curvature, each evaluated as a relative residual at one point.

#include <optional>
#include <span>
#include <string_view>

#include "curvcompat/chart.hpp"
#include "curvcompat/local_geometry.hpp"
#include "curvcompat/tensor.hpp"

namespace curvcompat {

enum class IdentityKind {
  cyclic_deviation,  // cyclic sum of nabla_i C_jkl against b.R
  veblen_deviation,  // four-term Veblen-like sum of nabla C against b.R
  lovelock_riemann,  // nabla_(i nabla^m R_jk)lm = -R^m_(i R_jk)lm
  lovelock_weyl,     // same for the Weyl tensor, n >= 4
  rc,                // Weyl compatibility sum in terms of Riemann and Ricci
  ccodd,             // Weyl compatibility sum in terms of the Codazzi deviation
  lovelock_4d,       // nine-term g.C identity, n = 4
};

std::string_view to_string(IdentityKind kind);
std::optional<IdentityKind> identity_kind_from_string(std::string_view name);
bool needs_field(IdentityKind kind);
/// Metric jet order needed to evaluate the identity.
int required_order(IdentityKind kind);
/// rel_geometry, relaxed tenfold for identities involving two covariant
/// derivatives of curvature or of a field.
double identity_tolerance(IdentityKind kind, const Tolerance& tol = {});

struct IdentityReport {
  IdentityKind kind;
  double residual;   // ||LHS - RHS|| / (sum of ingredient norms)
  double tolerance;
  bool pass;
  double lhs_norm;
  double rhs_norm;
};

/// Throws DimensionError, InsufficientJetOrder or PreconditionError (missing
/// field) when the kind does not apply.
IdentityReport identity_defect(IdentityKind kind, const LocalGeometry& geom,
                               const Sym2Field* field = nullptr, const Tolerance& tol = {});
IdentityReport identity_defect(IdentityKind kind, const MetricChart& chart,
                               std::span<const double> point, const Sym2Field* field = nullptr,
                               const Tolerance& tol = {});

/// Nine-term identity g_ar C_bcst + ... = 0 for a traceless GCT in n = 4,
/// relative to ||g|| max(||C||, curvature_scale).
double lovelock4d_residual(const Rank4& weyl, const Matrix& g, const Tolerance& tol = {},
                           double curvature_scale = 0.0);

// Further point-wise identities.

/// [nabla_i, nabla_j] b_kl against R_ijk^m b_ml + R_ijl^m b_km.
double ricci_identity_residual(const LocalGeometry& geom, const Tensor<Jet, 2>& b,
                               const Tolerance& tol = {});
/// Codazzi deviation of the Ricci tensor against -nabla^m R_jklm.
double codazzi_ricci_residual(const LocalGeometry& geom, const Tolerance& tol = {});
/// nabla^m C_jklm against (n-3)(nabla_k S_jl - nabla_j S_kl), n >= 4.
double weyl_divergence_residual(const LocalGeometry& geom, const Tolerance& tol = {});
/// ||nabla g|| relative to ||dg||.
double metricity_residual(const LocalGeometry& geom, const Tolerance& tol = {});

struct SanityReport {
  double gct = 0.0;           // curvature symmetries of R_jklm
  double ricci_symmetry = 0.0;
  double trace = 0.0;         // g^jl R_jl against R
  double weyl_trace = 0.0;    // single traces of C (n >= 3)
  double weyl_gct = 0.0;
  double metricity = 0.0;
  double max() const;
};

SanityReport sanity_check(const LocalGeometry& geom, const Tolerance& tol = {});

}  // namespace curvcompat
