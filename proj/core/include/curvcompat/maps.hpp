#pragma once

// Geodesic (projective) maps acting on the mixed curvature tensor.

#include <span>

#include "curvcompat/local_geometry.hpp"
#include "curvcompat/tensor.hpp"

namespace curvcompat {

/// (b.R)_ijkl = b_im R_jkl^m
Rank4 contract_first(const Matrix& b, const Rank4& riemann_mixed);

/// b_im R_jkl^m + b_jm R_kil^m + b_km R_ijl^m
Rank4 compat_sum_mixed(const Sym2& b, const Rank4& riemann_mixed);

struct GeodesicTransform {
  Rank4 riemann_mixed;      // transformed R_jkl^m
  Matrix p;                 // P_kl = dX_kl - X_k X_l
  double symmetry_defect;   // ||P - P^T|| / max(||P||, floor)
};

/// R_jkl^m - delta_k^m P_jl + delta_j^m P_kl with P = nabla X - X (x) X.
/// `dx(k, l)` holds nabla_k X_l.
GeodesicTransform geodesic_transform(const Rank4& riemann_mixed, std::span<const double> x,
                                     const Matrix& dx, const Tolerance& tol = {});
GeodesicTransform geodesic_transform(const CurvaturePack& pack, std::span<const double> x,
                                     const Matrix& dx, const Tolerance& tol = {});

struct GeodesicMapCheck {
  double compat_sum_residual;  // ||S(Rbar, b) - S(R, b)|| / (||b|| ||R||)
  double projective_residual;  // ||P(Rbar) - P(R)|| / ||R||
};

GeodesicMapCheck geodesic_map_check(const Rank4& riemann_mixed, const GeodesicTransform& t,
                                    const Sym2& b, const Tolerance& tol = {});

}  // namespace curvcompat
