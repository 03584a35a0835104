#pragma once

// Electric part of a Weyl tensor with respect to a unit time-like vector in
// n = 4, and the reconstruction valid when u (x) u is Weyl compatible.

#include <span>

#include "curvcompat/tensor.hpp"

namespace curvcompat {

/// E_kl = C_jklm u^j u^m. `u_up` holds contravariant components.
Sym2 electric_weyl(const GCT& c, std::span<const double> u_up, const MetricValue& g);

/// 2(u_a u_d E_bc - u_a u_c E_bd + u_b u_c E_ad - u_b u_d E_ac)
///   + g_ad E_bc - g_ac E_bd + g_bc E_ad - g_bd E_ac
/// Throws DimensionError for n != 4, PreconditionError unless u.u = -1 +- 1e-10.
GCT weyl_from_electric(const Sym2& e, std::span<const double> u_up, const MetricValue& g);

/// u (x) u counts as Weyl compatible below this relative residual.
inline constexpr double kElectricPreconditionTol = 1e-8;

struct ElectricReconstruction {
  Sym2 electric;
  GCT reconstructed;
  double precondition_residual;  // Weyl-compat residual of u (x) u
  bool precondition_holds;
  double reconstruction_error;   // ||reconstructed - C|| / ||C||
  double trace_residual;         // |g^kl E_kl| / (||g^-1|| ||E||)
  double orthogonality;          // ||E_kl u^l|| / (||E|| ||u||)
};

/// Computes E and the reconstruction and reports how well it matches C. A
/// mismatch is reported, not thrown, when the precondition fails.
ElectricReconstruction electric_reconstruction_check(const GCT& c, std::span<const double> u_up,
                                                     const MetricValue& g,
                                                     const Tolerance& tol = {});

}  // namespace curvcompat
