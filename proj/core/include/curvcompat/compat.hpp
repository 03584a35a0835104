#pragma once

// K-compatibility of symmetric tensors with a generalized curvature tensor K:
//
//   b_i^m K_jklm + b_j^m K_kilm + b_k^m K_ijlm = 0
//
// and the algebraic constructions built on it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvcompat/random.hpp"
#include "curvcompat/tensor.hpp"

namespace curvcompat {

struct CompatDefect {
  Rank4 defect;     // free indices (i, j, k, l)
  double residual;  // ||defect|| / (||b|| ||K||)
};

CompatDefect compat_defect(const Sym2& b, const GCT& k, const MetricValue& g,
                           const Tolerance& tol = {});
bool is_compatible(const Sym2& b, const GCT& k, const MetricValue& g,
                   const Tolerance& tol = {});

struct RicciContraction {
  Sym2 ricci;
  double asymmetry;  // relative, before symmetrization
};

/// K_jl = K_jml^m
RicciContraction ricci_of(const GCT& k, const MetricValue& g);
double scalar_of(const GCT& k, const MetricValue& g);
/// Traceless part K - S wedge g, n >= 3 (exactly zero for n = 3).
GCT weyl_part(const GCT& k, const MetricValue& g);

/// [b, Ric(K)] of the mixed forms.
Matrix ricci_commutator(const Sym2& b, const GCT& k, const MetricValue& g);
/// [b, K^] of the mixed forms, K^_jm = K_jklm b^kl.
Matrix hat_commutator(const Sym2& b, const GCT& k, const MetricValue& g);

/// c_ij = (a_i^k b_kj + b_i^k a_kj) / 2
Sym2 jordan_product(const Sym2& a, const Sym2& b, const MetricValue& g);

/// K_scal / (2 n (n-1)) g wedge g
GCT const_curvature_gct(double k_scal, const MetricValue& g);

/// Result of a construction that yields a GCT only when its inputs are
/// compatible with K. When they are not, `gct` is empty and `tensor` holds the
/// raw components.
struct GctConstruction {
  Rank4 tensor;
  std::optional<GCT> gct;
  std::string diagnostic;
};

/// K_jkrs (a^r_l b^s_m + b^r_l a^s_m)
GctConstruction ring_gct(const Sym2& a, const Sym2& b, const GCT& k, const MetricValue& g,
                         const Tolerance& tol = {});
/// K_jkls b^s_m - K_jkms b^s_l
GctConstruction kprime_gct(const Sym2& b, const GCT& k, const MetricValue& g,
                           const Tolerance& tol = {});

struct InverseCompat {
  Sym2 inverse;  // g (g^-1 b)^-1, covariant
  CompatDefect defect;
  double condition_number;
};

/// Throws SingularMatrixError when |det b^i_j| < 1e-12 ||b^i_j||^n.
InverseCompat inverse_compat_defect(const Sym2& b, const GCT& k, const MetricValue& g,
                                    const Tolerance& tol = {});

/// b_i^m K_jklm - b_j^m K_ilkm + b_k^m K_iljm - b_l^m K_jkim
CompatDefect veblen_defect(const Sym2& b, const GCT& k, const MetricValue& g,
                           const Tolerance& tol = {});

enum class SpectrumStatus { real_diagonalizable, inapplicable };

struct EigenSystem {
  SpectrumStatus status = SpectrumStatus::inapplicable;
  std::vector<double> eigenvalues;          // ascending
  std::vector<Vector> eigenvectors;         // contravariant, unit Euclidean norm
  std::string diagnostic;
};

/// Right eigenvectors of b^i_j. Complex or defective spectra are reported as
/// inapplicable.
EigenSystem eigen_mixed(const Sym2& b, const MetricValue& g);

/// Slots contracted with (X, Y, Z); the remaining slot is free. X and Y fill
/// one antisymmetric pair, Z sits in the other pair.
enum class TriplePattern { xyz_free3, xy_free2_z3, z0_free1_xy, free0_z1_xy };

struct TripleContraction {
  int x, y, z;  // eigen indices
  TriplePattern pattern;
  double value;  // normalized by ||K|| ||X|| ||Y|| ||Z||
};

struct DerdzinskiShenReport {
  bool applicable = false;
  std::string diagnostic;
  std::vector<TripleContraction> triples;
  double max_contraction = 0.0;
  bool pass = true;
};

/// For eigenvectors X, Y, Z of b^i_j with z distinct from x and y, checks that
/// K vanishes when contracted with X, Y, Z in any of the four admissible slot
/// patterns.
DerdzinskiShenReport derdzinski_shen_check(const Sym2& b, const GCT& k, const MetricValue& g,
                                           const Tolerance& tol = {});

/// Relative eigenvalue gap below which two eigenvalues count as equal.
inline constexpr double kEigenGap = 1e-8;
bool eigenvalues_distinct(double x, double y);

/// Determinant of [[1,1,1],[x,y,z],[x^2,y^2,z^2]] by LU factorization.
double vandermonde_determinant(double x, double y, double z);

struct ConstCurvature {
  double k_scal;
  double residual;
};

/// K_scal = g^jl g^km K_jklm, residual of K against the constant-curvature
/// form, relative to ||K||.
ConstCurvature const_curv_decompose(const GCT& k, const MetricValue& g,
                                    const Tolerance& tol = {});

struct UniversalCompatReport {
  std::vector<double> residuals;  // one per trial, in seed order
  double max_residual = 0.0;
  int worst_trial = -1;
  bool all_pass = true;
};

/// Compatibility of K with `trials` seeded random symmetric tensors; trial t
/// uses seed spec.seed + t.
UniversalCompatReport universal_compat_test(const GCT& k, const MetricValue& g, int trials,
                                            const RandomSpec& spec, const Tolerance& tol = {});

struct RankOneRicciReport {
  bool applicable = false;
  std::string diagnostic;
  double compat_residual = 0.0;
  double eigen_rejection = 0.0;
  double eigenvalue = 0.0;
  bool pass = false;
};

/// If u_i u_j is K-compatible and u is not null, u is an eigenvector of the
/// Ricci contraction of K. `u` holds covariant components.
RankOneRicciReport rank_one_ricci_check(std::span<const double> u, const GCT& k,
                                        const MetricValue& g, const Tolerance& tol = {});

}  // namespace curvcompat
