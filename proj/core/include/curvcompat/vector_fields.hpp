#pragma once

// Classification of a one-form X by the shape of its covariant derivative.

#include <span>
#include <string_view>
#include <vector>

#include "curvcompat/chart.hpp"
#include "curvcompat/local_geometry.hpp"

namespace curvcompat {

enum class VectorClass {
  concircular,  // nabla_i X_j = rho g_ij
  torqued,      // nabla_i X_j = rho g_ij + alpha_i X_j with alpha . X = 0
  recurrent,    // nabla_i X_j = p_i X_j
  none,
};

std::string_view to_string(VectorClass c);

struct VectorClassification {
  VectorClass kind = VectorClass::none;
  double rho = 0.0;
  Vector alpha;               // torqued
  Vector p;                   // recurrent
  double fit_residual = 0.0;  // of the reported class (or the best fit for none)
  double orthogonality = 0.0; // |alpha^i X_i| / (||alpha|| ||X^#||), torqued only
  Matrix nabla;               // nabla_i X_j
};

/// Least-squares fits against each ansatz in the order concircular, torqued,
/// recurrent; the first fit with relative residual <= threshold wins. A
/// parallel field (nabla X = 0) is reported as concircular with rho = 0.
VectorClassification classify_vector_field(const LocalGeometry& geom, const std::vector<Jet>& x,
                                           double threshold = 1e-8);
VectorClassification classify_vector_field(const MetricChart& chart, const VectorField& x,
                                           std::span<const double> point, double threshold = 1e-8);

}  // namespace curvcompat
