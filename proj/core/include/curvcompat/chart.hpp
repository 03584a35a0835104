#pragma once

// Coordinate charts and fields given by closed-form component functions that
// can be evaluated on jets.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "curvcompat/jet.hpp"
#include "curvcompat/tensor.hpp"

namespace curvcompat {

using JetTensor2 = Tensor<Jet, 2>;
using Coordinates = std::span<const Jet>;

using ScalarField = std::function<Jet(Coordinates)>;
/// Covariant components X_i.
using VectorField = std::function<std::vector<Jet>(Coordinates)>;
/// Covariant components b_ij; only the upper triangle (i <= j) is read.
using Sym2Field = std::function<JetTensor2(Coordinates)>;

/// Reads the upper triangle of `t` and mirrors it.
JetTensor2 symmetrized_upper(const JetTensor2& t);

class MetricChart {
 public:
  /// `signature` lists eigenvalue signs, negatives first, as in
  /// MetricValue::signature().
  MetricChart(std::string name, int n, std::vector<int> signature, Sym2Field components);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return n_; }
  const std::vector<int>& signature() const noexcept { return signature_; }

  /// Metric components on jet coordinates, exactly symmetric.
  JetTensor2 evaluate(Coordinates x) const;
  /// Metric value at a point. Throws SingularMatrixError if not invertible and
  /// PreconditionError if the signature differs from the declared one.
  MetricValue value_at(std::span<const double> point) const;

 private:
  std::string name_;
  int n_;
  std::vector<int> signature_;
  Sym2Field components_;
};

/// The chart with metric e^{2 sigma} g.
MetricChart conformal_transform(const MetricChart& chart, ScalarField sigma);

/// Jets of degree `order` for each coordinate at `point`, in a fresh space.
std::vector<Jet> coordinate_jets(std::span<const double> point, int order);

}  // namespace curvcompat
