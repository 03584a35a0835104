#pragma once

// Metric fixtures: closed-form charts with probe points, distinguished fields
// and reference values.

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "curvcompat/chart.hpp"
#include "curvcompat/local_geometry.hpp"

namespace curvcompat {

/// Where a reference value comes from.
enum class ValueSource {
  closed_form,   // evaluated from a known formula for this metric
  identity,      // forced by an identity or a stated theorem
  construction,  // true by how the fixture was built
};

std::string_view to_string(ValueSource s);

/// Names understood by measure(); see catalog.cpp for definitions.
///   scalar_curvature, riemann_0101, kretschmann, riemann_norm,
///   ricci_ratio, weyl_ratio, projective_ratio, concircular_rho, torqued_rho
struct ExpectedValue {
  std::function<double(std::span<const double>)> at;
  double tolerance;  // on |measured - expected| / max(1, |expected|)
  ValueSource source;
};

/// A compatibility statement the fixture is known to satisfy (or, for
/// negative witnesses, to violate at some probe).
struct CompatFact {
  std::string name;
  std::string field;  // a sym2 field name, or "ricci"
  bool weyl;          // compatibility with the Weyl tensor instead of Riemann
  bool holds;
  double threshold;   // tolerance when it holds, witness threshold otherwise
  ValueSource source;
};

using ParamValue = std::variant<double, std::string>;
using FixtureParams = std::map<std::string, ParamValue>;

struct Fixture {
  std::string id;
  FixtureParams params;  // effective parameters, defaults filled in
  MetricChart chart;
  std::vector<Vector> probes;
  std::map<std::string, VectorField> vector_fields;  // covariant components
  std::map<std::string, Sym2Field> sym2_fields;
  std::map<std::string, ExpectedValue> expected;
  std::map<std::string, std::string> unavailable;  // field name -> reason
  /// Throws FixtureError for probe points the fixture cannot be evaluated at.
  std::function<void(std::span<const double>)> probe_check;
  std::vector<CompatFact> compat_facts;
  bool constant_curvature = false;
};

std::vector<std::string> list_fixtures();

/// Throws FixtureError for unknown ids, unknown or invalid parameters and
/// singular probes.
Fixture get_fixture(std::string_view id, const FixtureParams& params = {});

/// Replaces the probe points after validating each one.
void set_probes(Fixture& fixture, std::vector<Vector> probes);

/// Reference quantity `name` measured at the geometry's point.
double measure(std::string_view name, const Fixture& fixture, const LocalGeometry& geom);

/// Symmetric field with seeded polynomial components of total degree <=
/// `degree` and coefficients in [-1, 1].
Sym2Field random_polynomial_sym2_field(std::uint64_t seed, int n, int degree = 3);

/// eta + eps P(x) with P a seeded symmetric polynomial of degree <= 4.
MetricChart perturbed_flat_chart(std::uint64_t seed, int n, double eps, bool lorentzian);

}  // namespace curvcompat
