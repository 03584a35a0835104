#include "curvcompat/chart.hpp"

#include <memory>
#include <utility>

namespace curvcompat {

JetTensor2 symmetrized_upper(const JetTensor2& t) {
  JetTensor2 s = t;
  const int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) s(i, j) = t(j, i);
  return s;
}

MetricChart::MetricChart(std::string name, int n, std::vector<int> signature,
                         Sym2Field components)
    : name_(std::move(name)),
      n_(Dim(n)),
      signature_(std::move(signature)),
      components_(std::move(components)) {
  if (static_cast<int>(signature_.size()) != n_)
    throw DimensionError("MetricChart '" + name_ + "': signature length differs from n");
  if (!components_) throw PreconditionError("MetricChart '" + name_ + "': no component function");
}

JetTensor2 MetricChart::evaluate(Coordinates x) const {
  if (static_cast<int>(x.size()) != n_)
    throw DimensionError("MetricChart '" + name_ + "': wrong number of coordinates");
  JetTensor2 g = components_(x);
  if (g.dim() != n_) throw DimensionError("MetricChart '" + name_ + "': component function has wrong size");
  return symmetrized_upper(g);
}

MetricValue MetricChart::value_at(std::span<const double> point) const {
  std::vector<Jet> x(point.begin(), point.end());
  const JetTensor2 g = evaluate(x);
  Sym2 v(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) v.set(i, j, g(i, j).value());
  MetricValue mv(v);
  if (mv.signature() != signature_)
    throw PreconditionError("MetricChart '" + name_ + "': signature changes at probe point");
  return mv;
}

MetricChart conformal_transform(const MetricChart& chart, ScalarField sigma) {
  const MetricChart base = chart;
  auto components = [base, sigma = std::move(sigma)](Coordinates x) {
    JetTensor2 g = base.evaluate(x);
    const Jet w = exp(2.0 * sigma(x));
    for (auto& c : g.values()) c = w * c;
    return g;
  };
  return MetricChart(chart.name() + "+conformal", chart.dim(), chart.signature(),
                     std::move(components));
}

std::vector<Jet> coordinate_jets(std::span<const double> point, int order) {
  auto space = std::make_shared<const JetSpace>(static_cast<int>(point.size()), order);
  std::vector<Jet> x;
  for (std::size_t k = 0; k < point.size(); ++k)
    x.push_back(Jet::variable(space, static_cast<int>(k), point[k], order));
  return x;
}

}  // namespace curvcompat
