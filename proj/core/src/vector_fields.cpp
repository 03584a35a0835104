#include "curvcompat/vector_fields.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace curvcompat {

std::string_view to_string(VectorClass c) {
  switch (c) {
    case VectorClass::concircular:
      return "concircular";
    case VectorClass::torqued:
      return "torqued";
    case VectorClass::recurrent:
      return "recurrent";
    case VectorClass::none:
      return "none";
  }
  return "none";
}

VectorClassification classify_vector_field(const LocalGeometry& geom, const std::vector<Jet>& x,
                                           double threshold) {
  const int n = geom.dim();
  if (static_cast<int>(x.size()) != n) throw DimensionError("classify_vector_field: wrong length");
  Tensor<Jet, 1> xt(n);
  for (int i = 0; i < n; ++i) xt(i) = x[i];
  const Tensor<double, 2> m = values_of(geom.covariant_derivative(xt));
  const Matrix g = values_of(geom.metric());
  const Matrix g_inv = values_of(geom.inverse_metric());
  Vector xv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xv[i] = x[i].value();

  VectorClassification out;
  out.nabla = m;
  const double mn = norm(m);
  if (mn <= 1e-14 * std::max(1.0, norm(xv))) {
    out.kind = VectorClass::concircular;
    return out;
  }

  // concircular
  double gg = 0.0, mg = 0.0;
  for (std::size_t f = 0; f < g.size(); ++f) {
    gg += g[f] * g[f];
    mg += m[f] * g[f];
  }
  const double rho = mg / gg;
  const double res_conc = norm(m - rho * g) / mn;
  if (res_conc <= threshold) {
    out.kind = VectorClass::concircular;
    out.rho = rho;
    out.fit_residual = res_conc;
    return out;
  }

  // torqued: unknowns (rho, alpha_0..alpha_{n-1})
  const int rows = n * n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, n + 1);
  Eigen::VectorXd rhs(rows);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int r = i * n + j;
      a(r, 0) = g(i, j);
      a(r, 1 + i) = xv[j];
      rhs(r) = m(i, j);
    }
  const Eigen::VectorXd sol = a.completeOrthogonalDecomposition().solve(rhs);
  const double res_torq = (a * sol - rhs).norm() / mn;
  Vector alpha(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) alpha[i] = sol(1 + i);
  const Vector x_up = matvec(g_inv, xv);
  double ax = 0.0;
  for (int i = 0; i < n; ++i) ax += alpha[i] * x_up[i];
  const double orth = std::abs(ax) / std::max(norm(alpha) * norm(x_up), 1e-300);
  if (res_torq <= threshold && orth <= threshold) {
    out.kind = VectorClass::torqued;
    out.rho = sol(0);
    out.alpha = alpha;
    out.fit_residual = res_torq;
    out.orthogonality = orth;
    return out;
  }

  // recurrent: nabla_i X_j = p_i X_j
  double xx = 0.0;
  for (double v : xv) xx += v * v;
  Vector p(static_cast<std::size_t>(n), 0.0);
  double res_rec = 1.0;
  if (xx > 0.0) {
    Matrix fit(n);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += m(i, j) * xv[j];
      p[i] = acc / xx;
      for (int j = 0; j < n; ++j) fit(i, j) = p[i] * xv[j];
    }
    res_rec = norm(m - fit) / mn;
  }
  if (res_rec <= threshold) {
    out.kind = VectorClass::recurrent;
    out.p = p;
    out.fit_residual = res_rec;
    return out;
  }
  out.fit_residual = std::min({res_conc, res_torq, res_rec});
  return out;
}

VectorClassification classify_vector_field(const MetricChart& chart, const VectorField& x,
                                           std::span<const double> point, double threshold) {
  const LocalGeometry geom(chart, point, 2);
  return classify_vector_field(geom, geom.evaluate(x), threshold);
}

}  // namespace curvcompat
