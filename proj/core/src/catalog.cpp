#include "curvcompat/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <utility>

#include "curvcompat/random.hpp"
#include "curvcompat/vector_fields.hpp"

namespace curvcompat {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class ParamReader {
 public:
  ParamReader(std::string id, const FixtureParams& given) : id_(std::move(id)), given_(given) {}

  double number(const std::string& key, double fallback) {
    seen_.insert(key);
    double v = fallback;
    if (auto it = given_.find(key); it != given_.end()) {
      if (!std::holds_alternative<double>(it->second))
        throw FixtureError(id_ + ": parameter '" + key + "' must be a number");
      v = std::get<double>(it->second);
    }
    if (!std::isfinite(v)) throw FixtureError(id_ + ": parameter '" + key + "' is not finite");
    effective_[key] = v;
    return v;
  }

  int integer(const std::string& key, int fallback, int lo, int hi) {
    const double v = number(key, fallback);
    if (v != std::floor(v) || v < lo || v > hi)
      throw FixtureError(id_ + ": parameter '" + key + "' must be an integer in [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
  }

  std::string text(const std::string& key, const std::string& fallback,
                   const std::vector<std::string>& allowed) {
    seen_.insert(key);
    std::string v = fallback;
    if (auto it = given_.find(key); it != given_.end()) {
      if (!std::holds_alternative<std::string>(it->second))
        throw FixtureError(id_ + ": parameter '" + key + "' must be a string");
      v = std::get<std::string>(it->second);
    }
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
      throw FixtureError(id_ + ": parameter '" + key + "' has unsupported value '" + v + "'");
    effective_[key] = v;
    return v;
  }

  FixtureParams finish() const {
    for (const auto& [k, v] : given_)
      if (!seen_.contains(k)) throw FixtureError(id_ + ": unknown parameter '" + k + "'");
    return effective_;
  }

 private:
  std::string id_;
  const FixtureParams& given_;
  std::set<std::string> seen_;
  FixtureParams effective_;
};

JetTensor2 diagonal_metric(const std::vector<Jet>& d) {
  const int n = static_cast<int>(d.size());
  JetTensor2 g(n, Jet(0.0));
  for (int i = 0; i < n; ++i) g(i, i) = d[i];
  return g;
}

std::vector<int> signature_of(bool lorentzian, int n) {
  std::vector<int> s(static_cast<std::size_t>(n), 1);
  if (lorentzian) s[0] = -1;
  return s;
}

Fixture make_fixture(std::string id, FixtureParams params, MetricChart chart,
                     std::vector<Vector> probes) {
  Fixture f{std::move(id), std::move(params), std::move(chart), {}, {}, {}, {}, {}, {}, {}, false};
  f.probe_check = [](std::span<const double>) {};
  f.probes = std::move(probes);
  return f;
}

ExpectedValue constant(double v, double tol, ValueSource src) {
  return {[v](std::span<const double>) { return v; }, tol, src};
}

std::vector<std::vector<int>> monomials(int n, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == n) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[var] = e;
      rec(var + 1, left - e);
    }
    cur[var] = 0;
  };
  rec(0, degree);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    return da < db;
  });
  return out;
}

std::vector<Jet> monomial_jets(Coordinates x, const std::vector<std::vector<int>>& monos) {
  std::vector<Jet> out;
  out.reserve(monos.size());
  for (const auto& m : monos) {
    Jet v(1.0);
    for (std::size_t k = 0; k < m.size(); ++k)
      for (int e = 0; e < m[k]; ++e) v *= x[k];
    out.push_back(std::move(v));
  }
  return out;
}

/// Seeded coefficients for the upper triangle of a symmetric polynomial field.
struct SymPolynomial {
  int n;
  std::vector<std::vector<int>> monos;
  std::vector<double> coeffs;  // (pair index, monomial) row-major

  JetTensor2 evaluate(Coordinates x, const JetTensor2* base, double eps) const {
    const auto mj = monomial_jets(x, monos);
    JetTensor2 out(n, Jet(0.0));
    std::size_t pair = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++pair) {
        Jet acc = base ? (*base)(i, j) : Jet(0.0);
        for (std::size_t a = 0; a < monos.size(); ++a) {
          const double c = coeffs[pair * monos.size() + a];
          if (c != 0.0) acc += (eps * c) * mj[a];
        }
        out(i, j) = acc;
      }
    return out;
  }
};

std::shared_ptr<const SymPolynomial> seeded_polynomial(std::uint64_t seed, int n, int degree,
                                                       bool skip_constant, double decay) {
  auto p = std::make_shared<SymPolynomial>();
  p->n = n;
  p->monos = monomials(n, degree);
  SeededGenerator gen(seed);
  const std::size_t pairs = static_cast<std::size_t>(n * (n + 1) / 2);
  p->coeffs.resize(pairs * p->monos.size());
  for (std::size_t pr = 0; pr < pairs; ++pr)
    for (std::size_t a = 0; a < p->monos.size(); ++a) {
      int deg = 0;
      for (int e : p->monos[a]) deg += e;
      const double c = gen.uniform(-1.0, 1.0) * std::pow(decay, deg);
      p->coeffs[pr * p->monos.size() + a] = (skip_constant && deg == 0) ? 0.0 : c;
    }
  return p;
}

std::vector<Vector> seeded_probes(std::uint64_t seed, int n, int count, double half_width) {
  SeededGenerator gen(seed ^ 0xA5A5A5A5ULL);
  std::vector<Vector> out;
  for (int c = 0; c < count; ++c) {
    Vector p(static_cast<std::size_t>(n));
    for (auto& v : p) v = gen.uniform(-half_width, half_width);
    out.push_back(std::move(p));
  }
  return out;
}

// Scale factor a(t) with its first derivative.
struct ScaleFactor {
  std::function<Jet(const Jet&)> a;
  std::function<double(double)> a_dot;
  std::function<double(double)> a_ddot;
};

ScaleFactor scale_factor(const std::string& kind) {
  if (kind == "t2")
    return {[](const Jet& t) { return t * t; }, [](double t) { return 2.0 * t; },
            [](double) { return 2.0; }};
  if (kind == "exp")
    return {[](const Jet& t) { return exp(t); }, [](double t) { return std::exp(t); },
            [](double t) { return std::exp(t); }};
  return {[](const Jet& t) { return cosh(t); }, [](double t) { return std::sinh(t); },
          [](double t) { return std::cosh(t); }};
}

// ---------------------------------------------------------------------------

Fixture flat(const std::string& id, const FixtureParams& given, bool lorentzian) {
  ParamReader pr(id, given);
  const int n = pr.integer("n", 4, 2, 6);
  auto params = pr.finish();
  const auto sig = signature_of(lorentzian, n);
  MetricChart chart(id, n, sig, [sig](Coordinates x) {
    std::vector<Jet> d;
    for (std::size_t i = 0; i < x.size(); ++i) d.emplace_back(static_cast<double>(sig[i]));
    return diagonal_metric(d);
  });
  auto f = make_fixture(id, std::move(params), std::move(chart),
                        {Vector(static_cast<std::size_t>(n), 0.0), seeded_probes(7, n, 1, 1.0)[0]});
  f.vector_fields["constant"] = [n](Coordinates) {
    std::vector<Jet> v;
    for (int i = 0; i < n; ++i) v.emplace_back(1.0 / (i + 1));
    return v;
  };
  f.sym2_fields["constant"] = [n](Coordinates) {
    JetTensor2 b(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = Jet(1.0 + 0.5 * i * j);
    return b;
  };
  f.sym2_fields["polynomial"] = random_polynomial_sym2_field(11, n, 3);
  f.expected["riemann_norm"] = constant(0.0, 1e-14, ValueSource::construction);
  f.expected["scalar_curvature"] = constant(0.0, 1e-14, ValueSource::construction);
  f.expected["concircular_rho"] = constant(0.0, 1e-14, ValueSource::construction);
  f.vector_fields["X"] = f.vector_fields["constant"];
  f.constant_curvature = true;
  return f;
}

Fixture sphere(const FixtureParams& given) {
  ParamReader pr("sphere", given);
  const int n = pr.integer("n", 2, 2, 3);
  const double r = pr.number("r", 1.0);
  if (!(r > 0.0)) throw FixtureError("sphere: radius must be positive");
  auto params = pr.finish();
  const double r2 = r * r;
  MetricChart chart("sphere", n, std::vector<int>(static_cast<std::size_t>(n), 1),
                    [n, r2](Coordinates x) {
                      if (n == 2) {
                        const Jet s = sin(x[0]);
                        return diagonal_metric({Jet(r2), r2 * s * s});
                      }
                      const Jet s1 = sin(x[0]);
                      const Jet s2 = sin(x[1]);
                      return diagonal_metric({Jet(r2), r2 * s1 * s1, r2 * s1 * s1 * s2 * s2});
                    });
  std::vector<Vector> probes =
      n == 2 ? std::vector<Vector>{{0.7, 0.3}, {1.2, 2.0}, {2.0, -1.1}}
             : std::vector<Vector>{{0.8, 0.9, 0.2}, {1.3, 1.6, -0.7}, {2.2, 0.6, 1.9}};
  auto f = make_fixture("sphere", std::move(params), std::move(chart), std::move(probes));
  f.probe_check = [n](std::span<const double> p) {
    for (int k = 0; k < n - 1; ++k)
      if (std::abs(std::sin(p[k])) < 1e-3) throw FixtureError("sphere: probe too close to a pole");
  };
  f.expected["scalar_curvature"] = constant(n * (n - 1) / r2, 1e-9, ValueSource::closed_form);
  if (n == 2)
    f.expected["riemann_0101"] = {[r2](std::span<const double> p) {
                                    return r2 * std::sin(p[0]) * std::sin(p[0]);
                                  },
                                  1e-9, ValueSource::closed_form};
  f.expected["projective_ratio"] = constant(0.0, 1e-9, ValueSource::identity);
  f.constant_curvature = true;
  if (n == 3)
    f.compat_facts.push_back({"ricci_riemann_compat", "ricci", false, true, 1e-8, ValueSource::identity});
  return f;
}

Fixture constant_curvature(const FixtureParams& given) {
  ParamReader pr("constant_curvature", given);
  const int n = pr.integer("n", 4, 2, 6);
  const double k_scal = pr.number("k_scal", 1.0);
  const bool lorentzian = pr.text("signature", "lorentzian", {"lorentzian", "riemannian"}) == "lorentzian";
  auto params = pr.finish();
  const double k = k_scal / (n * (n - 1.0));
  const auto sig = signature_of(lorentzian, n);
  MetricChart chart("constant_curvature", n, sig, [sig, k](Coordinates x) {
    Jet q;
    for (std::size_t i = 0; i < x.size(); ++i) q += static_cast<double>(sig[i]) * (x[i] * x[i]);
    const Jet w = reciprocal(pow(1.0 + (k / 4.0) * q, 2));
    std::vector<Jet> d;
    for (std::size_t i = 0; i < x.size(); ++i) d.push_back(static_cast<double>(sig[i]) * w);
    return diagonal_metric(d);
  });
  auto f = make_fixture("constant_curvature", std::move(params), std::move(chart),
                        seeded_probes(19, n, 3, 0.4));
  f.expected["scalar_curvature"] = constant(k_scal, 1e-9, ValueSource::construction);
  f.expected["projective_ratio"] = constant(0.0, 1e-9, ValueSource::identity);
  if (n >= 3) f.expected["weyl_ratio"] = constant(0.0, 1e-9, ValueSource::identity);
  f.sym2_fields["polynomial"] = random_polynomial_sym2_field(23, n, 3);
  f.constant_curvature = true;
  f.compat_facts.push_back({"ricci_riemann_compat", "ricci", false, true, 1e-8, ValueSource::identity});
  return f;
}

Fixture robertson_walker(const FixtureParams& given) {
  ParamReader pr("robertson_walker", given);
  const std::string kind = pr.text("a", "t2", {"t2", "exp"});
  auto params = pr.finish();
  const auto sf = scale_factor(kind);
  MetricChart chart("robertson_walker", 4, {-1, 1, 1, 1}, [sf](Coordinates x) {
    const Jet a = sf.a(x[0]);
    const Jet a2 = a * a;
    return diagonal_metric({Jet(-1.0), a2, a2, a2});
  });
  auto f = make_fixture("robertson_walker", std::move(params), std::move(chart),
                        {{1.0, 0.1, -0.2, 0.3}, {1.5, -0.4, 0.2, 0.0}, {2.0, 0.5, 0.5, -0.5}});
  f.probe_check = [kind](std::span<const double> p) {
    if (kind == "t2" && std::abs(p[0]) < 1e-3) throw FixtureError("robertson_walker: a(t) vanishes");
  };
  f.vector_fields["X"] = [sf](Coordinates x) {
    return std::vector<Jet>{-sf.a(x[0]), Jet(0.0), Jet(0.0), Jet(0.0)};
  };
  f.sym2_fields["X_X"] = [sf](Coordinates x) {
    JetTensor2 b(4, Jet(0.0));
    const Jet a = sf.a(x[0]);
    b(0, 0) = a * a;
    return b;
  };
  f.sym2_fields["polynomial"] = random_polynomial_sym2_field(29, 4, 3);
  f.expected["concircular_rho"] = {[sf](std::span<const double> p) { return sf.a_dot(p[0]); }, 1e-9,
                                   ValueSource::closed_form};
  f.expected["weyl_ratio"] = constant(0.0, 1e-8, ValueSource::identity);
  f.expected["scalar_curvature"] = {[sf, kind](std::span<const double> p) {
                                      const double t = p[0];
                                      const double a = kind == "t2" ? t * t : std::exp(t);
                                      const double h = sf.a_dot(t) / a;
                                      return 6.0 * (sf.a_ddot(t) / a + h * h);
                                    },
                                    1e-9, ValueSource::closed_form};
  f.compat_facts.push_back({"concircular_square_compat", "X_X", false, true, 1e-7, ValueSource::identity});
  f.constant_curvature = kind == "exp";
  return f;
}

Fixture warped(const FixtureParams& given) {
  ParamReader pr("warped", given);
  const std::string kind = pr.text("f", "cosh", {"cosh", "t2", "exp"});
  const std::string spatial = pr.text("spatial", "constant_curvature", {"constant_curvature", "generic"});
  const int m = pr.integer("spatial_dim", 3, 2, 4);
  const double k = pr.number("spatial_k", 1.0);
  auto params = pr.finish();
  const int n = m + 1;
  const auto sf = scale_factor(kind);
  const bool generic = spatial == "generic";
  MetricChart chart("warped", n, signature_of(true, n), [sf, generic, k, m](Coordinates x) {
    const Jet a = sf.a(x[0]);
    const Jet a2 = a * a;
    std::vector<Jet> d{Jet(-1.0)};
    if (generic) {
      d.push_back(a2);
      for (int i = 1; i < m; ++i) d.push_back(a2 * (1.0 + x[i] * x[i]));
    } else {
      Jet q;
      for (int i = 1; i <= m; ++i) q += x[i] * x[i];
      const Jet w = a2 * reciprocal(pow(1.0 + (k / 4.0) * q, 2));
      for (int i = 1; i <= m; ++i) d.push_back(w);
    }
    return diagonal_metric(d);
  });
  std::vector<Vector> probes = {{0.8, 0.3, -0.2, 0.5, 0.1}, {1.2, -0.6, 0.4, 0.2, -0.3},
                                {0.5, 0.9, 0.7, -0.4, 0.6}};
  for (auto& p : probes) p.resize(static_cast<std::size_t>(n));
  auto f = make_fixture("warped", std::move(params), std::move(chart), std::move(probes));
  f.sym2_fields["polynomial"] = random_polynomial_sym2_field(31, n, 3);
  f.constant_curvature = !generic && ((kind == "cosh" && k == 1.0) || (kind == "exp" && k == 0.0));
  if (!generic || m == 3) {
    f.compat_facts.push_back({"warped_ricci_compat", "ricci", false, true, 1e-6, ValueSource::identity});
  } else {
    f.compat_facts.push_back({"warped_ricci_compat", "ricci", false, false, 1e-3, ValueSource::construction});
  }
  return f;
}

Fixture goedel(const FixtureParams& given) {
  ParamReader pr("goedel", given);
  const double omega = pr.number("omega", 1.0);
  if (!(omega > 0.0)) throw FixtureError("goedel: omega must be positive");
  auto params = pr.finish();
  const double a2 = 1.0 / (2.0 * omega * omega);
  const double a = std::sqrt(a2);
  MetricChart chart("goedel", 4, {-1, 1, 1, 1}, [a2](Coordinates x) {
    const Jet ex = exp(x[1]);
    JetTensor2 g(4, Jet(0.0));
    g(0, 0) = Jet(-a2);
    g(0, 3) = -a2 * ex;
    g(1, 1) = Jet(a2);
    g(2, 2) = Jet(a2);
    g(3, 3) = (-0.5 * a2) * ex * ex;
    return g;
  });
  auto f = make_fixture("goedel", std::move(params), std::move(chart),
                        {{0.0, 0.0, 0.0, 0.0}, {0.3, -0.5, 0.2, 0.7}, {-1.0, 0.8, -0.4, 0.1}});
  f.vector_fields["u"] = [a](Coordinates x) {
    return std::vector<Jet>{Jet(-a), Jet(0.0), Jet(0.0), -a * exp(x[1])};
  };
  f.sym2_fields["u_u"] = [a](Coordinates x) {
    const std::vector<Jet> u{Jet(-a), Jet(0.0), Jet(0.0), -a * exp(x[1])};
    JetTensor2 b(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) b(i, j) = u[i] * u[j];
    return b;
  };
  f.expected["scalar_curvature"] = constant(-1.0 / a2, 1e-9, ValueSource::closed_form);
  f.compat_facts.push_back({"ricci_weyl_compat", "ricci", true, true, 1e-6, ValueSource::identity});
  f.compat_facts.push_back({"observer_square_weyl_compat", "u_u", true, true, 1e-8, ValueSource::identity});
  return f;
}

Fixture schwarzschild(const FixtureParams& given) {
  ParamReader pr("schwarzschild", given);
  const double mass = pr.number("M", 1.0);
  if (!(mass > 0.0)) throw FixtureError("schwarzschild: M must be positive");
  auto params = pr.finish();
  MetricChart chart("schwarzschild", 4, {-1, 1, 1, 1}, [mass](Coordinates x) {
    const Jet f = 1.0 - (2.0 * mass) * reciprocal(x[1]);
    const Jet r2 = x[1] * x[1];
    const Jet s = sin(x[2]);
    return diagonal_metric({-f, reciprocal(f), r2, r2 * s * s});
  });
  auto f = make_fixture("schwarzschild", std::move(params), std::move(chart),
                        {{0.0, 3.0 * mass, 1.0, 0.2}, {1.0, 5.0 * mass, 1.3, -0.8},
                         {-0.5, 8.0 * mass, 2.1, 2.5}});
  f.probe_check = [mass](std::span<const double> p) {
    if (!(p[1] > 0.0)) throw FixtureError("schwarzschild: probe needs r > 0");
    if (std::abs(p[1] - 2.0 * mass) < 1e-6 * mass)
      throw FixtureError("schwarzschild: probe on the horizon r = 2M");
    if (p[1] < 2.0 * mass) throw FixtureError("schwarzschild: probe inside the horizon (no static observer)");
    if (std::abs(std::sin(p[2])) < 1e-3) throw FixtureError("schwarzschild: probe too close to the axis");
  };
  f.vector_fields["u"] = [mass](Coordinates x) {
    const Jet fr = 1.0 - (2.0 * mass) * reciprocal(x[1]);
    return std::vector<Jet>{-sqrt(fr), Jet(0.0), Jet(0.0), Jet(0.0)};
  };
  f.sym2_fields["u_u"] = [mass](Coordinates x) {
    JetTensor2 b(4, Jet(0.0));
    b(0, 0) = 1.0 - (2.0 * mass) * reciprocal(x[1]);
    return b;
  };
  f.sym2_fields["polynomial"] = random_polynomial_sym2_field(37, 4, 3);
  f.compat_facts.push_back({"observer_square_weyl_compat", "u_u", true, true, 1e-8, ValueSource::closed_form});
  f.expected["scalar_curvature"] = constant(0.0, 1e-9, ValueSource::closed_form);
  f.expected["ricci_ratio"] = constant(0.0, 1e-9, ValueSource::closed_form);
  f.expected["kretschmann"] = {[mass](std::span<const double> p) {
                                 return 48.0 * mass * mass / std::pow(p[1], 6);
                               },
                               1e-9, ValueSource::closed_form};
  return f;
}

Fixture twisted(const FixtureParams& given) {
  ParamReader pr("twisted", given);
  const double eps = pr.number("eps", 0.2);
  auto params = pr.finish();
  auto ff = [eps](Coordinates x) { return 1.0 + eps * (x[0] * x[1]); };
  MetricChart chart("twisted", 4, {-1, 1, 1, 1}, [ff](Coordinates x) {
    const Jet f = ff(x);
    const Jet f2 = f * f;
    return diagonal_metric({Jet(-1.0), f2, f2, f2});
  });
  auto f = make_fixture("twisted", std::move(params), std::move(chart),
                        {{0.5, 0.4, 0.1, -0.2}, {1.0, 0.8, -0.3, 0.4}, {1.5, 0.2, 0.6, 0.1}});
  f.probe_check = [eps](std::span<const double> p) {
    if (!(1.0 + eps * p[0] * p[1] > 1e-3)) throw FixtureError("twisted: warping function not positive");
  };
  f.vector_fields["tau"] = [ff](Coordinates x) {
    return std::vector<Jet>{-ff(x), Jet(0.0), Jet(0.0), Jet(0.0)};
  };
  f.sym2_fields["tau_tau"] = [ff](Coordinates x) {
    JetTensor2 b(4, Jet(0.0));
    const Jet v = ff(x);
    b(0, 0) = v * v;
    return b;
  };
  f.sym2_fields["polynomial"] = random_polynomial_sym2_field(41, 4, 3);
  f.expected["torqued_rho"] = {[eps](std::span<const double> p) { return eps * p[1]; }, 1e-9,
                               ValueSource::closed_form};
  f.compat_facts.push_back({"torqued_square_weyl_compat", "tau_tau", true, true, 1e-6, ValueSource::identity});
  return f;
}

Fixture perturbed_flat(const FixtureParams& given) {
  ParamReader pr("perturbed_flat", given);
  const auto seed = static_cast<std::uint64_t>(pr.integer("seed", 1, 0, std::numeric_limits<int>::max()));
  const double eps = pr.number("eps", 0.1);
  const int n = pr.integer("n", 4, 2, 5);
  const bool lorentzian = pr.text("signature", "lorentzian", {"lorentzian", "riemannian"}) == "lorentzian";
  auto params = pr.finish();
  auto f = make_fixture("perturbed_flat", std::move(params), perturbed_flat_chart(seed, n, eps, lorentzian),
                        seeded_probes(seed, n, 3, 0.3));
  f.sym2_fields["polynomial"] = random_polynomial_sym2_field(seed + 1000, n, 3);
  if (n == 3)
    f.compat_facts.push_back({"ricci_riemann_compat", "ricci", false, true, 1e-6, ValueSource::identity});
  return f;
}

void check_probe(const Fixture& f, std::span<const double> p) {
  if (static_cast<int>(p.size()) != f.chart.dim())
    throw FixtureError(f.id + ": probe has " + std::to_string(p.size()) + " coordinates, expected " +
                       std::to_string(f.chart.dim()));
  for (double v : p)
    if (!std::isfinite(v)) throw FixtureError(f.id + ": probe coordinate not finite");
  f.probe_check(p);
  try {
    f.chart.value_at(p);
  } catch (const Error& e) {
    throw FixtureError(f.id + ": singular probe: " + e.what());
  }
}

double kretschmann(const LocalGeometry& geom) {
  const Rank4 r = values_of(geom.riemann());
  const Matrix gi = values_of(geom.inverse_metric());
  Rank4 up = r;
  for (std::size_t s = 0; s < 4; ++s) up = contract_slot(up, s, gi);
  double acc = 0.0;
  for (std::size_t f = 0; f < r.size(); ++f) acc += r[f] * up[f];
  return acc;
}

double classified_rho(const Fixture& fx, const LocalGeometry& geom, const std::string& field,
                      VectorClass want) {
  const auto it = fx.vector_fields.find(field);
  if (it == fx.vector_fields.end()) return kNaN;
  const auto c = classify_vector_field(geom, geom.evaluate(it->second));
  return c.kind == want ? c.rho : kNaN;
}

}  // namespace

std::string_view to_string(ValueSource s) {
  switch (s) {
    case ValueSource::closed_form:
      return "closed_form";
    case ValueSource::identity:
      return "identity";
    case ValueSource::construction:
      return "construction";
  }
  return "closed_form";
}

std::vector<std::string> list_fixtures() {
  return {"euclidean",     "minkowski", "sphere",        "constant_curvature", "robertson_walker",
          "warped",        "goedel",    "schwarzschild", "twisted",            "perturbed_flat"};
}

Fixture get_fixture(std::string_view id, const FixtureParams& params) {
  Fixture f = [&]() -> Fixture {
    if (id == "euclidean") return flat("euclidean", params, false);
    if (id == "minkowski") return flat("minkowski", params, true);
    if (id == "sphere") return sphere(params);
    if (id == "constant_curvature") return constant_curvature(params);
    if (id == "robertson_walker") return robertson_walker(params);
    if (id == "warped") return warped(params);
    if (id == "goedel") return goedel(params);
    if (id == "schwarzschild") return schwarzschild(params);
    if (id == "twisted") return twisted(params);
    if (id == "perturbed_flat") return perturbed_flat(params);
    throw FixtureError("unknown fixture id '" + std::string(id) + "'");
  }();
  for (const auto& p : f.probes) check_probe(f, p);
  if (auto it = f.vector_fields.find("tau"); it != f.vector_fields.end()) {
    for (const auto& p : f.probes) {
      const LocalGeometry geom(f.chart, p, 2);
      if (classify_vector_field(geom, geom.evaluate(it->second)).kind != VectorClass::torqued) {
        f.unavailable["tau"] = "torqued fit does not converge at every probe";
        f.vector_fields.erase(it);
        f.expected.erase("torqued_rho");
        f.sym2_fields.erase("tau_tau");
        std::erase_if(f.compat_facts, [](const CompatFact& c) { return c.field == "tau_tau"; });
        break;
      }
    }
  }
  return f;
}

void set_probes(Fixture& fixture, std::vector<Vector> probes) {
  if (probes.empty()) throw FixtureError(fixture.id + ": empty probe list");
  for (const auto& p : probes) check_probe(fixture, p);
  fixture.probes = std::move(probes);
}

double measure(std::string_view name, const Fixture& fixture, const LocalGeometry& geom) {
  constexpr double floor = 1e-14;
  if (name == "scalar_curvature") return geom.scalar().value();
  if (name == "riemann_0101") return geom.riemann()(0, 1, 0, 1).value();
  if (name == "kretschmann") return kretschmann(geom);
  const double rn = norm(values_of(geom.riemann()));
  if (name == "riemann_norm") return rn;
  if (name == "ricci_ratio") return norm(values_of(geom.ricci())) / std::max(rn, floor);
  if (name == "weyl_ratio") return norm(values_of(geom.weyl())) / std::max(rn, floor);
  if (name == "projective_ratio") {
    const Rank4 rm = values_of(geom.riemann_mixed());
    return norm(projective_tensor(rm)) / std::max(norm(rm), floor);
  }
  if (name == "concircular_rho") return classified_rho(fixture, geom, "X", VectorClass::concircular);
  if (name == "torqued_rho") return classified_rho(fixture, geom, "tau", VectorClass::torqued);
  throw PreconditionError("unknown reference quantity '" + std::string(name) + "'");
}

Sym2Field random_polynomial_sym2_field(std::uint64_t seed, int n, int degree) {
  auto poly = seeded_polynomial(seed, n, degree, false, 1.0);
  return [poly](Coordinates x) { return poly->evaluate(x, nullptr, 1.0); };
}

MetricChart perturbed_flat_chart(std::uint64_t seed, int n, double eps, bool lorentzian) {
  auto poly = seeded_polynomial(seed, n, 4, true, 0.5);
  const auto sig = signature_of(lorentzian, n);
  return MetricChart("perturbed_flat", n, sig, [poly, sig, eps](Coordinates x) {
    JetTensor2 base(static_cast<int>(sig.size()), Jet(0.0));
    for (std::size_t i = 0; i < sig.size(); ++i)
      base(static_cast<int>(i), static_cast<int>(i)) = Jet(static_cast<double>(sig[i]));
    return poly->evaluate(x, &base, eps);
  });
}

}  // namespace curvcompat
