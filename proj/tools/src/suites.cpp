#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iostream>
#include <limits>

#include "curvcompat/compat.hpp"
#include "curvcompat/electric_weyl.hpp"
#include "curvcompat/identities.hpp"
#include "curvcompat/maps.hpp"

namespace curvcompat::cli::detail {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSanityTol = 1e-8;
constexpr double kDecomposeTol = 1e-8;
constexpr double kChristoffelFdTol = 1e-6;
constexpr double kWitnessThreshold = 1e-3;
constexpr int kUniversalTrials = 50;
constexpr int kGeodesicMaps = 5;
constexpr int kGeodesicFields = 20;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<int> signature(int n, bool lorentzian) {
  std::vector<int> s(static_cast<std::size_t>(n), 1);
  if (lorentzian) s[0] = -1;
  return s;
}

MetricValue metric(const RandomSpec& spec, int n, bool lorentzian) {
  const auto sig = signature(n, lorentzian);
  return random_metric(spec, Dim(n), sig);
}

Vector random_vector(const RandomSpec& spec, int n) {
  SeededGenerator gen(spec.seed);
  Vector v(static_cast<std::size_t>(n));
  for (auto& x : v) x = gen.uniform(-spec.scale, spec.scale);
  return v;
}

Vector raise_vector(const Vector& v, const MetricValue& g) { return matvec(g.inverse(), v); }

std::string dim_suffix(int n) { return "/n" + std::to_string(n); }

template <typename F>
double worst_over_trials(int trials, F&& f) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double r = f(t);
    if (!(r <= worst)) worst = r;  // NaN sticks
    if (std::isnan(worst)) break;
  }
  return worst;
}

Sym2 field_value(const LocalGeometry& geom, const Fixture& fx, const std::string& field) {
  if (field == "ricci") return Sym2(values_of(geom.ricci()), 1e-9);
  return Sym2(values_of(geom.evaluate(fx.sym2_fields.at(field))), 1e-9);
}

double fact_residual(const LocalGeometry& geom, const Fixture& fx, const CompatFact& fact,
                     const Tolerance& tol) {
  const auto pack = geom.pack();
  const Sym2 b = field_value(geom, fx, fact.field);
  const GCT& k = fact.weyl ? pack.weyl.value() : pack.riemann;
  return compat_defect(b, k, pack.metric, tol).residual;
}

}  // namespace

RandomSpec SuiteContext::spec(std::string_view salt, int trial) const {
  const std::uint64_t base = (seed_ * 0x9E3779B97F4A7C15ULL) ^ fnv1a(salt);
  return RandomSpec{base + static_cast<std::uint64_t>(trial), 1.0};
}

const LocalGeometry& SuiteContext::geometry(std::size_t f, std::size_t p) {
  auto& slot = geometries_[{f, p}];
  if (!slot) slot = std::make_unique<LocalGeometry>(fixtures_[f].chart, fixtures_[f].probes[p], 4);
  return *slot;
}

void SuiteContext::check(std::string check_id, std::string anchor, std::string fixture_id,
                         std::optional<Vector> point, double tolerance,
                         const std::function<double()>& residual, bool expected_fail) {
  check_at(std::move(check_id), std::move(anchor), std::move(fixture_id), tolerance,
           [&]() -> std::pair<double, std::optional<Vector>> { return {residual(), point}; },
           expected_fail);
}

void SuiteContext::check_at(
    std::string check_id, std::string anchor, std::string fixture_id, double tolerance,
    const std::function<std::pair<double, std::optional<Vector>>()>& residual, bool expected_fail) {
  CheckReport r;
  r.check_id = std::move(check_id);
  r.paper_anchor = std::move(anchor);
  r.fixture_id = std::move(fixture_id);
  r.tolerance = tolerance;
  r.expected_fail = expected_fail;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto [value, point] = residual();
    r.residual = value;
    r.point = std::move(point);
  } catch (const std::exception& e) {
    std::cerr << "curvcompat: " << r.check_id << " [" << r.fixture_id << "]: " << e.what() << '\n';
    r.residual = kNaN;
  }
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.pass = r.residual <= r.tolerance;
  reports_.push_back(std::move(r));
}

// ---------------------------------------------------------------------------

void algebra_core(SuiteContext& ctx) {
  const Tolerance& tol = ctx.tol();
  for (int n : {3, 4, 5}) {
    const std::string sfx = dim_suffix(n);

    std::string id = "algebra-core/gct_axioms" + sfx;
    ctx.check(id, "curvature tensor symmetries", "random", std::nullopt, ctx.strict(), [&] {
      return worst_over_trials(ctx.trials(), [&](int t) {
        return gct_residuals(random_gct(ctx.spec(id, t), Dim(n)).components()).max();
      });
    });

    id = "algebra-core/metric_compat" + sfx;
    ctx.check(id, "metric is K-compatible", "random", std::nullopt, ctx.strict(), [&] {
      return worst_over_trials(ctx.trials(), [&](int t) {
        const MetricValue g = metric(ctx.spec(id + "/g", t), n, t % 2 == 1);
        const GCT k1 = random_gct(ctx.spec(id + "/k", t), Dim(n));
        const GCT k2 = kulkarni_nomizu(random_sym2(ctx.spec(id + "/a", t), Dim(n)),
                                       random_sym2(ctx.spec(id + "/b", t), Dim(n)));
        return std::max(compat_defect(g.covariant(), k1, g, tol).residual,
                        compat_defect(g.covariant(), k2, g, tol).residual);
      });
    });

    id = "algebra-core/kulkarni_nomizu_gct" + sfx;
    ctx.check(id, "Kulkarni-Nomizu product", "random", std::nullopt, ctx.strict(), [&] {
      return worst_over_trials(ctx.trials(), [&](int t) {
        const GCT k = kulkarni_nomizu(random_sym2(ctx.spec(id + "/a", t), Dim(n)),
                                      random_sym2(ctx.spec(id + "/b", t), Dim(n)));
        return gct_residuals(k.components()).max();
      });
    });

    id = "algebra-core/weyl_traceless" + sfx;
    ctx.check(id, "Weyl part is traceless", "random", std::nullopt, tol.rel_algebra, [&] {
      return worst_over_trials(ctx.trials(), [&](int t) {
        const MetricValue g = metric(ctx.spec(id + "/g", t), n, t % 2 == 1);
        const GCT k = random_gct(ctx.spec(id + "/k", t), Dim(n));
        const GCT c = weyl_part(k, g);
        const double scale = std::max(norm(k.components()) * norm(g.inverse()), tol.floor);
        return norm(ricci_of(c, g).ricci.matrix()) / scale;
      });
    });

    id = "algebra-core/rank_one_ricci" + sfx;
    ctx.check(id, "compatible u (x) u gives a Ricci eigenvector", "random", std::nullopt,
              tol.rel_algebra, [&] {
                return worst_over_trials(ctx.trials(), [&](int t) {
                  const MetricValue g = metric(ctx.spec(id + "/g", t), n, false);
                  const Vector u = random_vector(ctx.spec(id + "/u", t), n);
                  SeededGenerator gen(ctx.spec(id + "/c", t).seed);
                  const double alpha = gen.uniform(0.5, 2.0);
                  const double beta = gen.uniform(0.5, 2.0);
                  const Sym2 b = alpha * g.covariant() + beta * Sym2::outer(u);
                  const auto rep = rank_one_ricci_check(u, kulkarni_nomizu(b, b), g, tol);
                  if (!rep.applicable) return kNaN;
                  return std::max(rep.compat_residual, rep.eigen_rejection);
                });
              });
  }
}

// ---------------------------------------------------------------------------

namespace {

struct CompatiblePair {
  MetricValue g;
  GCT k;
  Sym2 a;
  Sym2 b;
};

/// family "wedge": K = b wedge b, a = alpha g + beta b.
/// family "constant": constant-curvature K, a and b arbitrary.
CompatiblePair compatible_pair(const SuiteContext& ctx, std::string_view family, int n, int t) {
  const std::string salt = "jordan-closure/" + std::string(family) + dim_suffix(n);
  const MetricValue g = metric(ctx.spec(salt + "/g", t), n, t % 2 == 1);
  const Sym2 b = random_sym2(ctx.spec(salt + "/b", t), Dim(n));
  SeededGenerator gen(ctx.spec(salt + "/c", t).seed);
  if (family == "wedge") {
    const double alpha = gen.uniform(-2.0, 2.0);
    const double beta = gen.uniform(-2.0, 2.0);
    return {g, kulkarni_nomizu(b, b), alpha * g.covariant() + beta * b, b};
  }
  const double k_scal = gen.uniform(-3.0, 3.0);
  return {g, const_curvature_gct(k_scal, g), random_sym2(ctx.spec(salt + "/a", t), Dim(n)), b};
}

double construction_residual(const GctConstruction& c) {
  if (!c.gct) return kNaN;
  return gct_residuals(c.tensor).max();
}

}  // namespace

void jordan_closure(SuiteContext& ctx) {
  const Tolerance& tol = ctx.tol();
  const double t_alg = tol.rel_algebra;
  using PairCheck = std::function<double(const CompatiblePair&)>;
  const std::vector<std::tuple<std::string, std::string, PairCheck>> checks = {
      {"pair_compat", "compatible pair",
       [&](const CompatiblePair& p) {
         return std::max(compat_defect(p.a, p.k, p.g, tol).residual,
                         compat_defect(p.b, p.k, p.g, tol).residual);
       }},
      {"jordan_product", "Jordan product of compatible tensors",
       [&](const CompatiblePair& p) {
         return compat_defect(jordan_product(p.a, p.b, p.g), p.k, p.g, tol).residual;
       }},
      {"powers", "powers of a compatible tensor",
       [&](const CompatiblePair& p) {
         const Sym2 b2 = jordan_product(p.b, p.b, p.g);
         const Sym2 b3 = jordan_product(b2, p.b, p.g);
         return std::max(compat_defect(b2, p.k, p.g, tol).residual,
                         compat_defect(b3, p.k, p.g, tol).residual);
       }},
      {"inverse", "inverse of a compatible tensor",
       [&](const CompatiblePair& p) {
         return inverse_compat_defect(p.b, p.k, p.g, tol).defect.residual;
       }},
      {"veblen", "Veblen-type identity",
       [&](const CompatiblePair& p) { return veblen_defect(p.b, p.k, p.g, tol).residual; }},
      {"kprime_gct", "K' is a generalized curvature tensor",
       [&](const CompatiblePair& p) {
         return construction_residual(kprime_gct(p.b, p.k, p.g, tol));
       }},
      {"ring_gct", "ring product is a generalized curvature tensor",
       [&](const CompatiblePair& p) {
         return construction_residual(ring_gct(p.a, p.b, p.k, p.g, tol));
       }},
  };
  for (const std::string family : {"wedge", "constant"})
    for (int n : {3, 4, 5})
      for (const auto& [name, anchor, fn] : checks) {
        ctx.check("jordan-closure/" + name + "/" + family + dim_suffix(n), anchor, "random",
                  std::nullopt, t_alg, [&] {
                    return worst_over_trials(ctx.trials(), [&](int t) {
                      return fn(compatible_pair(ctx, family, n, t));
                    });
                  });
      }
}

// ---------------------------------------------------------------------------

namespace {

/// Mixed eigenvalues `lambda` realized by a diagonal b under a diagonal metric.
Sym2 diagonal_with_eigenvalues(const Vector& lambda, const MetricValue& g) {
  Vector d(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i)
    d[i] = lambda[i] * g.covariant()(static_cast<int>(i), static_cast<int>(i));
  return Sym2::diagonal(d);
}

Vector distinct_values(SeededGenerator& gen, int count, double gap) {
  Vector out;
  while (static_cast<int>(out.size()) < count) {
    const double v = gen.uniform(-2.0, 2.0);
    if (std::all_of(out.begin(), out.end(), [&](double w) { return std::abs(v - w) > gap; }))
      out.push_back(v);
  }
  return out;
}

double ds_residual(const Sym2& b, const MetricValue& g, const Tolerance& tol) {
  const auto rep = derdzinski_shen_check(b, kulkarni_nomizu(b, b), g, tol);
  if (!rep.applicable || rep.triples.empty()) return kNaN;
  return rep.max_contraction;
}

}  // namespace

void derdzinski_shen(SuiteContext& ctx) {
  const Tolerance& tol = ctx.tol();
  const int n = 4;
  const std::string anchor = "eigenvector triples of a compatible tensor";

  std::string id = "derdzinski-shen/diagonal/n4";
  ctx.check(id, anchor, "random", std::nullopt, ctx.strict(), [&] {
    return worst_over_trials(ctx.trials(), [&](int t) {
      const MetricValue g = t % 2 == 1 ? MetricValue::minkowski(n) : MetricValue::euclidean(n);
      SeededGenerator gen(ctx.spec(id, t).seed);
      return ds_residual(diagonal_with_eigenvalues(distinct_values(gen, n, 0.1), g), g, tol);
    });
  });

  id = "derdzinski-shen/degenerate/n4";
  ctx.check(id, anchor, "random", std::nullopt, ctx.strict(), [&] {
    return worst_over_trials(ctx.trials(), [&](int t) {
      const MetricValue g = t % 2 == 1 ? MetricValue::minkowski(n) : MetricValue::euclidean(n);
      SeededGenerator gen(ctx.spec(id, t).seed);
      const Vector v = distinct_values(gen, 3, 0.1);
      return ds_residual(diagonal_with_eigenvalues({v[0], v[0], v[1], v[2]}, g), g, tol);
    });
  });

  id = "derdzinski-shen/general/n4";
  ctx.check(id, anchor, "random", std::nullopt, tol.rel_algebra, [&] {
    return worst_over_trials(ctx.trials(), [&](int t) {
      const MetricValue g = metric(ctx.spec(id + "/g", t), n, false);
      return ds_residual(random_sym2(ctx.spec(id + "/b", t), Dim(n)), g, tol);
    });
  });

  id = "derdzinski-shen/vandermonde";
  ctx.check(id, "Vandermonde determinant", "random", std::nullopt, ctx.strict(), [&] {
    return worst_over_trials(ctx.trials(), [&](int t) {
      SeededGenerator gen(ctx.spec(id, t).seed);
      const double x = gen.uniform(-2, 2), y = gen.uniform(-2, 2), z = gen.uniform(-2, 2);
      const double exact = (y - x) * (z - x) * (z - y);
      const double scale = std::pow(std::max({1.0, std::abs(x), std::abs(y), std::abs(z)}), 3);
      return std::abs(vandermonde_determinant(x, y, z) - exact) / scale;
    });
  });
}

// ---------------------------------------------------------------------------

namespace {

template <typename F>
void for_each_probe(SuiteContext& ctx, F&& f) {
  for (std::size_t fi = 0; fi < ctx.fixtures().size(); ++fi)
    for (std::size_t pi = 0; pi < ctx.fixtures()[fi].probes.size(); ++pi) f(fi, pi);
}

}  // namespace

void lovelock(SuiteContext& ctx) {
  const Tolerance& tol = ctx.tol();
  for_each_probe(ctx, [&](std::size_t fi, std::size_t pi) {
    const Fixture& fx = ctx.fixtures()[fi];
    const Vector& point = fx.probes[pi];
    const int n = fx.chart.dim();
    std::vector<IdentityKind> kinds = {IdentityKind::lovelock_riemann};
    if (n >= 4) kinds.push_back(IdentityKind::lovelock_weyl);
    if (n == 4) kinds.push_back(IdentityKind::lovelock_4d);
    for (IdentityKind kind : kinds) {
      const std::string name(to_string(kind));
      ctx.check("lovelock/" + name, name, fx.id, point, identity_tolerance(kind, tol), [&] {
        return identity_defect(kind, ctx.geometry(fi, pi), nullptr, tol).residual;
      });
    }
    ctx.check("lovelock/codazzi_ricci", "Codazzi deviation of the Ricci tensor", fx.id, point,
              tol.rel_geometry,
              [&] { return codazzi_ricci_residual(ctx.geometry(fi, pi), tol); });
    if (n >= 4)
      ctx.check("lovelock/weyl_divergence", "divergence of the Weyl tensor", fx.id, point,
                10.0 * tol.rel_geometry,
                [&] { return weyl_divergence_residual(ctx.geometry(fi, pi), tol); });
  });
}

// ---------------------------------------------------------------------------

void weyl_identities(SuiteContext& ctx) {
  const Tolerance& tol = ctx.tol();
  for (std::size_t fi = 0; fi < ctx.fixtures().size(); ++fi) {
    const Fixture& fx = ctx.fixtures()[fi];
    const int n = fx.chart.dim();
    for (std::size_t pi = 0; pi < fx.probes.size(); ++pi) {
      const Vector& point = fx.probes[pi];
      for (const auto& [field_name, field] : fx.sym2_fields) {
        std::vector<IdentityKind> kinds = {IdentityKind::cyclic_deviation,
                                           IdentityKind::veblen_deviation};
        if (n >= 3) {
          kinds.push_back(IdentityKind::rc);
          kinds.push_back(IdentityKind::ccodd);
        }
        for (IdentityKind kind : kinds) {
          const std::string name(to_string(kind));
          ctx.check("weyl-identities/" + name + "/" + field_name, name, fx.id, point,
                    identity_tolerance(kind, tol), [&] {
                      return identity_defect(kind, ctx.geometry(fi, pi), &field, tol).residual;
                    });
        }
        ctx.check("weyl-identities/ricci_identity/" + field_name, "Ricci identity", fx.id, point,
                  tol.rel_geometry, [&] {
                    const auto& geom = ctx.geometry(fi, pi);
                    return ricci_identity_residual(geom, geom.evaluate(field), tol);
                  });
      }

      for (const CompatFact& fact : fx.compat_facts) {
        if (!fact.holds) continue;
        ctx.check("weyl-identities/" + fact.name, fact.name, fx.id, point, fact.threshold,
                  [&] { return fact_residual(ctx.geometry(fi, pi), fx, fact, tol); });
      }

      if (n == 4 && fx.vector_fields.contains("u")) {
        const auto electric = [&] {
          const auto& geom = ctx.geometry(fi, pi);
          const auto pack = geom.pack();
          Vector u_down;
          for (const Jet& c : geom.evaluate(fx.vector_fields.at("u"))) u_down.push_back(c.value());
          const Vector u = raise_vector(u_down, pack.metric);
          return electric_reconstruction_check(pack.weyl.value(), u, pack.metric, tol);
        };
        ctx.check("weyl-identities/electric_precondition", "observer square is Weyl compatible",
                  fx.id, point, kElectricPreconditionTol,
                  [&] { return electric().precondition_residual; });
        ctx.check("weyl-identities/electric_reconstruction",
                  "Weyl tensor from its electric part", fx.id, point, tol.rel_geometry,
                  [&] { return electric().reconstruction_error; });
      }
    }

    for (const CompatFact& fact : fx.compat_facts) {
      if (fact.holds) continue;
      ctx.check_at("weyl-identities/" + fact.name, fact.name + " (negative witness)", fx.id,
                   fact.threshold,
                   [&]() -> std::pair<double, std::optional<Vector>> {
                     double worst = -1.0;
                     std::optional<Vector> where;
                     for (std::size_t pi = 0; pi < fx.probes.size(); ++pi) {
                       const double r = fact_residual(ctx.geometry(fi, pi), fx, fact, tol);
                       if (r > worst) {
                         worst = r;
                         where = fx.probes[pi];
                       }
                     }
                     return {worst, where};
                   },
                   true);
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

struct GeodesicCase {
  Rank4 riemann_mixed;
  GeodesicTransform transform;
};

GeodesicCase geodesic_case(const SuiteContext& ctx, const std::string& salt, int t,
                           const Rank4& riemann_mixed) {
  const int n = riemann_mixed.dim();
  const Vector x = random_vector(ctx.spec(salt + "/x", t), n);
  const Matrix dx = random_sym2(ctx.spec(salt + "/dx", t), Dim(n)).matrix();
  return {riemann_mixed, geodesic_transform(riemann_mixed, x, dx, ctx.tol())};
}

template <typename Select>
double geodesic_worst(const SuiteContext& ctx, const std::string& salt, const GeodesicCase& c,
                      int t, Select select) {
  const int n = c.riemann_mixed.dim();
  double worst = 0.0;
  for (int s = 0; s < kGeodesicFields; ++s) {
    const Sym2 b = random_sym2(ctx.spec(salt + "/b/" + std::to_string(t), s), Dim(n));
    worst = std::max(worst, select(geodesic_map_check(c.riemann_mixed, c.transform, b, ctx.tol())));
  }
  return worst;
}

Rank4 mixed_weyl(const LocalGeometry& geom) {
  const auto pack = geom.pack();
  return raise_last(pack.weyl.value().components(), pack.metric);
}

}  // namespace

void maps(SuiteContext& ctx) {
  const Tolerance& tol = ctx.tol();
  const auto compat_sum = [](const GeodesicMapCheck& c) { return c.compat_sum_residual; };
  const auto projective = [](const GeodesicMapCheck& c) { return c.projective_residual; };
  const std::string compat_anchor = "geodesic map preserves the compatibility sum";
  const std::string projective_anchor = "geodesic map preserves the projective tensor";

  for (int n : {3, 4, 5}) {
    const std::string id = "maps/geodesic_random" + dim_suffix(n);
    const auto make = [&](int t) {
      const MetricValue g = metric(ctx.spec(id + "/g", t), n, t % 2 == 1);
      const GCT k = random_gct(ctx.spec(id + "/k", t), Dim(n));
      return geodesic_case(ctx, id, t, raise_last(k.components(), g));
    };
    ctx.check(id + "/compat_sum", compat_anchor, "random", std::nullopt, tol.rel_algebra, [&] {
      return worst_over_trials(kGeodesicMaps,
                               [&](int t) { return geodesic_worst(ctx, id, make(t), t, compat_sum); });
    });
    ctx.check(id + "/projective", projective_anchor, "random", std::nullopt,
              10.0 * tol.rel_algebra, [&] {
                return worst_over_trials(kGeodesicMaps, [&](int t) {
                  return geodesic_worst(ctx, id, make(t), t, projective);
                });
              });

    const std::string flat_id = "maps/geodesic_flat_to_constant" + dim_suffix(n);
    ctx.check(flat_id, "geodesic image of a flat connection", "random", std::nullopt,
              ctx.strict(), [&] {
                return worst_over_trials(ctx.trials(), [&](int t) {
                  const MetricValue g = metric(ctx.spec(flat_id, t), n, t % 2 == 1);
                  const Vector zero(static_cast<std::size_t>(n), 0.0);
                  const auto tr = geodesic_transform(Rank4(n, 0.0), zero,
                                                     g.covariant().matrix(), tol);
                  const GCT k = GCT::checked(lower_last(tr.riemann_mixed, g), 1e-10);
                  const auto cc = const_curv_decompose(k, g, tol);
                  const double expected = -static_cast<double>(n * (n - 1));
                  return std::max(cc.residual, std::abs(cc.k_scal - expected) / -expected);
                });
              });
  }

  for_each_probe(ctx, [&](std::size_t fi, std::size_t pi) {
    const Fixture& fx = ctx.fixtures()[fi];
    const Vector& point = fx.probes[pi];
    const std::string id = "maps/geodesic_fixture";
    const std::string salt = id + "/" + fx.id + "/" + std::to_string(pi);
    const auto make = [&] {
      return geodesic_case(ctx, salt, 0, values_of(ctx.geometry(fi, pi).riemann_mixed()));
    };
    ctx.check(id + "/compat_sum", compat_anchor, fx.id, point, tol.rel_algebra,
              [&] { return geodesic_worst(ctx, salt, make(), 0, compat_sum); });
    ctx.check(id + "/projective", projective_anchor, fx.id, point, 10.0 * tol.rel_algebra,
              [&] { return geodesic_worst(ctx, salt, make(), 0, projective); });

    if (fx.chart.dim() < 4) return;
    const ScalarField sigma = [](Coordinates x) { return 0.1 * x[1] + 0.05 * (x[0] * x[1]); };
    const auto conformal = [&] {
      const auto& geom = ctx.geometry(fi, pi);
      const LocalGeometry hat(conformal_transform(fx.chart, sigma), point, 2);
      const double scale = std::max({norm(values_of(geom.riemann_mixed())),
                                     norm(values_of(hat.riemann_mixed())), tol.floor});
      return std::tuple{mixed_weyl(geom), mixed_weyl(hat), scale};
    };
    ctx.check("maps/conformal_weyl", "conformal invariance of the mixed Weyl tensor", fx.id,
              point, tol.rel_geometry, [&] {
                const auto [c, c_hat, scale] = conformal();
                return norm(c_hat - c) / scale;
              });
    if (fx.sym2_fields.contains("polynomial"))
      ctx.check("maps/conformal_weyl_compat", "conformal invariance of Weyl compatibility",
                fx.id, point, tol.rel_geometry, [&] {
                  const auto [c, c_hat, scale] = conformal();
                  const Sym2 b = field_value(ctx.geometry(fi, pi), fx, "polynomial");
                  const Rank4 d = compat_sum_mixed(b, c_hat) - compat_sum_mixed(b, c);
                  return norm(d) / std::max(norm(b.matrix()) * scale, tol.floor);
                });
  });
}

// ---------------------------------------------------------------------------

namespace {

/// Christoffel symbols from central differences of the metric values.
double christoffel_fd_residual(const Fixture& fx, const Vector& point, const LocalGeometry& geom,
                               const Tolerance& tol) {
  const int n = fx.chart.dim();
  std::vector<Matrix> dg;
  for (int p = 0; p < n; ++p) {
    const double h = 1e-5 * std::max(1.0, std::abs(point[p]));
    Vector plus = point, minus = point;
    plus[p] += h;
    minus[p] -= h;
    dg.push_back((1.0 / (2.0 * h)) *
                 (fx.chart.value_at(plus).covariant().matrix() -
                  fx.chart.value_at(minus).covariant().matrix()));
  }
  const MetricValue g = fx.chart.value_at(point);
  Rank3 gamma(n, 0.0);
  double dg_norm = 0.0;
  for (const auto& d : dg) dg_norm += norm(d) * norm(d);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double acc = 0.0;
        for (int p = 0; p < n; ++p)
          acc += g.inverse()(m, p) * (dg[k](p, l) + dg[l](p, k) - dg[p](k, l));
        gamma(m, k, l) = 0.5 * acc;
      }
  const Rank3 jet = values_of(geom.christoffel());
  const double scale = std::max(norm(g.inverse()) * std::sqrt(dg_norm), tol.floor);
  return norm(jet - gamma) / scale;
}

}  // namespace

void catalog_sanity(SuiteContext& ctx) {
  const Tolerance& tol = ctx.tol();
  for_each_probe(ctx, [&](std::size_t fi, std::size_t pi) {
    const Fixture& fx = ctx.fixtures()[fi];
    const Vector& point = fx.probes[pi];
    ctx.check("catalog-sanity/sanity", "curvature symmetries, metricity and traces", fx.id, point,
              kSanityTol, [&] { return sanity_check(ctx.geometry(fi, pi), tol).max(); });
    ctx.check("catalog-sanity/christoffel_fd", "Christoffel symbols", fx.id, point,
              kChristoffelFdTol,
              [&] { return christoffel_fd_residual(fx, point, ctx.geometry(fi, pi), tol); });
    for (const auto& [name, ev] : fx.expected) {
      ctx.check("catalog-sanity/" + name, "reference value (" + std::string(to_string(ev.source)) + ")",
                fx.id, point, ev.tolerance, [&] {
                  const double expected = ev.at(point);
                  const double measured = measure(name, fx, ctx.geometry(fi, pi));
                  return std::abs(measured - expected) / std::max(1.0, std::abs(expected));
                });
    }
  });
}

// ---------------------------------------------------------------------------

void constant_curvature(SuiteContext& ctx) {
  const Tolerance& tol = ctx.tol();
  const std::string anchor = "constant curvature iff every symmetric tensor is compatible";
  for (std::size_t fi = 0; fi < ctx.fixtures().size(); ++fi) {
    const Fixture& fx = ctx.fixtures()[fi];
    const auto universal = [&](std::size_t pi) {
      const auto pack = ctx.geometry(fi, pi).pack();
      const RandomSpec spec = ctx.spec("constant-curvature/" + fx.id + "/" + std::to_string(pi), 0);
      return universal_compat_test(pack.riemann, pack.metric, kUniversalTrials, spec, tol)
          .max_residual;
    };
    if (fx.constant_curvature) {
      for (std::size_t pi = 0; pi < fx.probes.size(); ++pi) {
        const Vector& point = fx.probes[pi];
        ctx.check("constant-curvature/decompose", "constant-curvature form", fx.id, point,
                  kDecomposeTol, [&] {
                    const auto pack = ctx.geometry(fi, pi).pack();
                    return const_curv_decompose(pack.riemann, pack.metric, tol).residual;
                  });
        ctx.check("constant-curvature/universal_compat", anchor, fx.id, point, ctx.strict(),
                  [&] { return universal(pi); });
      }
    } else if (fx.chart.dim() >= 3) {
      ctx.check_at("constant-curvature/universal_compat", anchor + " (negative witness)", fx.id,
                   kWitnessThreshold,
                   [&]() -> std::pair<double, std::optional<Vector>> {
                     double worst = -1.0;
                     std::optional<Vector> where;
                     for (std::size_t pi = 0; pi < fx.probes.size(); ++pi) {
                       const double r = universal(pi);
                       if (r > worst) {
                         worst = r;
                         where = fx.probes[pi];
                       }
                     }
                     return {worst, where};
                   },
                   true);
    }
  }
}

}  // namespace curvcompat::cli::detail
