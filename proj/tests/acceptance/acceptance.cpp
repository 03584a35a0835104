// Acceptance run: one line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "curvcompat/catalog.hpp"
#include "curvcompat/compat.hpp"
#include "curvcompat/electric_weyl.hpp"
#include "curvcompat/identities.hpp"
#include "curvcompat/maps.hpp"
#include "curvcompat/random.hpp"
#include "curvcompat/runner.hpp"
#include "oracles.hpp"

namespace cc = curvcompat;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Outcome bound(double worst, double tol, const char* what) {
  return {worst <= tol, std::string(what) + " " + num(worst) + " <= " + num(tol)};
}

Outcome exceeds(double worst, double threshold, const char* what) {
  return {worst > threshold, std::string(what) + " " + num(worst) + " > " + num(threshold)};
}

Outcome both(const Outcome& a, const Outcome& b) { return {a.pass && b.pass, a.detail + "; " + b.detail}; }

void track(double& worst, double v) {
  if (!(v <= worst)) worst = v;
}

std::vector<int> sig(int n, bool lorentzian) {
  std::vector<int> s(static_cast<std::size_t>(n), 1);
  if (lorentzian) s[0] = -1;
  return s;
}

cc::MetricValue metric(std::uint64_t seed, int n, bool lorentzian) {
  const auto s = sig(n, lorentzian);
  return cc::random_metric({seed}, cc::Dim(n), s);
}

/// Relative defect of the curvature symmetries, computed by plain loops.
double symmetry_defect(const cc::Rank4& k) {
  const int n = k.dim();
  double a = 0, b = 0, c = 0, d = 0;
  for (int j = 0; j < n; ++j)
    for (int kk = 0; kk < n; ++kk)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          const double v = k(j, kk, l, m);
          a = std::max(a, std::abs(v + k(kk, j, l, m)));
          b = std::max(b, std::abs(v + k(j, kk, m, l)));
          c = std::max(c, std::abs(v + k(kk, l, j, m) + k(l, j, kk, m)));
          d = std::max(d, std::abs(v + k(j, l, m, kk) + k(j, m, kk, l)));
        }
  double scale = 0;
  for (double v : k.values()) scale = std::max(scale, std::abs(v));
  return std::max({a, b, c, d}) / std::max(scale, 1e-300);
}

double compat_oracle(const cc::Sym2& b, const cc::GCT& k, const cc::MetricValue& g) {
  const cc::Rank4 d = oracle::compat_defect(b.matrix(), k.components(), g.covariant().matrix());
  return cc::norm(d) / (cc::norm(b.matrix()) * cc::norm(k.components()));
}

// --- 1 ---------------------------------------------------------------------
Outcome gct_axioms() {
  double worst = 0;
  for (int n : {3, 4, 5})
    for (std::uint64_t s = 0; s < 100; ++s)
      track(worst, symmetry_defect(cc::random_gct({1000 * n + s}, cc::Dim(n)).components()));
  return bound(worst, 1e-12, "300 random tensors, max symmetry defect");
}

// --- 2 ---------------------------------------------------------------------
Outcome metric_compatibility() {
  double worst = 0;
  for (int n : {3, 4, 5})
    for (std::uint64_t s = 0; s < 100; ++s) {
      const auto g = metric(s, n, s % 2 == 0);
      track(worst, compat_oracle(g.covariant(), cc::random_gct({1000 * n + s}, cc::Dim(n)), g));
      const auto a = cc::random_sym2({s + 5000}, cc::Dim(n));
      const auto b = cc::random_sym2({s + 6000}, cc::Dim(n));
      track(worst, compat_oracle(g.covariant(), cc::kulkarni_nomizu(a, b), g));
      track(worst, compat_oracle(g.covariant(), cc::const_curvature_gct(1.5, g), g));
    }
  return bound(worst, 1e-12, "metric compat residual");
}

// --- 3, 5 ------------------------------------------------------------------
struct Pair {
  cc::MetricValue g;
  cc::GCT k;
  cc::Sym2 a, b;
};

std::vector<Pair> pair_ensemble() {
  std::vector<Pair> out;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 3 + static_cast<int>(s % 3);
    const auto g = metric(s + 100, n, s % 2 == 1);
    const auto b = cc::random_sym2({s + 200}, cc::Dim(n));
    cc::SeededGenerator gen(s + 300);
    const double alpha = gen.uniform(-2, 2), beta = gen.uniform(-2, 2);
    out.push_back({g, cc::kulkarni_nomizu(b, b), alpha * g.covariant() + beta * b, b});
    const double k_scal = gen.uniform(-3, 3);
    out.push_back({g, cc::const_curvature_gct(k_scal, g), cc::random_sym2({s + 400}, cc::Dim(n)), b});
  }
  return out;
}

Outcome jordan_closure() {
  double jordan = 0, powers = 0;
  for (const auto& p : pair_ensemble()) {
    track(jordan, compat_oracle(cc::jordan_product(p.a, p.b, p.g), p.k, p.g));
    const auto b2 = cc::jordan_product(p.b, p.b, p.g);
    track(powers, compat_oracle(b2, p.k, p.g));
    track(powers, compat_oracle(cc::jordan_product(b2, p.b, p.g), p.k, p.g));
  }
  return both(bound(jordan, 1e-10, "a.b compat"), bound(powers, 1e-10, "b^2, b^3 compat"));
}

Outcome constructions() {
  double inv = 0, veb = 0, kp = 0, ring = 0;
  for (const auto& p : pair_ensemble()) {
    const auto ic = cc::inverse_compat_defect(p.b, p.k, p.g);
    track(inv, compat_oracle(ic.inverse, p.k, p.g));
    track(veb, cc::veblen_defect(p.b, p.k, p.g).residual);
    const auto k1 = cc::kprime_gct(p.b, p.k, p.g);
    track(kp, k1.gct ? symmetry_defect(k1.tensor) : NAN);
    const auto k2 = cc::ring_gct(p.a, p.b, p.k, p.g);
    track(ring, k2.gct ? symmetry_defect(k2.tensor) : NAN);
  }
  return both(both(bound(inv, 1e-10, "inverse"), bound(veb, 1e-10, "Veblen")),
              both(bound(kp, 1e-10, "K' symmetries"), bound(ring, 1e-10, "ring symmetries")));
}

// --- 4 ---------------------------------------------------------------------
Outcome derdzinski_shen() {
  double worst = 0;
  int triples = 0;
  const auto run = [&](const std::vector<double>& lambda, const cc::MetricValue& g) {
    std::vector<double> d(lambda.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = lambda[i] * g.covariant()(static_cast<int>(i), static_cast<int>(i));
    const auto b = cc::Sym2::diagonal(d);
    const auto rep = cc::derdzinski_shen_check(b, cc::kulkarni_nomizu(b, b), g);
    if (!rep.applicable || rep.triples.empty()) {
      track(worst, NAN);
      return;
    }
    triples += static_cast<int>(rep.triples.size());
    track(worst, rep.max_contraction);
  };
  for (std::uint64_t s = 0; s < 100; ++s) {
    cc::SeededGenerator gen(s + 700);
    std::vector<double> l;
    while (l.size() < 4) {
      const double v = gen.uniform(-2, 2);
      if (std::all_of(l.begin(), l.end(), [&](double w) { return std::abs(v - w) > 0.1; })) l.push_back(v);
    }
    const auto g = s % 2 ? cc::MetricValue::minkowski(4) : cc::MetricValue::euclidean(4);
    run(l, g);
    run({l[0], l[0], l[1], l[2]}, g);
  }
  auto o = bound(worst, 1e-12, "max triple contraction");
  o.detail += " over " + std::to_string(triples) + " triples";
  return o;
}

// --- 6 ---------------------------------------------------------------------
Outcome constant_curvature() {
  double positive = 0;
  for (const auto& id : cc::list_fixtures()) {
    const auto fx = cc::get_fixture(id);
    if (!fx.constant_curvature) continue;
    for (const auto& p : fx.probes) {
      const auto pack = cc::riemann(fx.chart, p);
      track(positive, cc::universal_compat_test(pack.riemann, pack.metric, 50, {17}).max_residual);
    }
  }
  const auto sw = cc::get_fixture("schwarzschild");
  double witness = 0;
  for (const auto& p : sw.probes) {
    const auto pack = cc::riemann(sw.chart, p);
    track(witness, cc::universal_compat_test(pack.riemann, pack.metric, 50, {17}).max_residual);
  }
  return both(bound(positive, 1e-12, "constant-curvature fixtures"),
              exceeds(witness, 1e-3, "Schwarzschild witness"));
}

// --- 7 ---------------------------------------------------------------------
Outcome three_dimensional_ricci() {
  double worst = 0;
  int probes = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    const auto fx = cc::get_fixture("perturbed_flat", {{"seed", double(seed)}, {"n", 3.0}, {"eps", 0.2}});
    for (const auto& p : fx.probes) {
      const auto pack = cc::riemann(fx.chart, p);
      track(worst, cc::compat_defect(pack.ricci, pack.riemann, pack.metric).residual);
      ++probes;
    }
  }
  auto o = bound(worst, 1e-6, "Ricci-Riemann compat");
  o.detail += " at " + std::to_string(probes) + " probes";
  return o;
}

// --- 8 ---------------------------------------------------------------------
Outcome lovelock() {
  double riemann = 0, weyl = 0, four = 0;
  for (const auto* id : {"perturbed_flat", "schwarzschild"}) {
    const auto fx = cc::get_fixture(id);
    for (const auto& p : fx.probes) {
      const cc::LocalGeometry geom(fx.chart, p, 4);
      track(riemann, cc::identity_defect(cc::IdentityKind::lovelock_riemann, geom).residual);
      track(weyl, cc::identity_defect(cc::IdentityKind::lovelock_weyl, geom).residual);
      track(four, cc::identity_defect(cc::IdentityKind::lovelock_4d, geom).residual);
    }
  }
  return both(both(bound(riemann, 1e-6, "Riemann form"), bound(weyl, 1e-6, "Weyl form")),
              bound(four, 1e-7, "nine-term 4D"));
}

// --- 9 ---------------------------------------------------------------------
Outcome deviation_identities() {
  using K = cc::IdentityKind;
  double worst = 0;
  const std::vector<cc::MetricChart> charts = {cc::perturbed_flat_chart(11, 4, 0.1, true),
                                               cc::get_fixture("schwarzschild").chart};
  const std::vector<std::vector<double>> points = {{0.1, -0.2, 0.3, 0.05}, {0.5, 4.0, 1.1, 0.4}};
  for (std::size_t c = 0; c < charts.size(); ++c) {
    const cc::LocalGeometry geom(charts[c], points[c], 4);
    for (std::uint64_t s = 0; s < 3; ++s) {
      const auto field = cc::random_polynomial_sym2_field(900 + s, 4, 3);
      for (K k : {K::cyclic_deviation, K::veblen_deviation, K::rc, K::ccodd})
        track(worst, cc::identity_defect(k, geom, &field).residual);
    }
  }
  return bound(worst, 1e-6, "cyclic, Veblen, RC, CCodD");
}

// --- 10 --------------------------------------------------------------------
Outcome electric_weyl() {
  double recon = 0, pre = 0;
  const auto fx = cc::get_fixture("schwarzschild");
  for (const auto& p : fx.probes) {
    const auto pack = cc::riemann(fx.chart, p);
    const double f = 1.0 - 2.0 / p[1];
    const std::vector<double> u = {1.0 / std::sqrt(f), 0.0, 0.0, 0.0};
    const auto& c = pack.weyl.value();
    const auto e = cc::electric_weyl(c, u, pack.metric);
    const auto rebuilt = cc::weyl_from_electric(e, u, pack.metric);
    double cmax = 0, dmax = 0;
    for (std::size_t i = 0; i < c.components().size(); ++i) {
      cmax = std::max(cmax, std::abs(c.components()[i]));
      dmax = std::max(dmax, std::abs(rebuilt.components()[i] - c.components()[i]));
    }
    track(recon, dmax / cmax);
    const std::vector<double> u_down = {-std::sqrt(f), 0.0, 0.0, 0.0};
    track(pre, cc::compat_defect(cc::Sym2::outer(u_down), c, pack.metric).residual);
  }
  return both(bound(recon, 1e-7, "componentwise reconstruction"), bound(pre, 1e-8, "precondition"));
}

// --- 11 --------------------------------------------------------------------
Outcome map_laws() {
  double geo = 0, conf = 0;
  for (int n : {3, 4, 5}) {
    const auto g = metric(50 + n, n, true);
    const cc::Rank4 rm = cc::raise_last(cc::random_gct({60u + n}, cc::Dim(n)).components(), g);
    std::vector<double> x(static_cast<std::size_t>(n));
    cc::SeededGenerator gen(70 + n);
    for (auto& v : x) v = gen.uniform(-1, 1);
    const auto t = cc::geodesic_transform(rm, x, cc::random_sym2({80u + n}, cc::Dim(n)).matrix());
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto b = cc::random_sym2({s + 90}, cc::Dim(n));
      const cc::Rank4 d = cc::compat_sum_mixed(b, t.riemann_mixed) - cc::compat_sum_mixed(b, rm);
      track(geo, cc::norm(d) / (cc::norm(b.matrix()) * cc::norm(rm)));
    }
  }
  const cc::ScalarField sigma = [](cc::Coordinates x) { return 0.1 * x[1] + 0.05 * (x[0] * x[2]); };
  for (const auto* id : {"perturbed_flat", "schwarzschild", "goedel"}) {
    const auto fx = cc::get_fixture(id);
    const auto hat = cc::conformal_transform(fx.chart, sigma);
    for (const auto& p : fx.probes) {
      const cc::Rank4 c = cc::raise_last(cc::weyl(fx.chart, p).components(), fx.chart.value_at(p));
      const cc::Rank4 ch = cc::raise_last(cc::weyl(hat, p).components(), hat.value_at(p));
      track(conf, cc::norm(ch - c) / cc::norm(c));
    }
  }
  return both(bound(geo, 1e-10, "geodesic compat-sum"), bound(conf, 1e-7, "conformal mixed Weyl"));
}

// --- 12 --------------------------------------------------------------------
Outcome catalog_facts() {
  double sphere = 0;
  for (double r : {0.5, 1.0, 2.5}) {
    const auto fx = cc::get_fixture("sphere", {{"n", 2.0}, {"r", r}});
    for (const auto& p : fx.probes)
      track(sphere, std::abs(cc::riemann(fx.chart, p).scalar - 2.0 / (r * r)));
  }
  double rw = 0;
  for (const char* a : {"t2", "exp"}) {
    const auto fx = cc::get_fixture("robertson_walker", {{"a", std::string(a)}});
    for (const auto& p : fx.probes) {
      const cc::LocalGeometry geom(fx.chart, p, 2);
      const auto pack = geom.pack();
      const cc::Sym2 xx(cc::values_of(geom.evaluate(fx.sym2_fields.at("X_X"))));
      track(rw, cc::compat_defect(xx, pack.riemann, pack.metric).residual);
    }
  }
  double goedel = 0;
  const auto gd = cc::get_fixture("goedel");
  for (const auto& p : gd.probes) {
    const auto pack = cc::riemann(gd.chart, p);
    track(goedel, cc::compat_defect(pack.ricci, pack.weyl.value(), pack.metric).residual);
  }
  double warped = 0;
  const auto wp = cc::get_fixture("warped", {{"spatial", std::string("generic")}, {"spatial_dim", 4.0}});
  for (const auto& p : wp.probes) {
    const auto pack = cc::riemann(wp.chart, p);
    track(warped, cc::compat_defect(pack.ricci, pack.riemann, pack.metric).residual);
  }
  return both(both(bound(sphere, 1e-9, "sphere scalar"), bound(rw, 1e-7, "RW X(x)X")),
              both(bound(goedel, 1e-6, "Goedel Ricci-Weyl"), exceeds(warped, 1e-3, "warped witness")));
}

// --- 13 --------------------------------------------------------------------
Outcome determinism() {
  const auto cfg = cc::cli::load_config(CURVCOMPAT_FULL_CONFIG);
  const auto seed = cc::cli::resolve_seed(std::nullopt, cfg, nullptr);
  const auto body = [&] {
    const auto res = cc::cli::run(cfg, seed);
    std::string out;
    for (const auto& r : res.reports) out += cc::cli::to_json_line(r, false) + "\n";
    return std::pair{out, res.exit_code};
  };
  const auto [a, code_a] = body();
  const auto [b, code_b] = body();
  const bool same = a == b;
  return {same && code_a == 0 && code_b == 0,
          std::string(same ? "identical" : "different") + " report bodies (" +
              std::to_string(std::count(a.begin(), a.end(), '\n')) + " lines), exit " +
              std::to_string(code_a)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"GCT axioms", gct_axioms},
      {"metric compatibility", metric_compatibility},
      {"Jordan closure", jordan_closure},
      {"Derdzinski-Shen eigen-triples", derdzinski_shen},
      {"inverse, Veblen, K', ring", constructions},
      {"constant-curvature characterization", constant_curvature},
      {"3D Ricci-Riemann compatibility", three_dimensional_ricci},
      {"Lovelock identities", lovelock},
      {"deviation identities", deviation_identities},
      {"electric Weyl reconstruction", electric_weyl},
      {"map laws", map_laws},
      {"catalog facts", catalog_facts},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %2zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
