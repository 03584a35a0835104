#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "curvcompat/catalog.hpp"
#include "curvcompat/compat.hpp"
#include "curvcompat/identities.hpp"

namespace cc = curvcompat;

TEST(Catalog, ListsAllFixtures) {
  const auto ids = cc::list_fixtures();
  for (const char* id : {"euclidean", "minkowski", "sphere", "constant_curvature", "robertson_walker",
                         "warped", "goedel", "schwarzschild", "twisted", "perturbed_flat"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
}

TEST(Catalog, EveryExpectedValueHoldsAtEveryProbe) {
  for (const auto& id : cc::list_fixtures()) {
    const auto fx = cc::get_fixture(id);
    for (const auto& p : fx.probes) {
      const cc::LocalGeometry geom(fx.chart, p);
      for (const auto& [name, ev] : fx.expected) {
        const double e = ev.at(p);
        const double m = cc::measure(name, fx, geom);
        EXPECT_LE(std::abs(m - e) / std::max(1.0, std::abs(e)), ev.tolerance) << id << " " << name;
      }
    }
  }
}

TEST(Catalog, SphereScalarCurvature) {
  for (double r : {0.5, 1.0, 3.0}) {
    const auto fx = cc::get_fixture("sphere", {{"n", 2.0}, {"r", r}});
    const cc::LocalGeometry geom(fx.chart, fx.probes[0], 2);
    EXPECT_NEAR(geom.scalar().value(), 2.0 / (r * r), 1e-9);
  }
}

TEST(Catalog, GoedelRicciIsWeylCompatible) {
  const auto fx = cc::get_fixture("goedel", {{"omega", 1.0}});
  for (const auto& p : fx.probes) {
    const auto pack = cc::riemann(fx.chart, p);
    EXPECT_LT(cc::compat_defect(pack.ricci, pack.weyl.value(), pack.metric).residual, 1e-6);
    EXPECT_NEAR(pack.scalar, -2.0, 1e-9);
  }
}

TEST(Catalog, WarpedGenericFactorIsANegativeWitness) {
  const auto fx = cc::get_fixture("warped", {{"spatial", std::string("generic")}, {"spatial_dim", 4.0}});
  double worst = 0.0;
  for (const auto& p : fx.probes) {
    const auto pack = cc::riemann(fx.chart, p);
    worst = std::max(worst, cc::compat_defect(pack.ricci, pack.riemann, pack.metric).residual);
  }
  EXPECT_GT(worst, 1e-3);
}

TEST(Catalog, ConstantCurvatureFlagMatchesDecomposition) {
  for (const auto& id : cc::list_fixtures()) {
    const auto fx = cc::get_fixture(id);
    if (fx.chart.dim() < 3) continue;
    for (const auto& p : fx.probes) {
      const auto pack = cc::riemann(fx.chart, p);
      const double r = cc::const_curv_decompose(pack.riemann, pack.metric).residual;
      if (fx.constant_curvature)
        EXPECT_LT(r, 1e-8) << id;
      else
        EXPECT_GT(r, 1e-4) << id;
    }
  }
}

TEST(Catalog, ParameterErrors) {
  EXPECT_THROW(cc::get_fixture("kerr"), cc::FixtureError);
  EXPECT_THROW(cc::get_fixture("sphere", {{"radius", 1.0}}), cc::FixtureError);
  EXPECT_THROW(cc::get_fixture("sphere", {{"n", 4.0}}), cc::FixtureError);
  EXPECT_THROW(cc::get_fixture("sphere", {{"n", 2.5}}), cc::FixtureError);
  EXPECT_THROW(cc::get_fixture("sphere", {{"r", -1.0}}), cc::FixtureError);
  EXPECT_THROW(cc::get_fixture("sphere", {{"r", std::string("big")}}), cc::FixtureError);
  EXPECT_THROW(cc::get_fixture("robertson_walker", {{"a", std::string("t3")}}), cc::FixtureError);
  EXPECT_THROW(cc::get_fixture("schwarzschild", {{"M", 0.0}}), cc::FixtureError);
}

TEST(Catalog, ProbeErrors) {
  auto fx = cc::get_fixture("schwarzschild", {{"M", 1.0}});
  EXPECT_THROW(cc::set_probes(fx, {{0.0, 2.0, 1.0, 0.0}}), cc::FixtureError);
  EXPECT_THROW(cc::set_probes(fx, {{0.0, 1.0, 1.0, 0.0}}), cc::FixtureError);
  EXPECT_THROW(cc::set_probes(fx, {{0.0, 4.0, 0.0, 0.0}}), cc::FixtureError);
  EXPECT_THROW(cc::set_probes(fx, {{0.0, 4.0, 1.0}}), cc::FixtureError);
  cc::set_probes(fx, {{0.0, 4.0, 1.0, 0.0}});
  EXPECT_EQ(fx.probes.size(), 1u);
  auto sphere = cc::get_fixture("sphere");
  EXPECT_THROW(cc::set_probes(sphere, {{0.0, 1.0}}), cc::FixtureError);
}

TEST(Catalog, EffectiveParamsIncludeDefaults) {
  const auto fx = cc::get_fixture("sphere");
  ASSERT_TRUE(fx.params.contains("r"));
  EXPECT_EQ(std::get<double>(fx.params.at("r")), 1.0);
}

TEST(Catalog, FixturesAreDeterministic) {
  const auto a = cc::get_fixture("perturbed_flat", {{"seed", 5.0}});
  const auto b = cc::get_fixture("perturbed_flat", {{"seed", 5.0}});
  const auto c = cc::get_fixture("perturbed_flat", {{"seed", 6.0}});
  const auto ra = cc::riemann(a.chart, a.probes[0]).riemann.components();
  EXPECT_EQ(cc::norm(ra - cc::riemann(b.chart, b.probes[0]).riemann.components()), 0.0);
  EXPECT_GT(cc::norm(ra - cc::riemann(c.chart, a.probes[0]).riemann.components()), 0.0);
}

TEST(Catalog, MeasureRejectsUnknownName) {
  const auto fx = cc::get_fixture("minkowski");
  const cc::LocalGeometry geom(fx.chart, fx.probes[0], 2);
  EXPECT_THROW(cc::measure("volume", fx, geom), cc::Error);
}
