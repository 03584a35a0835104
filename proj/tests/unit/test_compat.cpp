#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "curvcompat/compat.hpp"
#include "curvcompat/random.hpp"
#include "oracles.hpp"

namespace cc = curvcompat;

namespace {

cc::MetricValue lorentz(std::uint64_t seed, int n) {
  std::vector<int> sig(static_cast<std::size_t>(n), 1);
  sig[0] = -1;
  return cc::random_metric({seed}, cc::Dim(n), sig);
}

cc::MetricValue riemannian(std::uint64_t seed, int n) {
  std::vector<int> sig(static_cast<std::size_t>(n), 1);
  return cc::random_metric({seed}, cc::Dim(n), sig);
}

}  // namespace

TEST(CompatDefect, MatchesLoopOracle) {
  for (int n = 3; n <= 5; ++n) {
    const auto g = lorentz(1, n);
    const auto b = cc::random_sym2({2}, cc::Dim(n));
    const auto k = cc::random_gct({3}, cc::Dim(n));
    const auto d = cc::compat_defect(b, k, g);
    const cc::Rank4 want = oracle::compat_defect(b.matrix(), k.components(), g.covariant().matrix());
    EXPECT_LT(oracle::rel_diff(d.defect, want), 1e-12);
    EXPECT_NEAR(d.residual, cc::norm(want) / (cc::norm(b.matrix()) * cc::norm(k.components())),
                1e-12);
  }
}

TEST(CompatDefect, GenericTensorIsNotCompatible) {
  const auto g = riemannian(4, 4);
  const auto k = cc::random_gct({5}, cc::Dim(4));
  EXPECT_GT(cc::compat_defect(cc::random_sym2({6}, cc::Dim(4)), k, g).residual, 1e-3);
}

TEST(CompatDefect, MetricIsAlwaysCompatible) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = lorentz(s, 4);
    EXPECT_LT(cc::compat_defect(g.covariant(), cc::random_gct({s + 100}, cc::Dim(4)), g).residual,
              1e-12);
  }
}

TEST(CompatDefect, WedgeSquareIsCompatibleWithItsFactor) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = riemannian(s, 5);
    const auto b = cc::random_sym2({s + 7}, cc::Dim(5));
    EXPECT_LT(cc::compat_defect(b, cc::kulkarni_nomizu(b, b), g).residual, 1e-12);
  }
}

TEST(CompatDefect, DimensionMismatchThrows) {
  EXPECT_THROW(cc::compat_defect(cc::Sym2(3), cc::random_gct({1}, cc::Dim(4)),
                                 cc::MetricValue::euclidean(4)),
               cc::DimensionError);
}

TEST(RicciOf, ConstantCurvatureRicciIsProportionalToMetric) {
  const auto g = lorentz(8, 4);
  const auto k = cc::const_curvature_gct(6.0, g);
  const auto ric = cc::ricci_of(k, g).ricci;
  EXPECT_LT(oracle::rel_diff(ric.matrix(), g.covariant().matrix() * (6.0 / 4.0)), 1e-12);
  EXPECT_NEAR(cc::scalar_of(k, g), 6.0, 1e-12);
}

TEST(WeylPart, TracelessAndZeroInThreeDimensions) {
  const auto g = lorentz(9, 4);
  const auto c = cc::weyl_part(cc::random_gct({10}, cc::Dim(4)), g);
  EXPECT_LT(cc::norm(cc::ricci_of(c, g).ricci.matrix()), 1e-12);
  EXPECT_EQ(cc::norm(cc::weyl_part(cc::random_gct({10}, cc::Dim(3)), riemannian(1, 3)).components()),
            0.0);
}

TEST(JordanProduct, MatchesMixedFormula) {
  const auto g = lorentz(11, 3);
  const auto a = cc::random_sym2({12}, cc::Dim(3));
  const auto b = cc::random_sym2({13}, cc::Dim(3));
  const auto c = cc::jordan_product(a, b, g);
  const cc::Matrix gi = oracle::inverse(g.covariant().matrix());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double want = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int p = 0; p < 3; ++p) want += 0.5 * (a(i, p) * gi(p, k) * b(k, j) + b(i, p) * gi(p, k) * a(k, j));
      EXPECT_NEAR(c(i, j), want, 1e-12);
    }
}

TEST(JordanClosure, ProductOfCompatiblePairStaysCompatible) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = lorentz(s, 4);
    const auto b = cc::random_sym2({s + 50}, cc::Dim(4));
    const auto k = cc::kulkarni_nomizu(b, b);
    const cc::Sym2 a = 0.7 * g.covariant() + (-1.3) * b;
    EXPECT_LT(cc::compat_defect(cc::jordan_product(a, b, g), k, g).residual, 1e-10);
  }
}

TEST(InverseCompat, InverseOfCompatibleIsCompatible) {
  const auto g = riemannian(14, 4);
  const auto b = cc::random_sym2({15}, cc::Dim(4));
  const auto rep = cc::inverse_compat_defect(b, cc::kulkarni_nomizu(b, b), g);
  EXPECT_LT(rep.defect.residual, 1e-10);
  const cc::Matrix prod = cc::matmul(cc::mixed(b, g), cc::mixed(rep.inverse, g));
  EXPECT_LT(oracle::rel_diff(prod, cc::identity_matrix(4)), 1e-10);
}

TEST(InverseCompat, SingularTensorThrows) {
  std::vector<double> d = {1.0, 2.0, 0.0};
  const auto b = cc::Sym2::diagonal(d);
  EXPECT_THROW(cc::inverse_compat_defect(b, cc::kulkarni_nomizu(b, b), cc::MetricValue::euclidean(3)),
               cc::SingularMatrixError);
}

TEST(Veblen, HoldsForCompatiblePairAndFailsOtherwise) {
  const auto g = lorentz(16, 4);
  const auto b = cc::random_sym2({17}, cc::Dim(4));
  EXPECT_LT(cc::veblen_defect(b, cc::kulkarni_nomizu(b, b), g).residual, 1e-10);
  EXPECT_GT(cc::veblen_defect(b, cc::random_gct({18}, cc::Dim(4)), g).residual, 1e-3);
}

TEST(Constructions, KPrimeAndRingAreCurvatureTensorsOnlyForCompatibleInputs) {
  const auto g = riemannian(19, 4);
  const auto b = cc::random_sym2({20}, cc::Dim(4));
  const auto a = cc::random_sym2({21}, cc::Dim(4));
  const auto kc = cc::const_curvature_gct(2.0, g);
  const auto kp = cc::kprime_gct(b, kc, g);
  ASSERT_TRUE(kp.gct.has_value());
  EXPECT_LT(cc::gct_residuals(kp.tensor).max(), 1e-10);
  const auto ring = cc::ring_gct(a, b, kc, g);
  ASSERT_TRUE(ring.gct.has_value());
  EXPECT_LT(cc::gct_residuals(ring.tensor).max(), 1e-10);

  const auto bad = cc::kprime_gct(b, cc::random_gct({22}, cc::Dim(4)), g);
  EXPECT_FALSE(bad.gct.has_value());
  EXPECT_FALSE(bad.diagnostic.empty());
}

TEST(ConstCurvature, DecomposeRecoversScalar) {
  const auto g = lorentz(23, 5);
  const auto d = cc::const_curv_decompose(cc::const_curvature_gct(-3.5, g), g);
  EXPECT_NEAR(d.k_scal, -3.5, 1e-12);
  EXPECT_LT(d.residual, 1e-12);
  EXPECT_GT(cc::const_curv_decompose(cc::random_gct({24}, cc::Dim(5)), g).residual, 1e-3);
}

TEST(ConstCurvature, UniversalCompatibilityCharacterizes) {
  const auto g = riemannian(25, 4);
  const auto ok = cc::universal_compat_test(cc::const_curvature_gct(1.0, g), g, 50, {1});
  EXPECT_TRUE(ok.all_pass);
  EXPECT_LT(ok.max_residual, 1e-12);
  EXPECT_EQ(ok.residuals.size(), 50u);
  const auto no = cc::universal_compat_test(cc::random_gct({26}, cc::Dim(4)), g, 50, {1});
  EXPECT_FALSE(no.all_pass);
  EXPECT_GT(no.max_residual, 1e-3);
  EXPECT_THROW(cc::universal_compat_test(cc::random_gct({26}, cc::Dim(4)), g, 0, {1}),
               cc::PreconditionError);
}

TEST(EigenMixed, DiagonalizableAndComplexCases) {
  std::vector<double> d = {3.0, 1.0, 2.0};
  const auto e = cc::eigen_mixed(cc::Sym2::diagonal(d), cc::MetricValue::euclidean(3));
  ASSERT_EQ(e.status, cc::SpectrumStatus::real_diagonalizable);
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues[2], 3.0, 1e-14);

  std::vector<double> eta = {-1.0, 1.0};
  cc::Sym2 c(2);
  c.set(0, 0, 1.0);
  c.set(1, 1, 1.0);
  c.set(0, 1, 2.0);
  const auto ec = cc::eigen_mixed(c, cc::MetricValue::diagonal(eta));
  EXPECT_EQ(ec.status, cc::SpectrumStatus::inapplicable);
}

TEST(DerdzinskiShen, WedgeSquareEigenTriplesVanish) {
  std::vector<double> d = {0.5, -1.0, 2.0, 1.5};
  const auto b = cc::Sym2::diagonal(d);
  const auto g = cc::MetricValue::euclidean(4);
  const auto rep = cc::derdzinski_shen_check(b, cc::kulkarni_nomizu(b, b), g);
  ASSERT_TRUE(rep.applicable);
  EXPECT_FALSE(rep.triples.empty());
  EXPECT_LT(rep.max_contraction, 1e-12);
}

TEST(DerdzinskiShen, IncompatibleTensorViolates) {
  std::vector<double> d = {0.5, -1.0, 2.0, 1.5};
  const auto rep = cc::derdzinski_shen_check(cc::Sym2::diagonal(d), cc::random_gct({27}, cc::Dim(4)),
                                             cc::MetricValue::euclidean(4));
  ASSERT_TRUE(rep.applicable);
  EXPECT_GT(rep.max_contraction, 1e-3);
  EXPECT_FALSE(rep.pass);
}

TEST(Vandermonde, MatchesProductFormula) {
  EXPECT_NEAR(cc::vandermonde_determinant(1.0, 2.0, 4.0), (2.0 - 1.0) * (4.0 - 1.0) * (4.0 - 2.0),
              1e-13);
  EXPECT_NEAR(cc::vandermonde_determinant(1.0, 1.0, 4.0), 0.0, 1e-13);
  EXPECT_TRUE(cc::eigenvalues_distinct(1.0, 1.1));
  EXPECT_FALSE(cc::eigenvalues_distinct(1.0, 1.0 + 1e-12));
}

TEST(RankOneRicci, CompatibleOuterSquareGivesEigenvector) {
  const auto g = riemannian(28, 4);
  std::vector<double> u = {0.3, -0.7, 1.1, 0.2};
  const cc::Sym2 b = 1.5 * g.covariant() + 0.8 * cc::Sym2::outer(u);
  const auto rep = cc::rank_one_ricci_check(u, cc::kulkarni_nomizu(b, b), g);
  ASSERT_TRUE(rep.applicable);
  EXPECT_TRUE(rep.pass);
  EXPECT_LT(rep.eigen_rejection, 1e-10);
}
