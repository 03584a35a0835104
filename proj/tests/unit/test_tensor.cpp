#include <gtest/gtest.h>

#include <vector>

#include "curvcompat/random.hpp"
#include "curvcompat/tensor.hpp"
#include "oracles.hpp"

namespace cc = curvcompat;

TEST(Tensor, RowMajorLayoutAndUnflatten) {
  cc::Rank3 t(3, 0.0);
  t(1, 2, 0) = 5.0;
  EXPECT_EQ(t[1 * 9 + 2 * 3 + 0], 5.0);
  const auto idx = t.unflatten(1 * 9 + 2 * 3);
  EXPECT_EQ(idx[0], 1);
  EXPECT_EQ(idx[1], 2);
  EXPECT_EQ(idx[2], 0);
  EXPECT_EQ(t.flat_of(idx), 15u);
  EXPECT_EQ(t.stride(0), 9u);
}

TEST(Tensor, DimensionMismatchThrows) {
  cc::Matrix a(3), b(4);
  EXPECT_THROW(a += b, cc::DimensionError);
  EXPECT_THROW(cc::Dim(1), cc::DimensionError);
  EXPECT_THROW(cc::kulkarni_nomizu(cc::Sym2(3), cc::Sym2(4)), cc::DimensionError);
}

TEST(Tensor, FrobeniusNorm) {
  cc::Matrix m(2);
  m(0, 0) = 3.0;
  m(1, 0) = 4.0;
  EXPECT_DOUBLE_EQ(cc::norm(m), 5.0);
}

TEST(Sym2, RejectsAsymmetricInputAndStoresSymmetricPart) {
  cc::Matrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0 + 1e-14;
  const cc::Sym2 s(m);
  EXPECT_EQ(s(0, 1), s(1, 0));
  m(1, 0) = 2.0;
  EXPECT_THROW(cc::Sym2{m}, cc::Error);
}

TEST(MetricValue, InverseMatchesOracleAndSignatureCounted) {
  const std::vector<int> sig = {-1, 1, 1, 1};
  for (int seed = 0; seed < 10; ++seed) {
    const auto g = cc::random_metric({static_cast<std::uint64_t>(seed)}, cc::Dim(4), sig);
    EXPECT_LT(oracle::rel_diff(g.inverse(), oracle::inverse(g.covariant().matrix())), 1e-12);
    EXPECT_EQ(g.signature(), sig);
  }
  EXPECT_THROW(cc::MetricValue(cc::Sym2(3)), cc::SingularMatrixError);
}

TEST(KulkarniNomizu, MatchesComponentFormula) {
  const auto a = cc::random_sym2({1}, cc::Dim(4));
  const auto b = cc::random_sym2({2}, cc::Dim(4));
  const cc::GCT k = cc::kulkarni_nomizu(a, b);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) {
          const double want = a(i, l) * b(j, m) + a(j, m) * b(i, l) - a(i, m) * b(j, l) -
                              a(j, l) * b(i, m);
          EXPECT_NEAR(k(i, j, l, m), want, 1e-14);
        }
}

TEST(KulkarniNomizu, MetricWedgeMetricHasSectionalCurvatureTwo) {
  const cc::Sym2 g = cc::Sym2::identity(3);
  const cc::GCT k = cc::kulkarni_nomizu(g, g);
  EXPECT_DOUBLE_EQ(k(0, 1, 0, 1), 2.0);
  EXPECT_DOUBLE_EQ(k(0, 1, 1, 0), -2.0);
  EXPECT_DOUBLE_EQ(k(0, 0, 1, 1), 0.0);
}

TEST(GctResiduals, DetectEachBrokenSymmetry) {
  cc::Rank4 t(3, 0.0);
  t(0, 1, 0, 1) = 1.0;
  const auto r = cc::gct_residuals(t);
  EXPECT_GT(r.first_pair, 0.1);
  EXPECT_GT(r.second_pair, 0.1);
  EXPECT_THROW(cc::GCT::checked(t), cc::GctViolation);
}

TEST(GctProject, ProducesExactCurvatureSymmetries) {
  for (int n = 2; n <= 5; ++n)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const cc::GCT k = cc::gct_project(cc::random_rank4({s}, cc::Dim(n)));
      EXPECT_LT(cc::gct_residuals(k.components()).max(), 1e-14);
    }
}

TEST(GctProject, IsIdempotentOnCurvatureTensors) {
  const cc::GCT k = cc::random_gct({7}, cc::Dim(4));
  EXPECT_LT(oracle::rel_diff(cc::gct_project(k.components()).components(), k.components()), 1e-14);
}

TEST(RaiseLower, RoundTrip) {
  const std::vector<int> sig = {-1, 1, 1};
  const auto g = cc::random_metric({3}, cc::Dim(3), sig);
  const cc::GCT k = cc::random_gct({4}, cc::Dim(3));
  const cc::Rank4 back = cc::lower_last(cc::raise_last(k.components(), g), g);
  EXPECT_LT(oracle::rel_diff(back, k.components()), 1e-13);
}

TEST(Mixed, RaisesFirstIndex) {
  const std::vector<int> sig = {1, 1, 1};
  const auto g = cc::random_metric({5}, cc::Dim(3), sig);
  const auto b = cc::random_sym2({6}, cc::Dim(3));
  const cc::Matrix m = cc::mixed(b, g);
  const cc::Matrix gi = oracle::inverse(g.covariant().matrix());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double want = 0.0;
      for (int k = 0; k < 3; ++k) want += gi(i, k) * b(k, j);
      EXPECT_NEAR(m(i, j), want, 1e-13);
    }
}

TEST(RelResidual, FloorPreventsDivisionByZero) {
  const auto r = cc::rel_residual(0.0, {0.0, 1.0});
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.pass);
  const auto big = cc::rel_residual(1.0, {1.0});
  EXPECT_FALSE(big.pass);
}

TEST(Random, SameSeedSameTensor) {
  const auto a = cc::random_gct({11}, cc::Dim(4));
  const auto b = cc::random_gct({11}, cc::Dim(4));
  EXPECT_EQ(cc::norm(a.components() - b.components()), 0.0);
  const auto c = cc::random_gct({12}, cc::Dim(4));
  EXPECT_GT(cc::norm(a.components() - c.components()), 0.0);
}
