#include "pdsp/geometry.hpp"

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "pdsp/errors.hpp"
#include "test_support.hpp"

namespace pdsp {
namespace {

TEST(DistanceMatrixTest, PythagoreanTriangle) {
  const auto q = build_distance_matrix(PointSet::from_rows({{0, 0}, {3, 0}, {0, 4}}), 1.0);
  EXPECT_EQ(q, DenseMatrix::from_rows({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}));
}

TEST(DistanceMatrixTest, SquaredLineDistances) {
  const auto q = build_distance_matrix(PointSet::from_rows({{0}, {1}, {2}}), 2.0);
  EXPECT_EQ(q, DenseMatrix::from_rows({{0, 1, 4}, {1, 0, 1}, {4, 1, 0}}));
}

TEST(DistanceMatrixTest, SinglePoint) {
  const auto q = build_distance_matrix(PointSet::from_rows({{7, 7}}), 1.0);
  EXPECT_EQ(q, DenseMatrix::from_rows({{0}}));
}

TEST(DistanceMatrixTest, FractionalExponent) {
  const auto q = build_distance_matrix(PointSet::from_rows({{0, 0}, {3, 4}}), 0.5);
  EXPECT_NEAR(q(0, 1), std::sqrt(5.0), 1e-12);
}

TEST(DistanceMatrixTest, RejectsBadExponentAndRaggedPoints) {
  const auto pts = PointSet::from_rows({{0, 0}, {1, 1}});
  EXPECT_THROW(build_distance_matrix(pts, 0.0), ArgumentError);
  EXPECT_THROW(build_distance_matrix(pts, 2.1), ArgumentError);
  EXPECT_THROW(PointSet::from_rows({{0, 0}, {1}}), ArgumentError);
}

TEST(CertifyCndTest, SquaredLineDistancesAreCnd) {
  const auto cert = certify_cnd(DenseMatrix::from_rows({{0, 1, 4}, {1, 0, 1}, {4, 1, 0}}));
  EXPECT_TRUE(cert.is_cnd);
  EXPECT_FALSE(cert.witness.has_value());
  EXPECT_LE(cert.max_projected_eigenvalue, cert.tolerance);
}

// For z = (t, -t), z'Qz = -2 q12 t^2 = +2t^2 when q12 = -1, so this matrix is
// not conditionally negative definite.
TEST(CertifyCndTest, NegativeOffDiagonalPairFailsWithWitness) {
  const auto cert = certify_cnd(DenseMatrix::from_rows({{0, -1}, {-1, 0}}));
  EXPECT_FALSE(cert.is_cnd);
  EXPECT_NEAR(cert.max_projected_eigenvalue, 1.0, 1e-12);
  ASSERT_TRUE(cert.witness.has_value());
  const auto& z = *cert.witness;
  EXPECT_LE(std::abs(z[0] + z[1]), 1e-12);
  const double qzz = -2.0 * z[0] * z[1];
  EXPECT_GT(qzz, cert.tolerance);
}

TEST(CertifyCndTest, WitnessIsSumZeroAndViolating) {
  // Fourth powers of line distances are not of negative type: z = (1,-2,1) gives 24.
  const auto q = DenseMatrix::from_rows({{0, 1, 16}, {1, 0, 1}, {16, 1, 0}});
  const auto cert = certify_cnd(q);
  ASSERT_FALSE(cert.is_cnd);
  const auto& z = *cert.witness;
  EXPECT_LE(std::abs(std::accumulate(z.begin(), z.end(), 0.0)), 1e-12);
  double qzz = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) qzz += q(i, j) * z[i] * z[j];
  }
  EXPECT_GT(qzz, cert.tolerance);
}

TEST(CertifyCndTest, RandomEuclideanPowersAreCnd) {
  std::size_t trials = 0;
  for (double r : {0.5, 1.0, 1.5, 2.0}) {
    for (std::size_t s : {1u, 2u, 5u}) {
      for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Instance inst = testing::random_instance(10 + 3 * seed, 2, seed, r, s);
        EXPECT_TRUE(certify_cnd(inst.q()).is_cnd) << "r=" << r << " s=" << s << " seed=" << seed;
        ++trials;
      }
    }
  }
  EXPECT_EQ(trials, 96u);
}

}  // namespace
}  // namespace pdsp
