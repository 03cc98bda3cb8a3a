#include "pdsp/cuts.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "pdsp/errors.hpp"
#include "pdsp/geometry.hpp"
#include "test_support.hpp"

namespace pdsp {
namespace {

using testing::bits_from;
using testing::triangle;

TEST(GradientTest, RunningExample) {
  const Instance inst = triangle(2);
  EXPECT_EQ(gradient(inst, bits_from({1, 1, 0})), (std::vector<double>{3, 3, 9}));
}

TEST(GradientTest, ZeroSelectionGivesZeroVector) {
  const Instance inst = triangle(2);
  EXPECT_EQ(gradient(inst, bits_from({0, 0, 0})), (std::vector<double>{0, 0, 0}));
}

TEST(GradientTest, DuplicatedPointsGiveZeroGradient) {
  const PointSet pts = PointSet::from_rows({{5, 5}, {5, 5}});
  const Instance inst = make_instance("dup", build_distance_matrix(pts, 1.0), 2, 1.0, pts);
  EXPECT_EQ(gradient(inst, bits_from({1, 1})), (std::vector<double>{0, 0}));
}

TEST(GradientTest, RejectsLengthMismatch) {
  EXPECT_THROW(gradient(triangle(2), bits_from({1, 1})), ArgumentError);
}

TEST(MakeCutTest, RunningExample) {
  const Instance inst = triangle(2);
  const Cut cut = make_cut(inst, BinarySolution::from_bits(inst, bits_from({1, 1, 0})), 0);
  EXPECT_EQ(cut.gradient, (std::vector<double>{3, 3, 9}));
  EXPECT_DOUBLE_EQ(cut.offset, -3.0);
  const Bits x = bits_from({0, 1, 1});
  EXPECT_DOUBLE_EQ(cut.evaluate(std::span<const std::uint8_t>(x)), 9.0);
  EXPECT_GE(cut.evaluate(std::span<const std::uint8_t>(x)), objective(inst, x));
}

TEST(MakeCutTest, TouchesObjectiveAtItsSource) {
  const Instance inst = testing::random_instance(12, 4, 3);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Bits y = testing::random_point(12, 4, rng);
    const Cut cut = make_cut(inst, BinarySolution::from_bits(inst, y), 1);
    const double fy = objective(inst, y);
    EXPECT_NEAR(cut.evaluate(std::span<const std::uint8_t>(y)), fy, 1e-9 * (1 + fy));
  }
}

TEST(MakeCutTest, EnvelopeOverestimatesEveryPoint) {
  const Instance inst = testing::random_instance(8, 3, 11);
  std::vector<Cut> cuts;
  testing::for_each_subset(8, 3, [&](const Bits& y) {
    cuts.push_back(make_cut(inst, BinarySolution::from_bits(inst, y), cuts.size()));
  });
  ASSERT_EQ(cuts.size(), 56u);
  std::size_t checked = 0;
  testing::for_each_subset(8, 3, [&](const Bits& x) {
    double env = std::numeric_limits<double>::infinity();
    for (const Cut& c : cuts) env = std::min(env, c.evaluate(std::span<const std::uint8_t>(x)));
    const double fx = objective(inst, x);
    EXPECT_GE(env, fx - 1e-9 * (1 + fx));
    EXPECT_NEAR(env, fx, 1e-9 * (1 + fx));
    ++checked;
  });
  EXPECT_EQ(checked, 56u);
}

TEST(MakeCutTest, StoredFormMatchesDefinition) {
  const Instance inst = testing::random_instance(10, 4, 5, 0.5);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Bits y = testing::random_point(10, 4, rng);
    const Bits x = testing::random_point(10, 4, rng);
    const Cut cut = make_cut(inst, BinarySolution::from_bits(inst, y), 0);
    const double h = tangent_value(inst, x, y);
    EXPECT_NEAR(cut.evaluate(std::span<const std::uint8_t>(x)), h, 1e-9 * (1 + std::abs(h)));
  }
}

TEST(CutViolationTest, RunningExample) {
  const Instance inst = triangle(2);
  const Cut cut = make_cut(inst, BinarySolution::from_bits(inst, bits_from({1, 1, 0})), 0);
  const std::vector<double> x{0, 1, 1};
  EXPECT_DOUBLE_EQ(cut_violation(cut, x, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(cut_violation(cut, x, 5.0), -4.0);
  const std::vector<double> y{1, 1, 0};
  EXPECT_DOUBLE_EQ(cut_violation(cut, y, 3.0), 0.0);
}

}  // namespace
}  // namespace pdsp
