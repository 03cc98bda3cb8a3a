#include "pdsp/baselines.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "pdsp/engine.hpp"
#include "pdsp/errors.hpp"
#include "pdsp/geometry.hpp"
#include "test_support.hpp"

namespace pdsp {
namespace {

using testing::random_instance;
using testing::triangle;

TEST(BruteForceTest, RunningExample) {
  const auto best = brute_force(triangle(2));
  EXPECT_EQ(best.selected(), (std::vector<std::size_t>{1, 2}));
  EXPECT_DOUBLE_EQ(best.value(), 5.0);
}

TEST(BruteForceTest, HexagonPicksAlternateVertices) {
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < 6; ++k) {
    const double a = k * std::numbers::pi / 3.0;
    rows.push_back({50.0 * std::cos(a), 50.0 * std::sin(a)});
  }
  const PointSet pts = PointSet::from_rows(rows);
  const Instance inst = make_instance("hex", build_distance_matrix(pts, 1.0), 3, 1.0, pts);
  const auto best = brute_force(inst);
  // Both triangles are optimal; ties go to the lexicographically smaller set.
  EXPECT_EQ(best.selected(), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_NEAR(best.value(), 3.0 * 50.0 * std::sqrt(3.0), 1e-9);
}

TEST(BruteForceTest, AllLocationsWhenPEqualsN) {
  const Instance inst = random_instance(6, 6, 2);
  double upper = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) upper += inst.q()(i, j);
  }
  EXPECT_NEAR(brute_force(inst).value(), upper, 1e-9);
}

TEST(BruteForceTest, RefusesHugeEnumerations) {
  const Instance inst = random_instance(60, 30, 1);
  EXPECT_THROW(brute_force(inst), GuardError);
}

TEST(SubsetCountTest, SmallValues) {
  EXPECT_EQ(subset_count(5, 2), 10.0);
  EXPECT_EQ(subset_count(6, 0), 1.0);
  EXPECT_EQ(subset_count(3, 4), 0.0);
  EXPECT_EQ(subset_count(30, 15), 155117520.0);
}

TEST(BuildF3Test, ModelShape) {
  const MilpModel m = build_f3(triangle(2));
  EXPECT_EQ(m.num_vars(), 5u);
  EXPECT_EQ(m.num_rows(), 1u + 2u * 2u);
  EXPECT_EQ(m.integer, (std::vector<std::uint8_t>{1, 1, 1, 0, 0}));
  EXPECT_NO_THROW(m.check());
}

TEST(BuildF3Test, RunningExampleOptimum) {
  const Instance inst = triangle(2);
  const SolveReport rep = solve_milp(build_f3(inst));
  ASSERT_EQ(rep.status, SolveStatus::kOptimal);
  EXPECT_NEAR(rep.lower_bound, 5.0, 1e-9);
  EXPECT_EQ(rep.incumbent->bits(), testing::bits_from({0, 1, 1}));
  const auto w = f3_point(inst, BinarySolution::from_indices(inst, {1, 2}));
  EXPECT_EQ(w, (std::vector<double>{0, 1, 1, 0, 5}));
}

TEST(BuildF3Test, EverythingSelected) {
  const Instance inst = random_instance(5, 5, 9);
  const SolveReport rep = solve_milp(build_f3(inst));
  ASSERT_EQ(rep.status, SolveStatus::kOptimal);
  EXPECT_NEAR(rep.lower_bound, brute_force(inst).value(), 1e-7);
}

TEST(BuildF3Test, ZeroMatrix) {
  const Instance inst = make_instance("zero", DenseMatrix(4), 2);
  const SolveReport rep = solve_milp(build_f3(inst));
  ASSERT_EQ(rep.status, SolveStatus::kOptimal);
  EXPECT_NEAR(rep.lower_bound, 0.0, 1e-12);
}

TEST(SolveMilpTest, InfeasibleCardinality) {
  MilpModel m = build_f3(triangle(2));
  m.rhs[0] = 4.0;
  const SolveReport rep = solve_milp(m);
  EXPECT_EQ(rep.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(rep.incumbent.has_value());
}

TEST(SolveMilpTest, RejectsInconsistentModel) {
  MilpModel m = build_f3(triangle(2));
  m.rows[1].pop_back();
  EXPECT_THROW(solve_milp(m), ArgumentError);
}

TEST(SolveMilpTest, RejectsInfeasibleStart) {
  const Instance inst = triangle(2);
  MilpParams params;
  params.start = std::vector<double>{1, 1, 1, 0, 0};
  EXPECT_THROW(solve_milp(build_f3(inst), params), ArgumentError);
}

TEST(SolveMilpTest, GeneralIntegerKnapsack) {
  // max 5a + 4b  s.t. 6a + 4b <= 24, a + 2b <= 6, a, b in {0..10}
  MilpModel m;
  m.objective = {5, 4};
  m.rows = {{6, 4}, {1, 2}};
  m.senses = {RowSense::kLessEqual, RowSense::kLessEqual};
  m.rhs = {24, 6};
  m.lower = {0, 0};
  m.upper = {10, 10};
  m.integer = {1, 1};
  const SolveReport rep = solve_milp(m);
  ASSERT_EQ(rep.status, SolveStatus::kOptimal);
  EXPECT_NEAR(rep.lower_bound, 20.0, 1e-9);
}

TEST(F3RelaxationTest, BoundsTheIntegerOptimum) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = random_instance(9, 3, seed);
    EXPECT_GE(lp_relaxation_value(build_f3(inst)), brute_force(inst).value() - 1e-7);
  }
}

TEST(F3CrossCheckTest, AgreesWithCuttingPlaneEngine) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t n = 6 + seed % 15;
    const std::size_t p = 2 + seed % 3;
    const Instance inst = random_instance(n, p, 500 + seed);
    const SolveReport milp = solve_milp(build_f3(inst));
    const SolveReport cp = solve_single_tree(inst);
    ASSERT_EQ(milp.status, SolveStatus::kOptimal);
    EXPECT_NEAR(milp.lower_bound, cp.lower_bound, 1e-7 * cp.lower_bound) << "seed " << seed;
  }
}

}  // namespace
}  // namespace pdsp
