#include "pdsp/node_lp.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "pdsp/errors.hpp"
#include "test_support.hpp"

namespace pdsp {
namespace {

Cut plain_cut(std::vector<double> g, double c) {
  Cut cut;
  cut.gradient = std::move(g);
  cut.offset = c;
  return cut;
}

std::vector<Cut> random_cuts(const Instance& inst, std::size_t count, std::mt19937_64& rng) {
  std::vector<Cut> cuts;
  while (cuts.size() < count) {
    const Bits y = testing::random_point(inst.n(), inst.p(), rng);
    cuts.push_back(make_cut(inst, BinarySolution::from_bits(inst, y), cuts.size()));
  }
  return cuts;
}

NodeLP random_box(std::size_t n, std::mt19937_64& rng) {
  NodeLP node = NodeLP::root(n, 0);
  std::uniform_int_distribution<int> pick(0, 5);
  for (std::size_t j = 0; j < n; ++j) {
    const int v = pick(rng);
    if (v == 0) node.upper[j] = 0.0;
    if (v == 1) node.lower[j] = 1.0;
  }
  return node;
}

TEST(SolveNodeLpTest, SingleCutPicksLargestGradientEntries) {
  const std::vector<Cut> cuts{plain_cut({3, 3, 9}, -3)};
  const LpResult res = solve_node_lp(cuts, NodeLP::root(3, 1), 2);
  ASSERT_EQ(res.status, NodeLpStatus::kOptimal);
  EXPECT_NEAR(res.theta, 9.0, 1e-9);
  EXPECT_NEAR(res.x[2], 1.0, 1e-9);
  EXPECT_NEAR(res.x[0] + res.x[1], 1.0, 1e-9);
  EXPECT_TRUE(lp_reference_check(cuts, NodeLP::root(3, 1), 2, res));
}

TEST(SolveNodeLpTest, FixedNodeGivesEnvelopeValue) {
  const Instance inst = testing::triangle(2);
  std::vector<Cut> cuts;
  for (auto y : {testing::bits_from({0, 1, 1}), testing::bits_from({1, 0, 1})}) {
    cuts.push_back(make_cut(inst, BinarySolution::from_bits(inst, y), cuts.size()));
  }
  NodeLP node{{1, 1, 0}, {1, 1, 0}, cuts.size()};
  const LpResult res = solve_node_lp(cuts, node, 2);
  ASSERT_EQ(res.status, NodeLpStatus::kOptimal);
  const Bits x = testing::bits_from({1, 1, 0});
  const double env = std::min(cuts[0].evaluate(std::span<const std::uint8_t>(x)),
                              cuts[1].evaluate(std::span<const std::uint8_t>(x)));
  EXPECT_NEAR(res.theta, env, 1e-9);
  EXPECT_TRUE(res.fractional_indices.empty());
}

TEST(SolveNodeLpTest, UnreachableCardinalityIsInfeasible) {
  const std::vector<Cut> cuts{plain_cut({3, 3, 9}, -3)};
  NodeLP node{{0, 0, 0}, {1, 0, 0}, 1};
  EXPECT_EQ(solve_node_lp(cuts, node, 2).status, NodeLpStatus::kInfeasible);
  EXPECT_TRUE(std::isnan(enumerate_node_lp(cuts, node, 2)));
}

TEST(SolveNodeLpTest, EmptyPoolIsAContractError) {
  const std::vector<Cut> cuts;
  EXPECT_THROW(solve_node_lp(cuts, NodeLP::root(3, 0), 2), ArgumentError);
  const std::vector<Cut> one{plain_cut({1, 1, 1}, 0)};
  EXPECT_THROW(solve_node_lp(one, NodeLP::root(3, 2), 2), ArgumentError);
}

TEST(SolveNodeLpTest, DuplicateCutChangesNothing) {
  const std::vector<Cut> one{plain_cut({3, 3, 9}, -3)};
  const std::vector<Cut> two{plain_cut({3, 3, 9}, -3), plain_cut({3, 3, 9}, -3)};
  const LpResult a = solve_node_lp(one, NodeLP::root(3, 1), 2);
  const LpResult b = solve_node_lp(two, NodeLP::root(3, 2), 2);
  EXPECT_NEAR(a.theta, b.theta, 1e-12);
  EXPECT_TRUE(lp_reference_check(two, NodeLP::root(3, 2), 2, b));
}

TEST(SolveNodeLpTest, ThetaIsTightOnSomeCut) {
  std::mt19937_64 rng(21);
  const Instance inst = testing::random_instance(10, 3, 21);
  const auto cuts = random_cuts(inst, 6, rng);
  const LpResult res = solve_node_lp(cuts, NodeLP::root(10, cuts.size()), 3);
  ASSERT_EQ(res.status, NodeLpStatus::kOptimal);
  double env = kInf;
  for (const Cut& c : cuts) env = std::min(env, c.evaluate(std::span<const double>(res.x)));
  EXPECT_NEAR(res.theta, env, 1e-7 * (1 + std::abs(env)));
}

TEST(SolveNodeLpTest, AgreesWithVertexEnumeration) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 2 + trial % 4;
    const Instance inst = testing::random_instance(8, p, 1000 + trial);
    const auto cuts = random_cuts(inst, 4, rng);
    NodeLP node = random_box(8, rng);
    node.cut_pool_version = cuts.size();
    const LpResult res = solve_node_lp(cuts, node, p);
    const double oracle = enumerate_node_lp(cuts, node, p);
    if (std::isnan(oracle)) {
      EXPECT_EQ(res.status, NodeLpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(res.status, NodeLpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(res.theta, oracle, 1e-6 * (1 + std::abs(oracle))) << "trial " << trial;
    EXPECT_TRUE(lp_reference_check(cuts, node, p, res)) << "trial " << trial;
  }
}

TEST(LpReferenceCheckTest, RejectsWrongTheta) {
  const std::vector<Cut> cuts{plain_cut({3, 3, 9}, -3)};
  LpResult res = solve_node_lp(cuts, NodeLP::root(3, 1), 2);
  res.theta += 0.5;
  EXPECT_FALSE(lp_reference_check(cuts, NodeLP::root(3, 1), 2, res));
}

TEST(LpReferenceCheckTest, RejectsInfeasiblePoint) {
  const std::vector<Cut> cuts{plain_cut({3, 3, 9}, -3)};
  LpResult res = solve_node_lp(cuts, NodeLP::root(3, 1), 2);
  res.x = {1, 1, 1};
  EXPECT_FALSE(lp_reference_check(cuts, NodeLP::root(3, 1), 2, res));
}

TEST(CutLpTest, WorkingRowsReachTheFullPoolOptimum) {
  std::mt19937_64 rng(99);
  const Instance inst = testing::random_instance(14, 4, 99);
  const auto cuts = random_cuts(inst, 60, rng);
  CutLp lp(14, 4);
  for (const Cut& c : cuts) lp.add_cut(c);
  WarmStart warm;
  for (int trial = 0; trial < 100; ++trial) {
    NodeLP node = random_box(14, rng);
    node.cut_pool_version = cuts.size();
    lp.load(node.lower, node.upper, trial % 3 == 0 ? WarmStart{} : warm);
    const LpResult lazy = lp.solve(nullptr);
    const LpResult full = solve_node_lp(cuts, node, 4);
    ASSERT_EQ(lazy.status, full.status) << "trial " << trial;
    if (full.status != NodeLpStatus::kOptimal) continue;
    EXPECT_NEAR(lazy.theta, full.theta, 1e-7 * (1 + std::abs(full.theta))) << "trial " << trial;
    EXPECT_LE(lp.num_active(), cuts.size());
    warm = lp.warm_start();
  }
}

TEST(FractionalIndicesTest, UsesIntegralityTolerance) {
  const std::vector<double> x{0.0, 1e-7, 0.5, 1.0 - 1e-7, 0.999};
  EXPECT_EQ(fractional_indices(x), (std::vector<std::size_t>{2, 4}));
}

}  // namespace
}  // namespace pdsp
