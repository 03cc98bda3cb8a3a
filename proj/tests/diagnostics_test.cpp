#include "pdsp/diagnostics.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "pdsp/cuts.hpp"
#include "pdsp/engine.hpp"
#include "pdsp/errors.hpp"
#include "test_support.hpp"

namespace pdsp {
namespace {

using testing::random_instance;

TEST(BinomialTest, StandardConvention) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(5, 5), 1);
  EXPECT_EQ(binomial(3, 4), 0);
  EXPECT_EQ(binomial(52, 5), 2598960);
}

TEST(BinomialTest, LargeValuesSatisfyPascalRule) {
  const BigInt c = binomial(2000, 200);
  EXPECT_GT(c, BigInt(std::numeric_limits<std::uint64_t>::max()));
  EXPECT_EQ(c, binomial(1999, 199) + binomial(1999, 200));
}

TEST(BallCountTest, ClosedForm) {
  EXPECT_EQ(binomial_ball_count(4, 2, 1), 5);
  EXPECT_EQ(binomial_ball_count(4, 2, 0), 1);
  EXPECT_EQ(binomial_ball_count(4, 2, 2), 6);
  EXPECT_EQ(binomial_ball_count(6, 3, 3), 20);
}

TEST(BallCountTest, EnumerationMatchesExamples) {
  EXPECT_EQ(count_within_ball(4, 2, testing::bits_from({1, 1, 0, 0}), 1), 5);
  EXPECT_EQ(count_within_ball(4, 2, testing::bits_from({0, 1, 0, 1}), 0), 1);
  EXPECT_EQ(count_within_ball(6, 3, testing::bits_from({1, 0, 1, 0, 1, 0}), 3), 20);
}

TEST(BallCountTest, EnumerationMatchesClosedFormUpToFourteen) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 1; n <= 14; ++n) {
    for (std::size_t p = 0; p <= n; ++p) {
      const Bits center = testing::random_point(n, p, rng);
      for (std::size_t big_n = 0; big_n <= std::min(p, n - p); ++big_n) {
        EXPECT_EQ(count_within_ball(n, p, center, big_n), binomial_ball_count(n, p, big_n))
            << n << " " << p << " " << big_n;
      }
    }
  }
}

TEST(BallCountTest, RejectsBadCenterAndHugeSets) {
  EXPECT_THROW(count_within_ball(4, 2, testing::bits_from({1, 0, 0, 0}), 1), ArgumentError);
  Bits center(60, 0);
  for (int i = 0; i < 30; ++i) center[i] = 1;
  EXPECT_THROW(count_within_ball(60, 30, center, 1), GuardError);
}

TEST(DistanceIdentityTest, SquaredDistanceIsTwiceTheSwapCount) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + t % 20;
    const std::size_t p = 1 + t % (n - 1);
    const Bits x = testing::random_point(n, p, rng);
    const Bits y = testing::random_point(n, p, rng);
    std::size_t d2 = 0;
    std::size_t only_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
      d2 += x[i] != y[i];
      only_y += y[i] && !x[i];
    }
    EXPECT_EQ(d2, 2 * only_y);
  }
}

// Synthetic two-entry log on four locations: the ratio is set directly
// through LB_1.
std::vector<CutLogEntry> log_with_ratio(const Instance& inst, double ratio) {
  const Bits x0 = testing::bits_from({1, 1, 0, 0});
  const auto g = gradient(inst, std::span<const std::uint8_t>(x0));
  double norm = 0.0;
  for (double v : g) norm += v * v;
  norm = std::sqrt(norm);
  const double f0 = objective(inst, x0);
  return {CutLogEntry{0, f0, std::nan(""), f0, {0, 1}},
          CutLogEntry{1, f0 + ratio * norm, f0 + ratio * norm + 1, f0 + ratio * norm, {2, 3}}};
}

TEST(CutStrengthTest, RatioSelectsBallRadius) {
  const Instance inst = random_instance(4, 2, 3);
  const auto one = cut_strength(inst, log_with_ratio(inst, 1.5), 0, 1);
  EXPECT_NEAR(one.ratio, 1.5, 1e-12);
  EXPECT_EQ(one.n_l, 1u);
  EXPECT_EQ(one.eliminated_count, 5);

  const auto zero = cut_strength(inst, log_with_ratio(inst, 0.0), 0, 1);
  EXPECT_EQ(zero.n_l, 0u);
  EXPECT_EQ(zero.eliminated_count, 1);

  const auto all = cut_strength(inst, log_with_ratio(inst, 100.0), 0, 1);
  EXPECT_EQ(all.n_l, 2u);
  EXPECT_EQ(all.eliminated_count, 6);
}

TEST(CutStrengthTest, BoundaryRatioIsStrict) {
  const Instance inst = random_instance(4, 2, 3);
  const auto s = cut_strength(inst, log_with_ratio(inst, std::sqrt(2.0)), 0, 1);
  EXPECT_EQ(s.n_l, 0u);
}

TEST(CutStrengthTest, RejectsBadIndicesAndZeroGradient) {
  const Instance inst = random_instance(4, 2, 3);
  const auto log = log_with_ratio(inst, 1.0);
  EXPECT_THROW(cut_strength(inst, log, 1, 1), ArgumentError);
  EXPECT_THROW(cut_strength(inst, log, 0, 2), ArgumentError);
  const Instance flat = make_instance("flat", DenseMatrix(4), 2);
  EXPECT_THROW(cut_strength(flat, log, 0, 1), ArgumentError);
}

TEST(CutStrengthTest, ReportOnRealSolveIsNonNegative) {
  const Instance inst = random_instance(25, 3, 6);
  const SolveReport rep = solve_single_tree(inst);
  const auto report = cut_strength_report(inst, rep.cut_log);
  EXPECT_EQ(report.size(), rep.cut_log.size() - 1);
  for (const CutStrength& s : report) {
    EXPECT_GE(s.ratio, 0.0);
    EXPECT_GE(s.eliminated_count, 1);
  }
}

TEST(CutLogAuditTest, CompletedSolvesAreClean) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = random_instance(15 + 3 * seed, 2 + seed % 4, seed, 1.0, 1 + seed % 4);
    for (auto solve : {solve_single_tree, solve_multi_tree}) {
      const SolveReport rep = solve(inst, {});
      const auto violations = lemma1_audit(inst, rep.cut_log);
      EXPECT_TRUE(violations.empty()) << violations.front().message;
    }
  }
}

TEST(CutLogAuditTest, FlagsFabricatedNonImprovingCandidate) {
  const Instance inst = random_instance(4, 2, 3);
  auto log = log_with_ratio(inst, 1.0);
  log[1].theta = log[0].f - 1.0;
  const auto v = lemma1_audit(inst, log);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().kind, AuditViolation::Kind::kImprovement);
}

TEST(CutLogAuditTest, FlagsThetaAboveTheCut) {
  const Instance inst = random_instance(4, 2, 3);
  auto log = log_with_ratio(inst, 1.0);
  log[1].theta = 1e6;
  const auto v = lemma1_audit(inst, log);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().kind, AuditViolation::Kind::kGradientBound);
}

TEST(CutLogAuditTest, SingleEntryHasNoPairs) {
  const Instance inst = random_instance(4, 2, 3);
  auto log = log_with_ratio(inst, 1.0);
  log.pop_back();
  EXPECT_TRUE(lemma1_audit(inst, log).empty());
}

}  // namespace
}  // namespace pdsp
