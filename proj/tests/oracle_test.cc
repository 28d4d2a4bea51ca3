#include "amcflow/oracle.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace amcflow::oracle {
namespace {

using testing::MakeMcf;
using testing::MakeProject;

TEST(PdSolveTest, SingleArcCurve) {
  PdCurve c = PdSolve(MakeProject(2, {MakeActivity(0, 1, 3, 1, 2)}));
  EXPECT_EQ(c.normal_makespan, 3);
  EXPECT_EQ(c.cost, (std::vector<int64_t>{0, 2, 4}));
  EXPECT_EQ(c.min_makespan(), 1);
  EXPECT_TRUE(c.reached_minimum);
  EXPECT_EQ(c.Cost(2), 2);
  EXPECT_EQ(c.Cost(0), std::nullopt);
}

TEST(PdSolveTest, ParallelPathsMustBothShorten) {
  PdCurve c = PdSolve(MakeProject(2, {MakeActivity(0, 1, 4, 2, 1), MakeActivity(0, 1, 3, 1, 2)}));
  // T = 4 -> 3 costs 1; below 3 both shorten for 3 per unit.
  EXPECT_EQ(c.cost, (std::vector<int64_t>{0, 1, 4}));
}

TEST(PdSolveTest, CurvesAreConvex) {
  ProjectNetwork p = MakeProject(
      4, {MakeActivity(0, 1, 5, 1, 2), MakeActivity(1, 3, 4, 2, 1), MakeActivity(0, 2, 3, 1, 4),
          MakeActivity(2, 3, 4, 1, 1), MakeActivity(1, 2, 1, 0, 3)});
  PdCurve c = PdSolve(p);
  for (size_t i = 2; i < c.cost.size(); ++i) {
    EXPECT_LE(c.cost[i - 1] - c.cost[i - 2], c.cost[i] - c.cost[i - 1]);
  }
}

TEST(PdSolveTest, TargetStops) {
  PdCurve c = PdSolve(MakeProject(2, {MakeActivity(0, 1, 9, 0, 1)}), 6);
  EXPECT_EQ(c.min_makespan(), 6);
  EXPECT_FALSE(c.reached_minimum);
}

TEST(SspMinCostFlowTest, ParallelArcs) {
  McfInstance m = MakeMcf({2, -2}, {{0, 1, 1, 1}, {0, 1, 5, 1}});
  SspResult two = SspMinCostFlow(m, 2);
  EXPECT_TRUE(two.feasible);
  EXPECT_EQ(two.objective, 6);
  EXPECT_EQ(two.augmentations, 2);
  SspResult zero = SspMinCostFlow(m, 0);
  EXPECT_TRUE(zero.feasible);
  EXPECT_EQ(zero.objective, 0);
  EXPECT_FALSE(SspMinCostFlow(m, 3).feasible);
}

TEST(SspMinCostFlowTest, NegativeCostsUseCheapestPath) {
  McfInstance m = MakeMcf({1, 0, -1}, {{0, 1, -3, 1}, {1, 2, 1, 1}, {0, 2, -1, 1}});
  EXPECT_EQ(SspMinCostFlow(m, 1).objective, -2);
}

TEST(BruteAssignmentTest, SmallCases) {
  BruteAssignmentResult r = BruteAssignment({{10, 1}, {1, 10}}, true);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.objective, 20);
  EXPECT_EQ(r.match, (std::vector<int>{0, 1}));
  EXPECT_EQ(BruteAssignment({{4}}, false).objective, 4);
  std::vector<std::vector<std::optional<int64_t>>> constant(4, {3, 3, 3, 3});
  EXPECT_EQ(BruteAssignment(constant, false).objective, 12);
}

TEST(BruteAssignmentTest, MissingPairsCanMakeItInfeasible) {
  std::vector<std::vector<std::optional<int64_t>>> c = {{1, std::nullopt},
                                                        {2, std::nullopt}};
  EXPECT_FALSE(BruteAssignment(c, false).feasible);
}

}  // namespace
}  // namespace amcflow::oracle
