#include "amcflow/crashing.h"

#include <gtest/gtest.h>

#include "amcflow/labels.h"

namespace amcflow {
namespace {

const ExtendedInt kInf = ExtendedInt::PosInf();

Digraph Graph(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<int> tails, heads;
  for (auto [u, v] : arcs) {
    tails.push_back(u);
    heads.push_back(v);
  }
  return Digraph(n, tails, heads);
}

TEST(DurationCostTest, LinearSubgradients) {
  DurationCost c = DurationCost::FromArc(MakeActivity(0, 1, 5, 2, 3));
  EXPECT_EQ(c.normal(), 5);
  EXPECT_EQ(c.RightSubgradient(5), ExtendedInt(0));
  EXPECT_EQ(c.LeftSubgradient(5), ExtendedInt(3));
  EXPECT_EQ(c.RightSubgradient(3), ExtendedInt(3));
  EXPECT_EQ(c.LeftSubgradient(2), kInf);
  EXPECT_EQ(c.ShortenRoom(5), ExtendedInt(3));
  EXPECT_EQ(c.ShortenRoom(2), ExtendedInt(0));
  EXPECT_EQ(c.LengthenRoom(3), 2);
  EXPECT_EQ(c.ExpediteCost(2), ExtendedInt(9));
  EXPECT_EQ(c.ExpediteCost(1), kInf);
}

TEST(DurationCostTest, UnboundedMinimum) {
  DurationCost c = DurationCost::FromArc(MakeActivity(0, 1, -4, ExtendedInt::NegInf(), 2));
  EXPECT_EQ(c.ShortenRoom(-4), kInf);
  EXPECT_EQ(c.LeftSubgradient(-100), ExtendedInt(2));
  EXPECT_EQ(c.ExpediteCost(-10), ExtendedInt(12));
}

// Slopes 2 on [6, 8] and 7 on [3, 6].
TEST(DurationCostTest, ConvexSubgradientsAroundBreakpoint) {
  DurationCost c = DurationCost::FromArc(MakeConvexActivity(0, 1, 3, {{8, 2}, {6, 7}}));
  EXPECT_EQ(c.RightSubgradient(6), ExtendedInt(2));
  EXPECT_EQ(c.LeftSubgradient(6), ExtendedInt(7));
  EXPECT_EQ(c.LeftSubgradient(7), ExtendedInt(2));
  EXPECT_EQ(c.RightSubgradient(5), ExtendedInt(7));
  EXPECT_EQ(c.ShortenRoom(8), ExtendedInt(2));
  EXPECT_EQ(c.ShortenRoom(6), ExtendedInt(3));
  EXPECT_EQ(c.LengthenRoom(4), 2);
  EXPECT_EQ(c.LengthenRoom(6), 2);
  EXPECT_EQ(c.ExpediteCost(6), ExtendedInt(4));
  EXPECT_EQ(c.ExpediteCost(4), ExtendedInt(4 + 14));
}

TEST(CapacityBoundsTest, TableRows) {
  DurationCost lin = DurationCost::FromArc(MakeActivity(0, 1, 6, 1, 5));
  CapacityBounds slack = ComputeCapacityBounds(lin, 6, 2);
  EXPECT_EQ(slack.lower, 0);
  EXPECT_EQ(slack.upper, ExtendedInt(0));
  CapacityBounds normal = ComputeCapacityBounds(lin, 6, 0);
  EXPECT_EQ(normal.lower, 0);
  EXPECT_EQ(normal.upper, ExtendedInt(5));
  CapacityBounds inner = ComputeCapacityBounds(lin, 4, 0);
  EXPECT_EQ(inner.lower, 5);
  EXPECT_EQ(inner.upper, ExtendedInt(5));
  CapacityBounds at_min = ComputeCapacityBounds(lin, 1, 0);
  EXPECT_EQ(at_min.lower, 5);
  EXPECT_EQ(at_min.upper, kInf);
  DurationCost prec = DurationCost::FromArc(MakePrecedence(0, 1));
  CapacityBounds p = ComputeCapacityBounds(prec, 0, 0);
  EXPECT_EQ(p.lower, 0);
  EXPECT_EQ(p.upper, kInf);
}

TEST(CapacityBoundsTest, ConvexInteriorBreakpoint) {
  DurationCost c = DurationCost::FromArc(MakeConvexActivity(0, 1, 3, {{8, 2}, {6, 7}}));
  CapacityBounds b = ComputeCapacityBounds(c, 6, 0);
  EXPECT_EQ(b.lower, 2);
  EXPECT_EQ(b.upper, ExtendedInt(7));
}

TEST(ResidualTest, Directions) {
  FlowBounds b{{true, true, true}, {3, 0, 4}, {3, 4, 4}};
  std::vector<int64_t> f = {3, 0, 4};
  EXPECT_EQ(Residual(b, f, 0).forward, ExtendedInt(0));
  EXPECT_EQ(Residual(b, f, 0).backward, 0);
  EXPECT_EQ(Residual(b, f, 1).forward, ExtendedInt(4));
  EXPECT_EQ(Residual(b, f, 1).backward, 0);
  EXPECT_EQ(Residual(b, f, 2).forward, ExtendedInt(0));
  EXPECT_EQ(Residual(b, f, 2).backward, 0);
}

std::vector<DurationCost> Costs(const std::vector<ProjectArc>& arcs) {
  std::vector<DurationCost> out;
  for (const ProjectArc& a : arcs) out.push_back(DurationCost::FromArc(a));
  return out;
}

TEST(BuildCrashingGraphTest, PathGraphTakesArcBounds) {
  std::vector<ProjectArc> arcs = {MakeActivity(0, 1, 2, 0, 3), MakeActivity(1, 2, 4, 1, 5)};
  Digraph g = Graph(3, {{0, 1}, {1, 2}});
  std::vector<int64_t> x = {2, 4};
  CrashingGraph cg = BuildCrashingGraph(g, Costs(arcs), x, CpmLabels(g, 0, 2, x));
  EXPECT_EQ(cg.num_critical, 3);
  EXPECT_EQ(cg.arc_class, (std::vector<ArcClass>{ArcClass::kCritical, ArcClass::kCritical}));
  EXPECT_EQ(cg.bounds.upper, (std::vector<ExtendedInt>{3, 5}));
  EXPECT_EQ(cg.bounds.lower, (std::vector<int64_t>{0, 0}));
}

TEST(BuildCrashingGraphTest, DiamondLeavesNonCriticalNodeOut) {
  std::vector<ProjectArc> arcs = {MakeActivity(0, 1, 2, 0, 1), MakeActivity(1, 3, 2, 0, 1),
                                  MakeActivity(0, 2, 1, 0, 1), MakeActivity(2, 3, 1, 0, 1)};
  Digraph g = Graph(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
  std::vector<int64_t> x = {2, 2, 1, 1};
  CrashingGraph cg = BuildCrashingGraph(g, Costs(arcs), x, CpmLabels(g, 0, 3, x));
  EXPECT_FALSE(cg.critical_node[2]);
  EXPECT_EQ(cg.arc_class[2], ArcClass::kOutside);
  EXPECT_EQ(cg.arc_class[3], ArcClass::kOutside);
  EXPECT_FALSE(cg.bounds.active[2]);
  EXPECT_EQ(cg.slack[2], 2);
}

TEST(BuildCrashingGraphTest, SlackArcBetweenCriticalNodes) {
  std::vector<ProjectArc> arcs = {MakeActivity(0, 1, 2, 0, 1), MakeActivity(1, 2, 2, 0, 1),
                                  MakeActivity(0, 2, 1, 0, 4)};
  Digraph g = Graph(3, {{0, 1}, {1, 2}, {0, 2}});
  std::vector<int64_t> x = {2, 2, 1};
  CrashingGraph cg = BuildCrashingGraph(g, Costs(arcs), x, CpmLabels(g, 0, 2, x));
  EXPECT_EQ(cg.arc_class[2], ArcClass::kSlack);
  EXPECT_TRUE(cg.bounds.active[2]);
  EXPECT_EQ(cg.bounds.lower[2], 0);
  EXPECT_EQ(cg.bounds.upper[2], ExtendedInt(0));
}

TEST(BuildCrashingGraphTest, RejectsCrashedArcWithSlack) {
  std::vector<ProjectArc> arcs = {MakeActivity(0, 1, 4, 0, 1), MakeActivity(0, 1, 3, 0, 1)};
  Digraph g = Graph(2, {{0, 1}, {0, 1}});
  std::vector<int64_t> x = {4, 2};  // arc 1 crashed below its normal 3 yet slack 2
  EXPECT_THROW(BuildCrashingGraph(g, Costs(arcs), x, CpmLabels(g, 0, 1, x)), std::logic_error);
}

TEST(RefreshAfterStageTest, CountsLostNodesAndChecksFlow) {
  // Two parallel paths of length 4, the top one crashed by a unit.
  // Restoring it leaves node 2 off every critical path.
  std::vector<ProjectArc> arcs = {MakeActivity(0, 1, 3, 0, 1), MakeActivity(1, 3, 2, 0, 1),
                                  MakeActivity(0, 2, 2, 0, 1), MakeActivity(2, 3, 2, 0, 1)};
  Digraph g = Graph(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
  std::vector<DurationCost> costs = Costs(arcs);
  std::vector<int64_t> x = {2, 2, 2, 2};
  CrashingGraph before = BuildCrashingGraph(g, costs, x, CpmLabels(g, 0, 3, x));
  EXPECT_EQ(before.num_critical, 4);
  std::vector<int64_t> x2 = {3, 2, 2, 2};
  int lost = -1;
  CrashingGraph after = RefreshAfterStage(before, g, costs, x2, CpmLabels(g, 0, 3, x2),
                                          std::vector<int64_t>(4, 0), &lost);
  EXPECT_EQ(lost, 1);
  EXPECT_FALSE(after.critical_node[2]);
  EXPECT_THROW(RefreshAfterStage(before, g, costs, x2, CpmLabels(g, 0, 3, x2),
                                 std::vector<int64_t>{0, 0, 1, 1}),
               std::logic_error);
}

TEST(CheckFlowFeasibleTest, InactiveArcsMustBeEmpty) {
  FlowBounds b{{true, false}, {0, 0}, {5, 0}};
  EXPECT_NO_THROW(CheckFlowFeasible(b, std::vector<int64_t>{5, 0}));
  EXPECT_THROW(CheckFlowFeasible(b, std::vector<int64_t>{6, 0}), std::logic_error);
  EXPECT_THROW(CheckFlowFeasible(b, std::vector<int64_t>{1, 1}), std::logic_error);
}

}  // namespace
}  // namespace amcflow
