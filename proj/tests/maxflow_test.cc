#include "amcflow/maxflow.h"

#include <gtest/gtest.h>

#include "amcflow/generate.h"
#include "amcflow/oracle.h"
#include "test_util.h"

namespace amcflow {
namespace {

const ExtendedInt kInf = ExtendedInt::PosInf();

struct Network {
  Digraph g;
  FlowBounds bounds;
};

Network Make(int n, const std::vector<std::tuple<int, int, int64_t, ExtendedInt>>& arcs) {
  std::vector<int> tails, heads;
  Network net;
  for (auto [u, v, lo, hi] : arcs) {
    tails.push_back(u);
    heads.push_back(v);
    net.bounds.active.push_back(true);
    net.bounds.lower.push_back(lo);
    net.bounds.upper.push_back(hi);
  }
  net.g = Digraph(n, tails, heads);
  return net;
}

TEST(AugmentToMaxTest, UnitPathNeedsOneAugmentation) {
  Network net = Make(3, {{0, 1, 0, 1}, {1, 2, 0, 1}});
  FlowState state{{0, 0}, 0};
  AugmentOutcome out = AugmentToMax(net.g, 0, 2, net.bounds, state);
  EXPECT_EQ(state.value, 1);
  EXPECT_EQ(out.augmentations, 1);
  EXPECT_FALSE(out.unbounded);
  AugmentOutcome again = AugmentToMax(net.g, 0, 2, net.bounds, state);
  EXPECT_EQ(again.augmentations, 0);
  EXPECT_EQ(state.flow, (std::vector<int64_t>{1, 1}));
}

TEST(AugmentToMaxTest, RespectsLowerBoundsAndLimit) {
  // Arc 1 must keep at least 2 units; the flow starts feasible.
  Network net = Make(3, {{0, 1, 0, 5}, {1, 2, 2, 4}, {0, 2, 0, 3}});
  FlowState state{{2, 2, 0}, 2};
  AugmentToMax(net.g, 0, 2, net.bounds, state, 6);
  EXPECT_EQ(state.value, 6);
  FlowState full{{2, 2, 0}, 2};
  AugmentToMax(net.g, 0, 2, net.bounds, full);
  EXPECT_EQ(full.value, 7);
  EXPECT_NO_THROW(CheckFlowFeasible(net.bounds, full.flow));
}

TEST(AugmentToMaxTest, DetectsUnboundedPath) {
  Network net = Make(2, {{0, 1, 0, kInf}});
  FlowState state{{0}, 0};
  EXPECT_TRUE(AugmentToMax(net.g, 0, 1, net.bounds, state).unbounded);
  EXPECT_EQ(state.value, 0);
  FlowState capped{{0}, 0};
  EXPECT_FALSE(AugmentToMax(net.g, 0, 1, net.bounds, capped, 4).unbounded);
  EXPECT_EQ(capped.value, 4);
}

TEST(McfMaxFlowTest, CompleteBipartiteThreeByThree) {
  AssignmentMatrix c(3, std::vector<std::optional<int64_t>>(3, 1));
  EXPECT_EQ(McfMaxFlow(AssignmentInstance(c, false)), ExtendedInt(3));
}

TEST(McfMaxFlowTest, AgreesWithReferenceFeasibility) {
  for (int seed = 1; seed <= 100; ++seed) {
    GenOptions o;
    o.n = 3 + seed % 10;
    o.seed = seed;
    McfInstance m = GenerateKFlow(o);
    ExtendedInt max_flow = McfMaxFlow(m);
    ASSERT_TRUE(max_flow.is_finite() || m.TotalSupply() > 0);
    int64_t k = Min(max_flow, ExtendedInt(m.TotalSupply())).value();
    EXPECT_TRUE(oracle::SspMinCostFlow(m, k).feasible) << "seed " << seed;
    if (max_flow < ExtendedInt(m.TotalSupply())) {
      EXPECT_FALSE(oracle::SspMinCostFlow(m, k + 1).feasible) << "seed " << seed;
    }
  }
}

TEST(ExpandReachTest, StopsAtSaturatedCut) {
  Network net = Make(4, {{0, 1, 0, 3}, {1, 2, 0, 1}, {2, 3, 0, 3}});
  std::vector<int64_t> flow = {1, 1, 1};
  std::vector<bool> in_set(4, false);
  in_set[0] = true;
  std::vector<int> start = {0};
  std::vector<int> reached = ExpandReach(net.g, net.bounds, flow, start, in_set);
  EXPECT_EQ(reached, (std::vector<int>{1}));
  EXPECT_FALSE(in_set[3]);
  // Relaxing the bottleneck arc reaches at least one new node.
  net.bounds.upper[1] = 2;
  std::vector<int> frontier = {1};
  std::vector<int> more = ExpandReach(net.g, net.bounds, flow, frontier, in_set);
  EXPECT_EQ(more, (std::vector<int>{2, 3}));
  EXPECT_TRUE(in_set[3]);
}

TEST(ExpandReachTest, BackwardResidualAboveLowerBound) {
  // Arc 1 points into the source side and carries more than its lower
  // bound, so node 2 is reachable against it.
  Network net = Make(3, {{0, 1, 0, 1}, {2, 1, 1, 5}, {2, 0, 0, 0}});
  std::vector<int64_t> flow = {1, 3, 0};
  std::vector<bool> in_set(3, false);
  in_set[0] = true;
  std::vector<int> start = {0};
  std::vector<int> reached = ExpandReach(net.g, net.bounds, flow, start, in_set);
  EXPECT_TRUE(reached.empty());
  in_set[1] = true;
  std::vector<int> from_one = {1};
  EXPECT_EQ(ExpandReach(net.g, net.bounds, flow, from_one, in_set), (std::vector<int>{2}));
}

TEST(ExpandReachTest, InvisibleArcAtEqualBounds) {
  Network net = Make(2, {{0, 1, 4, 4}});
  std::vector<int64_t> flow = {4};
  std::vector<bool> in_set = {true, false};
  std::vector<int> start = {0};
  EXPECT_TRUE(ExpandReach(net.g, net.bounds, flow, start, in_set).empty());
}

}  // namespace
}  // namespace amcflow
