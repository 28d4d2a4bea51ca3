#include "amcflow/io.h"

#include <gtest/gtest.h>

#include "amcflow/generate.h"
#include "amcflow/maxflow.h"
#include "test_util.h"

namespace amcflow {
namespace {

TEST(DimacsTest, ParsesMinimalInstance) {
  McfInstance m = ParseDimacs("c comment\np min 2 1\nn 1 3\nn 2 -3\na 1 2 0 inf 4\n");
  ASSERT_EQ(m.num_nodes(), 2);
  EXPECT_EQ(m.supplies, (std::vector<int64_t>{3, -3}));
  ASSERT_EQ(m.num_arcs(), 1);
  EXPECT_EQ(m.arcs[0].tail, 0);
  EXPECT_EQ(m.arcs[0].head, 1);
  EXPECT_EQ(m.arcs[0].capacity, ExtendedInt::PosInf());
  EXPECT_EQ(m.arcs[0].cost, 4);
}

TEST(DimacsTest, ParsesConvexLines) {
  McfInstance m = ParseDimacs("p min 2 1\nn 1 2\nn 2 -2\nq 1 2 1:2,3:5\n");
  ASSERT_TRUE(m.arcs[0].is_convex());
  EXPECT_EQ(m.arcs[0].convex.size(), 2u);
  EXPECT_EQ(m.arcs[0].CostOf(2), 2 + 5);
}

TEST(DimacsTest, RejectsLowerBoundsWithPosition) {
  try {
    ParseDimacs("p min 2 1\nn 1 1\nn 2 -1\na 1 2 1 3 4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_GT(e.column(), 0);
  }
  EXPECT_THROW(ParseDimacs("p min 2 1\na 1 9 0 1 1\n"), ParseError);
  EXPECT_THROW(ParseDimacs("x\n"), ParseError);
}

TEST(DimacsTest, GeneratedInstancesRoundTrip) {
  for (int seed = 1; seed <= 100; ++seed) {
    GenOptions o;
    o.n = 3 + seed % 20;
    o.seed = seed;
    McfInstance m = seed % 2 == 0 ? GenerateKFlow(o) : GenerateConvex(o);
    std::string text = WriteDimacs(m);
    McfInstance back = ParseDimacs(text);
    EXPECT_EQ(WriteDimacs(back), text) << "seed " << seed;
  }
}

TEST(ProjectFormatTest, ParsesAllArcKinds) {
  ProjectNetwork p = ParseProject(
      "# demo\nnode s\nnode a\nnode t\nstart s\nfinish t\n"
      "arc s a activity 5 2 linear 3\n"
      "arc a t activity 4 -inf linear inf\n"
      "arc s t precedence\n"
      "arc s t activity 8 3 convex 8:1,5:2\n");
  EXPECT_EQ(p.num_nodes(), 3);
  EXPECT_EQ(p.source, 0);
  EXPECT_EQ(p.sink, 2);
  ASSERT_EQ(p.num_arcs(), 4);
  EXPECT_EQ(p.arcs[1].min_duration, ExtendedInt::NegInf());
  EXPECT_EQ(std::get<LinearCost>(p.arcs[1].cost).per_unit, ExtendedInt::PosInf());
  EXPECT_EQ(p.arcs[2].kind, ArcKind::kPrecedence);
  EXPECT_EQ(std::get<ConvexCost>(p.arcs[3].cost).pieces.size(), 2u);
}

TEST(ProjectFormatTest, RejectsNonConvexSlopes) {
  EXPECT_THROW(ParseProject("node s\nnode t\nstart s\nfinish t\n"
                            "arc s t activity 8 3 convex 6:2,4:1\n"),
               ParseError);
  EXPECT_THROW(ParseProject("node s\nstart s\nfinish t\n"), ParseError);
}

TEST(ProjectFormatTest, GeneratedProjectsRoundTrip) {
  for (int seed = 1; seed <= 100; ++seed) {
    GenOptions o;
    o.n = 2 + seed % 25;
    o.seed = seed;
    ProjectNetwork p = GenerateDagProject(o);
    std::string text = WriteProject(p);
    EXPECT_EQ(WriteProject(ParseProject(text)), text) << "seed " << seed;
  }
}

TEST(AssignmentFormatTest, RoundTripWithMissingPairs) {
  AssignmentMatrix c = ParseAssignment("2\n3 -\n- 4\n");
  EXPECT_EQ(c[0][1], std::nullopt);
  EXPECT_EQ(c[1][1], 4);
  EXPECT_EQ(ParseAssignment(WriteAssignment(c)), c);
  EXPECT_THROW(ParseAssignment("2\n1 2\n3\n"), ParseError);
}

TEST(SolutionFormatTest, RoundTrip) {
  McfInstance m = testing::MakeMcf({1, -1}, {{0, 1, 3, 1}});
  FlowResult r = SolveKFlow(m, 1);
  Solution s = ParseSolution(WriteSolution(m, r));
  EXPECT_EQ(s.cost, 3);
  ASSERT_EQ(s.flows.size(), 1u);
  EXPECT_EQ(s.flows[0].tail, 0);
  EXPECT_EQ(s.flows[0].head, 1);
  EXPECT_EQ(s.flows[0].flow, 1);
  EXPECT_FALSE(s.potentials.empty());
}

TEST(CurveCsvTest, HeaderAndRows) {
  TctCurve curve = ComputeTctCurve(testing::MakeProject(2, {MakeActivity(0, 1, 5, 2, 3)}));
  EXPECT_EQ(WriteCurveCsv(curve), "makespan,cost,slope\n5,0,0\n2,9,3\n");
}

TEST(GeneratorTest, SeedsAreDeterministic) {
  GenOptions o;
  o.n = 12;
  o.seed = 77;
  EXPECT_EQ(WriteDimacs(GenerateKFlow(o)), WriteDimacs(GenerateKFlow(o)));
  EXPECT_EQ(WriteProject(GenerateDagProject(o)), WriteProject(GenerateDagProject(o)));
  GenOptions other = o;
  other.seed = 78;
  EXPECT_NE(WriteDimacs(GenerateKFlow(o)), WriteDimacs(GenerateKFlow(other)));
}

TEST(GeneratorTest, AssignmentHasPerfectMatching) {
  GenOptions o;
  o.n = 5;
  o.seed = 3;
  McfInstance m = AssignmentInstance(GenerateAssignment(o), false);
  EXPECT_EQ(m.TotalSupply(), 5);
  EXPECT_EQ(McfMaxFlow(m), ExtendedInt(5));
}

TEST(GeneratorTest, FlowTargetWithinMaxFlow) {
  for (int seed = 1; seed <= 30; ++seed) {
    GenOptions o;
    o.n = 16;
    o.seed = seed;
    o.k = 1000;
    for (const McfInstance& m : {GenerateKFlow(o), GenerateUnitArc(o), GenerateUnitVertex(o)}) {
      ASSERT_TRUE(m.flow_target.has_value());
      EXPECT_LE(ExtendedInt(*m.flow_target), McfMaxFlow(m)) << "seed " << seed;
    }
  }
}

}  // namespace
}  // namespace amcflow
