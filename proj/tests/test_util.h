// Shared helpers for the unit tests and the acceptance suite: small
// instance builders and a stage-by-stage audit of the engine.

#ifndef AMCFLOW_TESTS_TEST_UTIL_H_
#define AMCFLOW_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amcflow/amc.h"
#include "amcflow/core_model.h"
#include "amcflow/mcf_api.h"

namespace amcflow::testing {

// Nodes 0..n-1 named by index, source 0, sink n-1.
ProjectNetwork MakeProject(int n, std::vector<ProjectArc> arcs);

// Supplies plus linear arcs {tail, head, cost, capacity}.
struct LinearArc {
  int tail;
  int head;
  int64_t cost;
  ExtendedInt capacity;
};
McfInstance MakeMcf(std::vector<int64_t> supplies, const std::vector<LinearArc>& arcs,
                    std::optional<int64_t> k = std::nullopt);

// Longest-path labels by Bellman-Ford, independent of the engine's label
// code. Requires every node on a source-sink path and no positive cycle.
struct SimpleLabels {
  std::vector<int64_t> earliest;
  std::vector<int64_t> latest;
  int64_t makespan = 0;
};
SimpleLabels BellmanFordLabels(const Digraph& g, int source, int sink,
                               const std::vector<int64_t>& x);

// Per-stage invariant violations found by AuditedRun.
struct AuditReport {
  int64_t stages = 0;
  int64_t cuts = 0;
  int64_t truncations = 0;
  int64_t nodes = 0;
  // Cut S_q is not a minimum cut, or the layers do not partition V_c.
  int64_t nesting_violations = 0;
  // Carried flow infeasible for the crashing graph after a stage.
  int64_t feasibility_violations = 0;
  // A relaxed bottleneck added no node to the source side.
  int64_t reach_violations = 0;
  // Negative slack, duration out of range, or labels that disagree with an
  // independent longest-path computation.
  int64_t slack_violations = 0;
  // Stages after which |V_c| dropped, and the nodes lost.
  int64_t shrinking_stages = 0;
  int64_t critical_nodes_lost = 0;
  // A stage with more cuts than critical nodes, or a solve with more
  // truncations than nodes.
  int64_t cut_bound_violations = 0;
  int64_t max_cuts_in_stage = 0;

  int64_t flow_value = 0;
  int64_t makespan = 0;
  int64_t cost = 0;
  Termination termination = Termination::kInfiniteCostCut;
  std::string first_problem;

  void Add(const AuditReport& o);
  bool StructureOk() const {
    return nesting_violations == 0 && feasibility_violations == 0 && reach_violations == 0 &&
           slack_violations == 0;
  }
  bool CutBoundsOk() const { return cut_bound_violations == 0; }
};

// Runs the engine through its public step API with the same loop as
// AmcEngine::Run (no makespan target) and checks every stage from outside.
AuditReport AuditedRun(const ProjectNetwork& p, std::optional<int64_t> flow_target);

// Dual project of an MCF instance, audited up to flow value K.
AuditReport AuditKFlow(const McfInstance& m, int64_t k);

}  // namespace amcflow::testing

#endif  // AMCFLOW_TESTS_TEST_UTIL_H_
