// Min-cost K-flow, assignment and convex K-flow through the dual
// time-cost tradeoff view, plus TCT curves and optimality certificates.

#ifndef AMCFLOW_MCF_API_H_
#define AMCFLOW_MCF_API_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amcflow/amc.h"
#include "amcflow/core_model.h"

namespace amcflow {

// K exceeds the max flow (or the instance has no feasible K-flow).
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, ExtendedInt max_flow)
      : std::runtime_error(what), max_flow_(max_flow) {}
  ExtendedInt max_flow() const { return max_flow_; }

 private:
  ExtendedInt max_flow_;
};

// The dual project of an s,t-form instance. Project node v is st-form node
// v and project arc a is st-form arc a.
struct TctMapping {
  StForm st;
  ProjectNetwork project;
};

// Arc cost c, capacity u becomes an activity with d = -c, w = u and no
// minimum duration. Infinite capacity fixes the duration at -c. Convex
// arcs become convex activities with breakpoints -c_p.
TctMapping TctFromMcf(const McfInstance& m, bool force_super = false);

struct KFlowOptions {
  // Shift source and sink arc costs so every node starts critical. Needs a
  // bipartite s,t form and K equal to the total supply.
  bool warm_start = false;
  // Longest-path warm start for general graphs (any K = total supply).
  bool general_warm_start = false;
  bool check_invariants = true;
  TraceSink trace;
};

struct FlowResult {
  std::vector<int64_t> flow;  // per original arc
  int64_t value = 0;
  int64_t objective = 0;
  // Per s,t-form node (original nodes first). Unset on nodes that lie on no
  // source-to-sink path.
  std::vector<std::optional<int64_t>> potential;
  // Arcs critical in the final project schedule, per original arc.
  std::vector<bool> critical;
  // The dual schedule at termination.
  int64_t makespan = 0;
  int64_t expedite_cost = 0;
  SolveStats stats;
  int critical_nodes = 0;
  int nodes = 0;
};

// Solves for exactly K units (K defaults to m.flow_target, else the max
// flow). Throws InfeasibleError if K exceeds the max flow.
FlowResult SolveKFlow(const McfInstance& m, std::optional<int64_t> k = std::nullopt,
                      const KFlowOptions& options = {});

// Same engine; the name documents that convex arcs are supported.
FlowResult SolveConvexKFlow(const McfInstance& m, std::optional<int64_t> k = std::nullopt,
                            const KFlowOptions& options = {});

// Square matrix; nullopt marks a missing pair.
using AssignmentMatrix = std::vector<std::vector<std::optional<int64_t>>>;

struct AssignmentResult {
  std::vector<int> match;  // match[row] = column
  int64_t objective = 0;
  FlowResult flow;
};

AssignmentResult SolveAssignment(const AssignmentMatrix& costs, bool maximize,
                                 const KFlowOptions& options = {});

// The min-cost flow instance of an assignment problem: rows are supply
// nodes 0..n-1, columns demand nodes n..2n-1. Row-major arc order over the
// present entries. Maximization negates the weights.
McfInstance AssignmentInstance(const AssignmentMatrix& costs, bool maximize);

// Replaces the normal durations of the source arcs (-u_i) and sink arcs
// (-v_j) of a bipartite dual project, v_j = max_i d_ij and
// u_i = max_j (d_ij - v_j). Returns the constant by which the flow
// objective of a K = B flow drops, sum u_i b_i + sum v_j b_j.
int64_t WarmStartBipartite(TctMapping& tct);

// Longest-path variant: source arc (s,v) gets ET(v), sink arc (v,t) gets the
// longest v-to-t distance. Same return convention.
int64_t WarmStartGeneral(TctMapping& tct);

struct TctCurve {
  std::vector<CurvePoint> points;  // decreasing makespan
  std::vector<int64_t> slopes;     // slopes[i]: cost per unit from points[i] to points[i+1]
  Termination termination = Termination::kInfiniteCostCut;
  bool reached_minimum = false;
  std::string notice;
  SolveStats stats;

  // Z(T) by linear interpolation, nullopt outside the covered range.
  std::optional<int64_t> Cost(int64_t makespan) const;
};

// Curve from the normal makespan down to `target` or the minimum makespan.
TctCurve ComputeTctCurve(const ProjectNetwork& p, std::optional<int64_t> target = std::nullopt,
                         const SolveOptions& options = {});

struct CertificateReport {
  std::vector<Diagnostic> violations;
  bool ok() const { return violations.empty(); }
  std::string Summary() const;
};

// Checks (a) feasibility and value K, (b) c + pi_j - pi_i >= 0 on every
// residual forward arc and (c) <= 0 on every arc carrying flow, each piece
// of a convex arc separately. `potential` is indexed like the s,t form of m
// or by the original nodes only; missing super-node potentials are chosen
// from the interval the super arcs allow.
CertificateReport VerifyOptimality(const McfInstance& m, int64_t k,
                                   const std::vector<int64_t>& flow,
                                   const std::vector<std::optional<int64_t>>& potential);

}  // namespace amcflow

#endif  // AMCFLOW_MCF_API_H_
