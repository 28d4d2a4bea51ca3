// Augmenting-path max flow with lower bounds on the active arcs of a graph.

#ifndef AMCFLOW_MAXFLOW_H_
#define AMCFLOW_MAXFLOW_H_

#include <cstdint>
#include <vector>

#include "amcflow/core_model.h"
#include "amcflow/crashing.h"
#include "amcflow/digraph.h"
#include "amcflow/numeric.h"

namespace amcflow {

struct FlowState {
  std::vector<int64_t> flow;
  int64_t value = 0;
};

struct AugmentOutcome {
  int64_t augmentations = 0;
  // An augmenting path of infinite residual capacity exists (and `limit`
  // was infinite), so the max flow is unbounded. Flow is left unchanged
  // by that path.
  bool unbounded = false;
};

// Breadth-first augmenting paths, arcs scanned in index order, starting from
// the feasible flow in `state`. Stops once the value reaches `limit`.
AugmentOutcome AugmentToMax(const Digraph& g, int source, int sink, const FlowBounds& bounds,
                            FlowState& state, ExtendedInt limit = ExtendedInt::PosInf());

// Incremental residual reachability. Nodes already marked in `in_set` are
// never rescanned; newly reached nodes are marked and returned in BFS order.
std::vector<int> ExpandReach(const Digraph& g, const FlowBounds& bounds,
                             std::span<const int64_t> flow, std::span<const int> frontier,
                             std::vector<bool>& in_set);

// Max flow value of an MCF instance in s,t form (after NormalizeToSt).
ExtendedInt McfMaxFlow(const McfInstance& m);

}  // namespace amcflow

#endif  // AMCFLOW_MAXFLOW_H_
