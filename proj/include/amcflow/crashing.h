// Crashing graph: the subgraph induced on critical nodes, with capacity
// bounds that encode marginal expediting costs.

#ifndef AMCFLOW_CRASHING_H_
#define AMCFLOW_CRASHING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "amcflow/core_model.h"
#include "amcflow/digraph.h"
#include "amcflow/labels.h"
#include "amcflow/numeric.h"

namespace amcflow {

// Expediting cost of one arc as a convex piecewise-linear function of its
// duration x <= d. Linear costs are the one-piece case.
class DurationCost {
 public:
  static DurationCost FromArc(const ProjectArc& arc);

  int64_t normal() const { return breakpoints_.front(); }
  const ExtendedInt& minimum() const { return minimum_; }

  // c+(x) = c(x) - c(x+1): saving from lengthening by one unit (0 at x = d).
  ExtendedInt RightSubgradient(int64_t x) const;
  // c-(x) = c(x-1) - c(x): cost of shortening by one unit (inf at the minimum).
  ExtendedInt LeftSubgradient(int64_t x) const;
  // How far x can drop while c-(x) stays the same; PosInf if unbounded.
  ExtendedInt ShortenRoom(int64_t x) const;
  // How far x can rise while c+(x) stays the same; requires x < d.
  int64_t LengthenRoom(int64_t x) const;
  // c(x), the total cost of expediting from d down to x.
  ExtendedInt ExpediteCost(int64_t x) const;

 private:
  // Index p of the piece with lower end < x <= upper end, i.e. the piece a
  // unit decrease from x is charged on. Returns size() when x <= minimum.
  size_t PieceBelow(int64_t x) const;
  // Lower end of piece p; breakpoint p+1 or the minimum.
  ExtendedInt LowerEnd(size_t p) const;

  std::vector<int64_t> breakpoints_;  // b1 = d > b2 > ...
  std::vector<ExtendedInt> slopes_;   // strictly increasing
  ExtendedInt minimum_;
};

struct CapacityBounds {
  int64_t lower = 0;
  ExtendedInt upper = 0;
};

// (0,0) for a positive-slack arc, else (c+(x), c-(x)).
CapacityBounds ComputeCapacityBounds(const DurationCost& cost, int64_t x, int64_t slack);

enum class ArcClass : uint8_t {
  kCritical,  // both endpoints critical, slack 0
  kSlack,     // both endpoints critical, positive slack
  kOutside,   // some endpoint non-critical
};

// Per-arc bounds and membership; arcs outside the crashing graph are inactive.
struct FlowBounds {
  std::vector<bool> active;
  std::vector<int64_t> lower;
  std::vector<ExtendedInt> upper;

  int num_arcs() const { return static_cast<int>(active.size()); }
};

struct CrashingGraph {
  std::vector<bool> critical_node;
  int num_critical = 0;
  std::vector<ArcClass> arc_class;
  std::vector<int64_t> slack;
  FlowBounds bounds;
};

struct ResidualView {
  ExtendedInt forward;   // u - f
  int64_t backward = 0;  // f - l
};

inline ResidualView Residual(const FlowBounds& b, std::span<const int64_t> flow, int a) {
  return {b.upper[a] - ExtendedInt(flow[a]), flow[a] - b.lower[a]};
}

CrashingGraph BuildCrashingGraph(const Digraph& g, std::span<const DurationCost> costs,
                                 std::span<const int64_t> x, const NodeLabels& labels);

// Rebuilds the crashing graph for labels of the next stage and stores in
// `lost` the number of nodes that were critical under `previous` but are not
// now. The critical set can shrink when a critical path crosses a cut
// forward, backward over an arc at its normal duration, and forward again.
// Throws std::logic_error if `flow` violates a new bound.
CrashingGraph RefreshAfterStage(const CrashingGraph& previous, const Digraph& g,
                                std::span<const DurationCost> costs, std::span<const int64_t> x,
                                const NodeLabels& labels, std::span<const int64_t> flow,
                                int* lost = nullptr);

// Throws std::logic_error unless lower <= flow <= upper on active arcs and
// flow is zero elsewhere.
void CheckFlowFeasible(const FlowBounds& b, std::span<const int64_t> flow);

}  // namespace amcflow

#endif  // AMCFLOW_CRASHING_H_
