#include "amcflow/crashing.h"

#include <stdexcept>
#include <string>

namespace amcflow {

DurationCost DurationCost::FromArc(const ProjectArc& arc) {
  DurationCost c;
  c.minimum_ = arc.min_duration;
  if (const auto* lin = std::get_if<LinearCost>(&arc.cost)) {
    c.breakpoints_ = {arc.normal_duration};
    c.slopes_ = {lin->per_unit};
  } else {
    for (const ConvexPiece& p : std::get<ConvexCost>(arc.cost).pieces) {
      c.breakpoints_.push_back(p.breakpoint);
      c.slopes_.push_back(p.slope);
    }
  }
  return c;
}

ExtendedInt DurationCost::LowerEnd(size_t p) const {
  return p + 1 < breakpoints_.size() ? ExtendedInt(breakpoints_[p + 1]) : minimum_;
}

size_t DurationCost::PieceBelow(int64_t x) const {
  for (size_t p = 0; p < breakpoints_.size(); ++p) {
    if (LowerEnd(p) < ExtendedInt(x)) return p;
  }
  return breakpoints_.size();
}

ExtendedInt DurationCost::RightSubgradient(int64_t x) const {
  if (x >= normal()) return 0;
  return slopes_[PieceBelow(x + 1)];
}

ExtendedInt DurationCost::LeftSubgradient(int64_t x) const {
  size_t p = PieceBelow(x);
  return p == breakpoints_.size() ? ExtendedInt::PosInf() : slopes_[p];
}

ExtendedInt DurationCost::ShortenRoom(int64_t x) const {
  size_t p = PieceBelow(x);
  if (p == breakpoints_.size()) return 0;
  return ExtendedInt(x) - LowerEnd(p);
}

int64_t DurationCost::LengthenRoom(int64_t x) const {
  if (x >= normal()) throw std::logic_error("LengthenRoom at the normal duration");
  return breakpoints_[PieceBelow(x + 1)] - x;
}

ExtendedInt DurationCost::ExpediteCost(int64_t x) const {
  if (ExtendedInt(x) < minimum_) return ExtendedInt::PosInf();
  ExtendedInt total = 0;
  for (size_t p = 0; p < breakpoints_.size() && x < breakpoints_[p]; ++p) {
    ExtendedInt low = LowerEnd(p);
    int64_t bottom = low.is_finite() && low.value() > x ? low.value() : x;
    int64_t length = breakpoints_[p] - bottom;
    if (slopes_[p].is_pos_inf()) return ExtendedInt::PosInf();
    total = total + ExtendedInt(CheckedMul(length, slopes_[p].value()));
  }
  return total;
}

CapacityBounds ComputeCapacityBounds(const DurationCost& cost, int64_t x, int64_t slack) {
  if (slack >= 1) return {0, 0};
  return {cost.RightSubgradient(x).value(), cost.LeftSubgradient(x)};
}

CrashingGraph BuildCrashingGraph(const Digraph& g, std::span<const DurationCost> costs,
                                 std::span<const int64_t> x, const NodeLabels& labels) {
  const int n = g.num_nodes();
  const int m = g.num_arcs();
  CrashingGraph cg;
  cg.critical_node.resize(n);
  for (int v = 0; v < n; ++v) {
    cg.critical_node[v] = labels.IsCritical(v);
    cg.num_critical += cg.critical_node[v];
  }
  cg.arc_class.assign(m, ArcClass::kOutside);
  cg.slack.resize(m);
  cg.bounds.active.assign(m, false);
  cg.bounds.lower.assign(m, 0);
  cg.bounds.upper.assign(m, 0);
  for (int a = 0; a < m; ++a) {
    int i = g.Tail(a), j = g.Head(a);
    cg.slack[a] = Slack(labels, i, j, x[a]);
    if (cg.slack[a] < 0) throw std::logic_error("negative slack on arc " + std::to_string(a));
    if (cg.slack[a] > 0 && x[a] != costs[a].normal()) {
      throw std::logic_error("crashed arc with positive slack: " + std::to_string(a));
    }
    if (!cg.critical_node[i] || !cg.critical_node[j]) continue;
    cg.arc_class[a] = cg.slack[a] == 0 ? ArcClass::kCritical : ArcClass::kSlack;
    CapacityBounds b = ComputeCapacityBounds(costs[a], x[a], cg.slack[a]);
    cg.bounds.active[a] = true;
    cg.bounds.lower[a] = b.lower;
    cg.bounds.upper[a] = b.upper;
  }
  return cg;
}

void CheckFlowFeasible(const FlowBounds& b, std::span<const int64_t> flow) {
  for (int a = 0; a < b.num_arcs(); ++a) {
    bool ok = b.active[a] ? (flow[a] >= b.lower[a] && ExtendedInt(flow[a]) <= b.upper[a])
                          : flow[a] == 0;
    if (!ok) {
      throw std::logic_error("carried flow infeasible on arc " + std::to_string(a) + ": f=" +
                             std::to_string(flow[a]) + " bounds [" + std::to_string(b.lower[a]) +
                             ", " + b.upper[a].ToString() + "]");
    }
  }
}

CrashingGraph RefreshAfterStage(const CrashingGraph& previous, const Digraph& g,
                                std::span<const DurationCost> costs, std::span<const int64_t> x,
                                const NodeLabels& labels, std::span<const int64_t> flow,
                                int* lost) {
  CrashingGraph next = BuildCrashingGraph(g, costs, x, labels);
  int count = 0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (previous.critical_node[v] && !next.critical_node[v]) ++count;
  }
  if (lost) *lost = count;
  CheckFlowFeasible(next.bounds, flow);
  return next;
}

}  // namespace amcflow
