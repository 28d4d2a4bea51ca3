#include "amcflow/mcf_api.h"

#include <algorithm>
#include <sstream>

#include "amcflow/labels.h"
#include "amcflow/maxflow.h"

namespace amcflow {
namespace {

ProjectArc ArcFromMcf(const McfArc& a) {
  if (!a.is_convex()) {
    if (a.capacity.is_pos_inf()) return MakeActivity(a.tail, a.head, -a.cost, -a.cost,
                                                     ExtendedInt::PosInf());
    return MakeActivity(a.tail, a.head, -a.cost, ExtendedInt::NegInf(), a.capacity);
  }
  // Merge equal-cost pieces, then accumulate capacities into slopes.
  std::vector<FlowPiece> merged;
  for (const FlowPiece& p : a.convex) {
    if (!merged.empty() && merged.back().unit_cost == p.unit_cost) {
      merged.back().capacity = merged.back().capacity + p.capacity;
    } else {
      merged.push_back(p);
    }
  }
  ExtendedInt minimum = ExtendedInt::NegInf();
  if (merged.back().capacity.is_pos_inf()) {
    minimum = -merged.back().unit_cost;
    merged.pop_back();
  }
  if (merged.empty()) {
    return MakeActivity(a.tail, a.head, -a.convex.front().unit_cost, minimum,
                        ExtendedInt::PosInf());
  }
  if (merged.size() == 1 && minimum.is_neg_inf()) {
    return MakeActivity(a.tail, a.head, -merged[0].unit_cost, minimum, merged[0].capacity);
  }
  std::vector<ConvexPiece> pieces;
  int64_t slope = 0;
  for (const FlowPiece& p : merged) {
    slope = CheckedAdd(slope, p.capacity.value());
    pieces.push_back({-p.unit_cost, slope});
  }
  return MakeConvexActivity(a.tail, a.head, minimum, std::move(pieces));
}

bool IsSuperForm(const StForm& st) { return st.source == st.original_nodes; }

// Flow objective of the s,t-form arcs carrying `flow` (original arcs first).
int64_t FlowCost(const McfInstance& m, std::span<const int64_t> flow) {
  int64_t total = 0;
  for (int a = 0; a < m.num_arcs(); ++a) total = CheckedAdd(total, m.arcs[a].CostOf(flow[a]));
  return total;
}

}  // namespace

TctMapping TctFromMcf(const McfInstance& m, bool force_super) {
  TctMapping tct;
  tct.st = NormalizeToSt(m, force_super);
  const McfInstance& inst = tct.st.instance;
  for (int v = 0; v < inst.num_nodes(); ++v) tct.project.AddNode();
  tct.project.source = tct.st.source;
  tct.project.sink = tct.st.sink;
  for (const McfArc& a : inst.arcs) tct.project.arcs.push_back(ArcFromMcf(a));
  return tct;
}

int64_t WarmStartBipartite(TctMapping& tct) {
  const StForm& st = tct.st;
  if (!IsSuperForm(st)) throw std::invalid_argument("warm start needs super source and sink");
  const McfInstance& inst = st.instance;
  const int n = st.original_nodes;
  // Supply and demand sides, read off the super arcs.
  std::vector<bool> supply(n, false), demand(n, false);
  for (int a = st.original_arcs; a < inst.num_arcs(); ++a) {
    const McfArc& arc = inst.arcs[a];
    if (arc.tail == st.source) supply[arc.head] = true;
    if (arc.head == st.sink) demand[arc.tail] = true;
  }
  std::vector<std::optional<int64_t>> v(n), u(n);
  for (int a = 0; a < st.original_arcs; ++a) {
    const McfArc& arc = inst.arcs[a];
    if (!supply[arc.tail] || !demand[arc.head]) {
      throw std::invalid_argument("warm start needs a bipartite instance");
    }
    int64_t d = tct.project.arcs[a].normal_duration;
    if (!v[arc.head] || d > *v[arc.head]) v[arc.head] = d;
  }
  for (int a = 0; a < st.original_arcs; ++a) {
    const McfArc& arc = inst.arcs[a];
    int64_t r = tct.project.arcs[a].normal_duration - *v[arc.head];
    if (!u[arc.tail] || r > *u[arc.tail]) u[arc.tail] = r;
  }
  int64_t shift = 0;
  for (int a = st.original_arcs; a < inst.num_arcs(); ++a) {
    const McfArc& arc = inst.arcs[a];
    const std::optional<int64_t>& value = arc.tail == st.source ? u[arc.head] : v[arc.tail];
    if (!value) continue;
    ProjectArc& pa = tct.project.arcs[a];
    pa.normal_duration = -*value;
    shift = CheckedAdd(shift, CheckedMul(*value, arc.capacity.value()));
  }
  return shift;
}

int64_t WarmStartGeneral(TctMapping& tct) {
  const StForm& st = tct.st;
  if (!IsSuperForm(st)) throw std::invalid_argument("warm start needs super source and sink");
  const McfInstance& inst = st.instance;
  auto shift_arc = [&](int a, int64_t duration) {
    ProjectArc& pa = tct.project.arcs[a];
    int64_t delta = duration - pa.normal_duration;
    pa.normal_duration = duration;
    return CheckedMul(-delta, inst.arcs[a].capacity.value());
  };
  int64_t shift = 0;
  {
    AmcEngine engine(tct.project);
    engine.Initialize();
    const NodeLabels& labels = engine.labels();
    for (int a = st.original_arcs; a < inst.num_arcs(); ++a) {
      if (inst.arcs[a].tail != st.source || engine.LocalArc(a) < 0) continue;
      shift = CheckedAdd(shift, shift_arc(a, labels.latest[engine.LocalNode(inst.arcs[a].head)]));
    }
  }
  AmcEngine engine(tct.project);
  engine.Initialize();
  const NodeLabels& labels = engine.labels();
  for (int a = st.original_arcs; a < inst.num_arcs(); ++a) {
    if (inst.arcs[a].head != st.sink || engine.LocalArc(a) < 0) continue;
    int64_t et = labels.earliest[engine.LocalNode(inst.arcs[a].tail)];
    shift = CheckedAdd(shift, shift_arc(a, labels.makespan - et));
  }
  return shift;
}

FlowResult SolveKFlow(const McfInstance& m, std::optional<int64_t> k,
                      const KFlowOptions& options) {
  ValidationReport report = ValidateMcf(m);
  if (!report.ok()) throw std::invalid_argument(report.Summary());
  const ExtendedInt max_flow = McfMaxFlow(m);
  const int64_t supply = m.TotalSupply();
  int64_t target;
  if (k) {
    target = *k;
  } else if (m.flow_target) {
    target = *m.flow_target;
  } else {
    target = max_flow < ExtendedInt(supply) ? max_flow.value() : supply;
  }
  if (target < 0) throw std::invalid_argument("K must be nonnegative");
  if (ExtendedInt(target) > max_flow || target > supply) {
    throw InfeasibleError("K = " + std::to_string(target) + " exceeds the max flow " +
                              Min(max_flow, ExtendedInt(supply)).ToString(),
                          Min(max_flow, ExtendedInt(supply)));
  }

  const bool warm = options.warm_start || options.general_warm_start;
  TctMapping tct = TctFromMcf(m, warm);
  const StForm& st = tct.st;
  int64_t shift = 0;
  if (warm) {
    if (target != supply) throw std::invalid_argument("warm start needs K equal to the supply");
    shift = options.warm_start ? WarmStartBipartite(tct) : WarmStartGeneral(tct);
  }

  FlowResult result;
  result.flow.assign(m.num_arcs(), 0);
  result.critical.assign(m.num_arcs(), false);
  result.potential.assign(st.instance.num_nodes(), std::nullopt);
  result.nodes = st.instance.num_nodes();
  {
    std::vector<int> tails, heads;
    for (const ProjectArc& a : tct.project.arcs) {
      tails.push_back(a.tail);
      heads.push_back(a.head);
    }
    Digraph g(tct.project.num_nodes(), tails, heads);
    // Only possible with K = 0: nothing to route.
    if (!g.Reach(st.source, true)[st.sink]) return result;
  }

  SolveOptions solve_options{options.check_invariants, options.trace};
  AmcEngine engine(tct.project, solve_options);
  StopRule stop;
  stop.flow_target = target;
  AMCResult r = engine.Run(stop);
  if (r.termination != Termination::kFlowTarget || r.flow_value != target) {
    throw InvariantViolation(std::string("K-flow run ended early: ") +
                             TerminationName(r.termination));
  }
  for (int a = 0; a < m.num_arcs(); ++a) {
    result.flow[a] = r.flow[a];
    result.critical[a] = r.critical_arc[a];
  }
  result.value = r.flow_value;
  result.objective = FlowCost(m, result.flow);
  result.makespan = r.makespan;
  result.expedite_cost = r.cost;
  result.stats = r.stats;
  result.potential = r.earliest;
  result.critical_nodes = engine.crashing().num_critical;
  if (shift != 0) {
    // The super-node labels belong to the shifted costs; let the
    // certificate pick them from the original ones.
    result.potential[st.source] = std::nullopt;
    result.potential[st.sink] = std::nullopt;
  }
  // Forced super nodes are not part of the instance's own s,t form.
  if (warm && !IsSuperForm(NormalizeToSt(m))) result.potential.resize(st.original_nodes);
  // Strong duality between the K-flow and the dual schedule.
  int64_t dual = CheckedSub(CheckedSub(0, r.cost), CheckedMul(target, r.makespan));
  if (CheckedAdd(result.objective, shift) != dual) {
    throw InvariantViolation("flow objective " + std::to_string(result.objective) +
                             " disagrees with the schedule value " + std::to_string(dual));
  }
  return result;
}

FlowResult SolveConvexKFlow(const McfInstance& m, std::optional<int64_t> k,
                            const KFlowOptions& options) {
  return SolveKFlow(m, k, options);
}

McfInstance AssignmentInstance(const AssignmentMatrix& costs, bool maximize) {
  const int n = static_cast<int>(costs.size());
  McfInstance m;
  m.supplies.assign(2 * n, 0);
  for (int i = 0; i < n; ++i) {
    m.supplies[i] = 1;
    m.supplies[n + i] = -1;
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(costs[i].size()) != n) {
      throw std::invalid_argument("assignment matrix must be square");
    }
    for (int j = 0; j < n; ++j) {
      if (!costs[i][j]) continue;
      int64_t c = maximize ? -*costs[i][j] : *costs[i][j];
      m.arcs.push_back({i, n + j, c, ExtendedInt::PosInf(), {}});
    }
  }
  m.flow_target = n;
  return m;
}

AssignmentResult SolveAssignment(const AssignmentMatrix& costs, bool maximize,
                                 const KFlowOptions& options) {
  const int n = static_cast<int>(costs.size());
  McfInstance m = AssignmentInstance(costs, maximize);
  AssignmentResult out;
  out.flow = SolveKFlow(m, n, options);
  out.match.assign(n, -1);
  for (int a = 0; a < m.num_arcs(); ++a) {
    if (out.flow.flow[a] == 0) continue;
    if (out.flow.flow[a] != 1 || out.match[m.arcs[a].tail] != -1) {
      throw InvariantViolation("assignment flow is not a matching");
    }
    out.match[m.arcs[a].tail] = m.arcs[a].head - n;
  }
  out.objective = maximize ? -out.flow.objective : out.flow.objective;
  return out;
}

std::optional<int64_t> TctCurve::Cost(int64_t makespan) const {
  if (points.empty() || makespan > points.front().makespan ||
      makespan < points.back().makespan) {
    return std::nullopt;
  }
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    if (makespan >= points[i + 1].makespan) {
      return points[i].cost + slopes[i] * (points[i].makespan - makespan);
    }
  }
  return points.back().cost;
}

TctCurve ComputeTctCurve(const ProjectNetwork& p, std::optional<int64_t> target,
                         const SolveOptions& options) {
  ValidationReport report = ValidateProject(p);
  if (!report.ok()) throw std::invalid_argument(report.Summary());
  StopRule stop;
  stop.target_makespan = target;
  AMCResult r = Solve(p, stop, options);
  TctCurve curve;
  curve.points = r.curve;
  for (size_t i = 0; i + 1 < curve.points.size(); ++i) {
    int64_t dt = curve.points[i].makespan - curve.points[i + 1].makespan;
    int64_t dc = curve.points[i + 1].cost - curve.points[i].cost;
    if (dt <= 0 || dc % dt != 0) throw InvariantViolation("curve segment is not integral");
    curve.slopes.push_back(dc / dt);
  }
  curve.termination = r.termination;
  curve.stats = r.stats;
  curve.reached_minimum = r.termination == Termination::kInfiniteCostCut;
  if (r.termination == Termination::kUnbounded) {
    curve.notice = "makespan can be reduced without bound; curve stops before the first " +
                   std::string("unbounded segment");
  } else if (target && r.makespan > *target) {
    curve.notice = "target " + std::to_string(*target) + " is below the minimum makespan " +
                   std::to_string(r.makespan);
  }
  return curve;
}

std::string CertificateReport::Summary() const {
  if (ok()) return "certificate ok";
  std::ostringstream out;
  for (const Diagnostic& d : violations) {
    out << d.code;
    if (d.arc >= 0) out << " arc " << d.arc;
    if (d.node >= 0) out << " node " << d.node;
    out << ": " << d.message << "\n";
  }
  return out.str();
}

CertificateReport VerifyOptimality(const McfInstance& m, int64_t k,
                                   const std::vector<int64_t>& flow,
                                   const std::vector<std::optional<int64_t>>& potential) {
  CertificateReport report;
  auto fail = [&](std::string code, std::string message, int arc = -1, int node = -1) {
    report.violations.push_back({Severity::kError, std::move(code), arc, node,
                                 std::move(message)});
  };
  if (static_cast<int>(flow.size()) != m.num_arcs()) {
    fail("size", "flow vector does not match the arc count");
    return report;
  }
  StForm st = NormalizeToSt(m);
  const McfInstance& inst = st.instance;
  const int n = st.original_nodes;
  const bool super = IsSuperForm(st);

  // (a) Feasibility, with the super arcs' flow implied by node balances.
  std::vector<int64_t> q(inst.num_arcs(), 0);
  std::vector<int64_t> net(n, 0);
  for (int a = 0; a < m.num_arcs(); ++a) {
    q[a] = flow[a];
    if (flow[a] < 0 || ExtendedInt(flow[a]) > m.arcs[a].TotalCapacity()) {
      fail("capacity", "flow outside [0, capacity]", a);
    }
    net[m.arcs[a].tail] += flow[a];
    net[m.arcs[a].head] -= flow[a];
  }
  int64_t value = 0;
  if (super) {
    std::vector<int> super_arc(n, -1);
    for (int a = st.original_arcs; a < inst.num_arcs(); ++a) {
      int v = inst.arcs[a].tail == st.source ? inst.arcs[a].head : inst.arcs[a].tail;
      super_arc[v] = a;
    }
    for (int v = 0; v < n; ++v) {
      int64_t implied = m.supplies[v] > 0 ? net[v] : -net[v];
      if (super_arc[v] < 0) {
        if (net[v] != 0) fail("conservation", "flow is not conserved", -1, v);
        continue;
      }
      q[super_arc[v]] = implied;
      if (implied < 0 || ExtendedInt(implied) > inst.arcs[super_arc[v]].capacity) {
        fail("conservation", "node balance outside [0, |supply|]", -1, v);
      }
      if (m.supplies[v] > 0) value += implied;
    }
  } else {
    for (int v = 0; v < n; ++v) {
      if (v != st.source && v != st.sink && net[v] != 0) {
        fail("conservation", "flow is not conserved", -1, v);
      }
    }
    value = net[st.source];
    if (net[st.sink] != -value) fail("conservation", "source and sink balances differ");
  }
  if (value != k) {
    fail("value", "flow value " + std::to_string(value) + " differs from K = " +
                      std::to_string(k));
  }

  std::vector<std::optional<int64_t>> pi(inst.num_nodes());
  if (potential.size() != pi.size() && static_cast<int>(potential.size()) != n) {
    fail("size", "potential vector does not match the node count");
    return report;
  }
  std::copy(potential.begin(), potential.end(), pi.begin());

  // Super-node potentials, when missing, from the interval their arcs allow.
  if (super) {
    for (int side = 0; side < 2; ++side) {
      int node = side == 0 ? st.source : st.sink;
      if (pi[node]) continue;
      std::optional<int64_t> lo, hi;
      for (int a = st.original_arcs; a < inst.num_arcs(); ++a) {
        const McfArc& arc = inst.arcs[a];
        int other = side == 0 ? arc.head : arc.tail;
        if ((side == 0 ? arc.tail : arc.head) != node || !pi[other]) continue;
        bool residual = ExtendedInt(q[a]) < arc.capacity;
        bool carrying = q[a] > 0;
        // Source side: residual needs pi_s <= pi_v, carrying needs >=.
        bool upper_if_residual = side == 0;
        auto bound = [&](bool upper) {
          auto& b = upper ? hi : lo;
          int64_t val = *pi[other];
          if (!b || (upper ? val < *b : val > *b)) b = val;
        };
        if (residual) bound(upper_if_residual);
        if (carrying) bound(!upper_if_residual);
      }
      if (lo && hi && *lo > *hi) {
        fail("super-potential", "no potential satisfies the super arcs", -1, node);
      }
      pi[node] = lo ? *lo : (hi ? *hi : 0);
    }
  }

  // (b) and (c) on each linear piece.
  for (int a = 0; a < inst.num_arcs(); ++a) {
    const McfArc& arc = inst.arcs[a];
    const int report_arc = a < st.original_arcs ? a : -1;
    if (!pi[arc.tail] || !pi[arc.head]) {
      if (q[a] != 0) fail("potential-missing", "flow on an arc without potentials", report_arc);
      continue;
    }
    std::vector<FlowPiece> pieces =
        arc.is_convex() ? arc.convex : std::vector<FlowPiece>{{arc.capacity, arc.cost}};
    int64_t left = q[a];
    for (const FlowPiece& piece : pieces) {
      int64_t take = ExtendedInt(left) < piece.capacity ? left : piece.capacity.value();
      left -= take;
      int64_t rc = CheckedAdd(piece.unit_cost, CheckedSub(*pi[arc.head], *pi[arc.tail]));
      if (ExtendedInt(take) < piece.capacity && rc < 0) {
        fail("reduced-cost", "residual arc has negative reduced cost " + std::to_string(rc),
             report_arc);
      }
      if (take > 0 && rc > 0) {
        fail("complementary-slackness",
             "arc carries flow at positive reduced cost " + std::to_string(rc), report_arc);
      }
    }
  }
  return report;
}

}  // namespace amcflow
