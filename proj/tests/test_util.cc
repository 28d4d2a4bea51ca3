#include "test_util.h"

#include <algorithm>
#include <limits>

#include "amcflow/crashing.h"

namespace amcflow::testing {

ProjectNetwork MakeProject(int n, std::vector<ProjectArc> arcs) {
  ProjectNetwork p;
  for (int v = 0; v < n; ++v) p.AddNode();
  p.source = 0;
  p.sink = n - 1;
  p.arcs = std::move(arcs);
  return p;
}

McfInstance MakeMcf(std::vector<int64_t> supplies, const std::vector<LinearArc>& arcs,
                    std::optional<int64_t> k) {
  McfInstance m;
  m.supplies = std::move(supplies);
  for (const LinearArc& a : arcs) {
    McfArc arc;
    arc.tail = a.tail;
    arc.head = a.head;
    arc.cost = a.cost;
    arc.capacity = a.capacity;
    m.arcs.push_back(arc);
  }
  m.flow_target = k;
  return m;
}

SimpleLabels BellmanFordLabels(const Digraph& g, int source, int sink,
                               const std::vector<int64_t>& x) {
  constexpr int64_t kNone = std::numeric_limits<int64_t>::min();
  const int n = g.num_nodes();
  auto longest = [&](int from, bool forward) {
    std::vector<int64_t> dist(n, kNone);
    dist[from] = 0;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int a = 0; a < g.num_arcs(); ++a) {
        int u = forward ? g.Tail(a) : g.Head(a);
        int v = forward ? g.Head(a) : g.Tail(a);
        if (dist[u] == kNone) continue;
        if (dist[v] == kNone || dist[u] + x[a] > dist[v]) {
          dist[v] = dist[u] + x[a];
          changed = true;
        }
      }
      if (!changed) return dist;
    }
    throw std::logic_error("positive cycle");
  };
  SimpleLabels out;
  out.earliest = longest(source, true);
  std::vector<int64_t> to_sink = longest(sink, false);
  out.makespan = out.earliest[sink];
  out.latest.resize(n);
  for (int v = 0; v < n; ++v) {
    if (out.earliest[v] == kNone || to_sink[v] == kNone) {
      throw std::logic_error("node off every source-sink path");
    }
    out.latest[v] = out.makespan - to_sink[v];
  }
  return out;
}

void AuditReport::Add(const AuditReport& o) {
  stages += o.stages;
  cuts += o.cuts;
  truncations += o.truncations;
  nodes += o.nodes;
  nesting_violations += o.nesting_violations;
  feasibility_violations += o.feasibility_violations;
  reach_violations += o.reach_violations;
  slack_violations += o.slack_violations;
  shrinking_stages += o.shrinking_stages;
  critical_nodes_lost += o.critical_nodes_lost;
  cut_bound_violations += o.cut_bound_violations;
  max_cuts_in_stage = std::max(max_cuts_in_stage, o.max_cuts_in_stage);
  if (first_problem.empty()) first_problem = o.first_problem;
}

namespace {

class Auditor {
 public:
  Auditor(const ProjectNetwork& p, AmcEngine& engine, AuditReport& report)
      : engine_(engine), report_(report) {
    const Digraph& g = engine.graph();
    costs_.resize(g.num_arcs());
    for (int a = 0; a < p.num_arcs(); ++a) {
      int l = engine.LocalArc(a);
      if (l >= 0) costs_[l] = DurationCost::FromArc(p.arcs[a]);
    }
  }

  // Labels, durations and flow feasibility of the engine's current state.
  // Returns the independently computed critical set.
  std::vector<bool> CheckState(const std::string& when) {
    const Digraph& g = engine_.graph();
    const std::vector<int64_t>& x = engine_.durations();
    SimpleLabels bf = BellmanFordLabels(g, engine_.source(), engine_.sink(), x);
    const NodeLabels& labels = engine_.labels();
    if (labels.earliest != bf.earliest || labels.latest != bf.latest) {
      Fail(report_.slack_violations, when + ": labels differ from an independent computation");
    }
    for (int a = 0; a < g.num_arcs(); ++a) {
      if (bf.latest[g.Head(a)] - bf.earliest[g.Tail(a)] - x[a] < 0) {
        Fail(report_.slack_violations, when + ": negative slack on arc " + std::to_string(a));
      }
      if (x[a] > costs_[a].normal() || ExtendedInt(x[a]) < costs_[a].minimum()) {
        Fail(report_.slack_violations, when + ": duration out of range on arc " +
                                           std::to_string(a));
      }
    }
    NodeLabels nl{bf.earliest, bf.latest, bf.makespan};
    CrashingGraph cg = BuildCrashingGraph(g, costs_, x, nl);
    const std::vector<int64_t>& f = engine_.flow().flow;
    std::vector<int64_t> balance(g.num_nodes(), 0);
    for (int a = 0; a < g.num_arcs(); ++a) {
      bool ok = cg.bounds.active[a]
                    ? cg.bounds.lower[a] <= f[a] && ExtendedInt(f[a]) <= cg.bounds.upper[a]
                    : f[a] == 0;
      if (!ok) {
        Fail(report_.feasibility_violations, when + ": flow out of bounds on arc " +
                                                 std::to_string(a));
      }
      balance[g.Tail(a)] -= f[a];
      balance[g.Head(a)] += f[a];
    }
    for (int v = 0; v < g.num_nodes(); ++v) {
      int64_t want = v == engine_.source()  ? -engine_.flow().value
                     : v == engine_.sink() ? engine_.flow().value
                                           : 0;
      if (balance[v] != want) {
        Fail(report_.feasibility_violations, when + ": flow not conserved at node " +
                                                 std::to_string(v));
      }
    }
    return cg.critical_node;
  }

  void CheckSequence(const CutSequence& seq, const std::vector<bool>& critical) {
    const Digraph& g = engine_.graph();
    const int n = g.num_nodes();
    report_.cuts += seq.num_cuts;
    report_.max_cuts_in_stage = std::max<int64_t>(report_.max_cuts_in_stage, seq.num_cuts);
    int num_critical = static_cast<int>(std::count(critical.begin(), critical.end(), true));
    if (seq.num_cuts > num_critical) {
      Fail(report_.cut_bound_violations, "stage has more cuts than critical nodes");
    }
    // Layers partition V_c, s first and t last.
    std::vector<int> seen(n, 0);
    for (const std::vector<int>& layer : seq.layers) {
      for (int v : layer) ++seen[v];
    }
    bool partition = static_cast<int>(seq.layers.size()) == seq.num_cuts + 2 &&
                     seq.layers[0] == std::vector<int>{engine_.source()};
    for (int v = 0; v < n; ++v) partition &= seen[v] == (critical[v] ? 1 : 0);
    if (partition) {
      const std::vector<int>& last = seq.layers.back();
      partition = std::find(last.begin(), last.end(), engine_.sink()) != last.end();
    }
    if (!partition) Fail(report_.nesting_violations, "layers do not partition V_c");
    // Every relaxed bottleneck (all but a final symbolic one) grows S.
    for (int q = 1; q <= seq.num_cuts; ++q) {
      bool relaxed = !(seq.ends_symbolic && q == seq.num_cuts);
      if (relaxed && seq.layers[q + 1].empty()) {
        Fail(report_.reach_violations, "bottleneck " + std::to_string(q) + " reached no node");
      }
    }
    // S_1 is a minimum cut of the stage-start crashing graph.
    std::vector<bool> s1(n, false);
    for (int q = 0; q <= 1 && q < static_cast<int>(seq.layers.size()); ++q) {
      for (int v : seq.layers[q]) s1[v] = true;
    }
    const CrashingGraph& cg = engine_.crashing();
    const std::vector<int64_t>& f = engine_.flow().flow;
    for (int a = 0; a < g.num_arcs(); ++a) {
      if (!cg.bounds.active[a]) continue;
      bool out = s1[g.Tail(a)] && !s1[g.Head(a)];
      bool in = !s1[g.Tail(a)] && s1[g.Head(a)];
      if ((out && ExtendedInt(f[a]) != cg.bounds.upper[a]) ||
          (in && f[a] != cg.bounds.lower[a])) {
        Fail(report_.nesting_violations, "first cut is not a minimum cut");
        break;
      }
    }
  }

 private:
  void Fail(int64_t& counter, const std::string& what) {
    ++counter;
    if (report_.first_problem.empty()) report_.first_problem = what;
  }

  AmcEngine& engine_;
  AuditReport& report_;
  std::vector<DurationCost> costs_;
};

}  // namespace

AuditReport AuditedRun(const ProjectNetwork& p, std::optional<int64_t> flow_target) {
  AuditReport report;
  AmcEngine engine(p);
  engine.Initialize();
  Auditor auditor(p, engine, report);
  report.nodes = engine.graph().num_nodes();
  std::vector<bool> critical = auditor.CheckState("initial state");
  const ExtendedInt limit = flow_target ? ExtendedInt(*flow_target) : ExtendedInt::PosInf();
  for (;;) {
    AugmentOutcome aug = engine.Augment(limit);
    if (flow_target && engine.flow().value >= *flow_target) {
      report.termination = Termination::kFlowTarget;
      break;
    }
    if (aug.unbounded) {
      report.termination = Termination::kInfiniteCostCut;
      break;
    }
    auditor.CheckState("after augmenting");
    CutSequence seq = engine.RunStage();
    ++report.stages;
    auditor.CheckSequence(seq, critical);
    CriticalCheck check = engine.FindCritical(seq);
    if (check.truncated) ++report.truncations;
    if (!check.resolved) {
      report.termination = Termination::kUnbounded;
      break;
    }
    const int64_t value = engine.flow().value;
    int64_t reduction = engine.ApplyStage(seq, check);
    report.cost = CheckedAdd(report.cost, CheckedMul(value, reduction));
    std::vector<bool> next = auditor.CheckState("stage " + std::to_string(report.stages));
    int64_t lost = 0;
    for (size_t v = 0; v < next.size(); ++v) lost += critical[v] && !next[v];
    if (lost > 0) {
      ++report.shrinking_stages;
      report.critical_nodes_lost += lost;
    }
    critical = std::move(next);
  }
  if (report.truncations > report.nodes) {
    ++report.cut_bound_violations;
    if (report.first_problem.empty()) report.first_problem = "more truncations than nodes";
  }
  report.flow_value = engine.flow().value;
  report.makespan = engine.labels().makespan;
  return report;
}

AuditReport AuditKFlow(const McfInstance& m, int64_t k) {
  if (k == 0) return {};
  TctMapping tct = TctFromMcf(m);
  return AuditedRun(tct.project, k);
}

}  // namespace amcflow::testing
