#include "amcflow/amc.h"

#include <algorithm>
#include <sstream>

namespace amcflow {

std::string SymbolicValue::ToString() const {
  if (m_coeff_ == 0) return std::to_string(constant_);
  std::string s = m_coeff_ == 1 ? "M" : std::to_string(m_coeff_) + "M";
  if (constant_ > 0) s += "+" + std::to_string(constant_);
  if (constant_ < 0) s += std::to_string(constant_);
  return s;
}

const char* TerminationName(Termination t) {
  switch (t) {
    case Termination::kFlowTarget: return "flow-target";
    case Termination::kTargetMakespan: return "target-makespan";
    case Termination::kInfiniteCostCut: return "infinite-cost-cut";
    case Termination::kUnbounded: return "unbounded";
  }
  return "?";
}

SymbolicValue CutSequence::Prefix(int q) const {
  SymbolicValue sum = 0;
  for (int i = 0; i < q; ++i) sum = sum + bottlenecks[i];
  return sum;
}

// ---------------------------------------------------------------------------
// BotUpdate

BotUpdate::BotUpdate(const Digraph& g, std::span<const DurationCost> costs,
                     std::span<const int64_t> x, const CrashingGraph& cg,
                     std::span<const int64_t> flow)
    : g_(g), costs_(costs), x_(x), cg_(cg), flow_(flow), heap_(g.num_nodes()),
      bot_set_(g.num_nodes()) {}

SymbolicValue BotUpdate::Candidate(int a, bool forward) const {
  if (forward) {
    if (cg_.arc_class[a] == ArcClass::kSlack) return cg_.slack[a];
    if (ExtendedInt(flow_[a]) != cg_.bounds.upper[a]) {
      throw InvariantViolation("cut-forward arc is not saturated");
    }
    ExtendedInt room = costs_[a].ShortenRoom(x_[a]);
    if (room.is_pos_inf()) return SymbolicValue::BigM();
    if (room.value() < 1) throw InvariantViolation("cut-forward arc has no room to shorten");
    return room.value();
  }
  if (flow_[a] != cg_.bounds.lower[a]) {
    throw InvariantViolation("cut-backward arc is above its lower bound");
  }
  return costs_[a].LengthenRoom(x_[a]);
}

void BotUpdate::AddSourceNodes(std::span<const int> nodes, const SymbolicValue& prefix,
                               const std::vector<bool>& source_side) {
  for (int v : nodes) {
    if (heap_.Contains(v)) heap_.Erase(v);
  }
  auto offer = [&](int u, int a, bool forward) {
    SymbolicValue key = prefix + Candidate(a, forward);
    if (!heap_.Contains(u) || key < heap_.KeyOf(u)) {
      heap_.PushOrDecrease(u, key);
      bot_set_[u].assign(1, a);
    } else if (key == heap_.KeyOf(u)) {
      bot_set_[u].push_back(a);
    }
  };
  for (int v : nodes) {
    for (int a : g_.OutArcs(v)) {
      int u = g_.Head(a);
      if (!cg_.bounds.active[a] || source_side[u]) continue;
      offer(u, a, true);
    }
    for (int a : g_.InArcs(v)) {
      int u = g_.Tail(a);
      if (!cg_.bounds.active[a] || source_side[u]) continue;
      if (flow_[a] != cg_.bounds.lower[a]) {
        throw InvariantViolation("cut-backward arc is above its lower bound");
      }
      // Only arcs with a positive lower bound (crashed arcs) can lengthen.
      if (cg_.bounds.lower[a] > 0) offer(u, a, false);
    }
  }
}

BotUpdate::Min BotUpdate::ExtractMin() {
  if (heap_.Empty()) throw InvariantViolation("bottleneck heap is empty");
  Min out;
  out.key = heap_.TopKey();
  while (!heap_.Empty() && heap_.TopKey() == out.key) {
    int u = heap_.Top();
    heap_.Pop();
    out.nodes.push_back(u);
    out.arcs.insert(out.arcs.end(), bot_set_[u].begin(), bot_set_[u].end());
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  std::sort(out.arcs.begin(), out.arcs.end());
  return out;
}

// ---------------------------------------------------------------------------
// AmcEngine

AmcEngine::AmcEngine(const ProjectNetwork& p, SolveOptions options)
    : options_(std::move(options)), project_(p) {
  std::vector<int> tails, heads;
  for (const ProjectArc& a : p.arcs) {
    tails.push_back(a.tail);
    heads.push_back(a.head);
  }
  Digraph full(p.num_nodes(), tails, heads);
  std::vector<bool> from_s = full.Reach(p.source, true);
  std::vector<bool> to_t = full.Reach(p.sink, false);
  if (!from_s[p.sink]) throw std::invalid_argument("finish is not reachable from start");
  local_node_.assign(p.num_nodes(), -1);
  for (int v = 0; v < p.num_nodes(); ++v) {
    if (from_s[v] && to_t[v]) {
      local_node_[v] = static_cast<int>(original_node_.size());
      original_node_.push_back(v);
    }
  }
  local_arc_.assign(p.num_arcs(), -1);
  std::vector<int> ltails, lheads;
  for (int a = 0; a < p.num_arcs(); ++a) {
    int i = local_node_[p.arcs[a].tail], j = local_node_[p.arcs[a].head];
    if (i < 0 || j < 0) continue;
    local_arc_[a] = static_cast<int>(original_arc_.size());
    original_arc_.push_back(a);
    ltails.push_back(i);
    lheads.push_back(j);
    costs_.push_back(DurationCost::FromArc(p.arcs[a]));
  }
  g_ = Digraph(static_cast<int>(original_node_.size()), ltails, lheads);
  s_ = local_node_[p.source];
  t_ = local_node_[p.sink];
  acyclic_ = !g_.TopologicalOrder().empty();
}

void AmcEngine::Trace(TraceEvent::Kind kind, const std::string& detail) const {
  if (options_.trace) options_.trace({kind, stage_index_, detail});
}

void AmcEngine::Check(bool condition, const std::string& what) const {
  if (options_.check_invariants && !condition) throw InvariantViolation(what);
}

NodeLabels AmcEngine::ComputeLabels(std::span<const int64_t> x, const Potentials* hint) const {
  if (acyclic_) return CpmLabels(g_, s_, t_, x);
  if (hint != nullptr) return SsspLabels(g_, s_, t_, x, *hint);
  return SsspLabels(g_, s_, t_, x, InitPotentials(g_, s_, x));
}

void AmcEngine::Initialize() {
  x_.resize(g_.num_arcs());
  for (int a = 0; a < g_.num_arcs(); ++a) x_[a] = costs_[a].normal();
  labels_ = ComputeLabels(x_, nullptr);
  cg_ = BuildCrashingGraph(g_, costs_, x_, labels_);
  state_ = FlowState{std::vector<int64_t>(g_.num_arcs(), 0), 0};
  CheckFlowFeasible(cg_.bounds, state_.flow);
  stats_ = SolveStats{};
  stage_index_ = 0;
}

AugmentOutcome AmcEngine::Augment(ExtendedInt limit) {
  AugmentOutcome out = AugmentToMax(g_, s_, t_, cg_.bounds, state_, limit);
  stats_.augmentations += out.augmentations;
  return out;
}

CutSequence AmcEngine::RunStage() {
  const int n = g_.num_nodes();
  CutSequence seq;
  seq.layer_of.assign(n, -1);
  std::vector<bool> source_side(n, false);
  source_side[s_] = true;
  seq.layers.push_back({s_});
  seq.layer_of[s_] = 0;

  std::vector<int> start = {s_};
  std::vector<int> delta1 = ExpandReach(g_, cg_.bounds, state_.flow, start, source_side);
  if (source_side[t_]) throw InvariantViolation("stage started with a non-maximum flow");
  for (int v : delta1) seq.layer_of[v] = 1;
  seq.layers.push_back(delta1);

  BotUpdate bot(g_, costs_, x_, cg_, state_.flow);
  std::vector<int> batch = {s_};
  batch.insert(batch.end(), delta1.begin(), delta1.end());
  bot.AddSourceNodes(batch, 0, source_side);

  auto close_residue = [&](std::vector<int> residue) {
    for (int v = 0; v < n; ++v) {
      if (cg_.critical_node[v] && !source_side[v]) residue.push_back(v);
    }
    std::sort(residue.begin(), residue.end());
    for (int v : residue) seq.layer_of[v] = seq.num_cuts + 1;
    seq.layers.push_back(std::move(residue));
  };

  SymbolicValue prefix = 0;
  for (;;) {
    BotUpdate::Min min = bot.ExtractMin();
    SymbolicValue delta = min.key - prefix;
    ++seq.num_cuts;
    seq.bottlenecks.push_back(delta);
    seq.bottleneck_arcs.push_back(min.arcs);
    Trace(TraceEvent::Kind::kCut, "cut " + std::to_string(seq.num_cuts) + " delta " +
                                      delta.ToString() + " arcs " +
                                      std::to_string(min.arcs.size()));
    Check(seq.num_cuts <= cg_.num_critical, "more cuts than critical nodes");
    if (!delta.is_finite()) {
      // No breakpoint limits this cut; the stage stops here.
      seq.ends_symbolic = true;
      break;
    }
    Check(delta.value() >= 1, "non-positive bottleneck");

    if (options_.check_invariants) {
      // Each relaxed bottleneck arc must gain residual capacity.
      for (int a : min.arcs) {
        bool forward = source_side[g_.Tail(a)];
        if (forward) {
          int64_t xs = cg_.arc_class[a] == ArcClass::kSlack ? x_[a]
                                                            : x_[a] - bot.Candidate(a, true).value();
          ExtendedInt upper = costs_[a].LeftSubgradient(xs);
          Check(upper > ExtendedInt(state_.flow[a]), "relaxed forward arc gained no residual");
        } else {
          int64_t xl = x_[a] + bot.Candidate(a, false).value();
          int64_t lower = costs_[a].RightSubgradient(xl).value();
          Check(lower < state_.flow[a], "relaxed backward arc gained no residual");
        }
      }
    }
    prefix = min.key;
    for (int u : min.nodes) source_side[u] = true;
    std::vector<int> grown = ExpandReach(g_, cg_.bounds, state_.flow, min.nodes, source_side);
    std::vector<int> next = min.nodes;
    next.insert(next.end(), grown.begin(), grown.end());
    Check(!next.empty(), "relaxed bottleneck reached no new node");
    if (source_side[t_]) {
      close_residue(std::move(next));
      break;
    }
    for (int v : next) seq.layer_of[v] = seq.num_cuts + 1;
    seq.layers.push_back(next);
    bot.AddSourceNodes(next, prefix, source_side);
  }
  if (seq.ends_symbolic) close_residue({});
  stats_.heap_operations += bot.heap_operations();
  return seq;
}

std::vector<std::optional<SymbolicValue>> AmcEngine::ShiftedSlackSearch(
    const std::vector<SymbolicValue>& shift,
    std::vector<std::optional<SymbolicValue>>* at_critical) const {
  const int n = g_.num_nodes();
  const std::vector<int64_t>& et = labels_.earliest;
  std::vector<std::optional<SymbolicValue>> dist(n);
  at_critical->assign(n, std::nullopt);
  std::vector<bool> done(n, false);
  PairingHeap<SymbolicValue> heap(n);
  auto reduced = [&](int a) {
    int64_t r = et[g_.Head(a)] - et[g_.Tail(a)] - x_[a];
    if (r < 0) throw InvariantViolation("negative reduced slack");
    return r;
  };
  auto relax = [&](int a, const SymbolicValue& base) {
    int w = g_.Head(a);
    SymbolicValue cand = base + reduced(a);
    if (cg_.critical_node[w]) {
      auto& best = (*at_critical)[w];
      if (!best || cand < *best) best = cand;
      return;
    }
    if (done[w]) return;
    if (!dist[w] || cand < *dist[w]) {
      dist[w] = cand;
      heap.PushOrDecrease(w, cand);
    }
  };
  for (int v = 0; v < n; ++v) {
    if (!cg_.critical_node[v]) continue;
    for (int a : g_.OutArcs(v)) {
      if (!cg_.critical_node[g_.Head(a)]) relax(a, shift[v]);
    }
  }
  while (!heap.Empty()) {
    int u = heap.Top();
    heap.Pop();
    done[u] = true;
    for (int a : g_.OutArcs(u)) relax(a, *dist[u]);
  }
  return dist;
}

CriticalCheck AmcEngine::FindCritical(const CutSequence& seq) const {
  const int n = g_.num_nodes();
  const int k = seq.num_cuts;
  std::vector<SymbolicValue> prefix(k + 1);
  for (int q = 1; q <= k; ++q) prefix[q] = prefix[q - 1] + seq.bottlenecks[q - 1];
  std::vector<SymbolicValue> shift(n);
  for (int v = 0; v < n; ++v) {
    if (seq.layer_of[v] >= 0) shift[v] = seq.ShiftOfLayer(seq.layer_of[v]);
  }
  std::vector<std::optional<SymbolicValue>> best;
  ShiftedSlackSearch(shift, &best);

  // First cut after which some non-critical path would go negative.
  int first = k + 1;
  for (int b = 0; b < n; ++b) {
    if (!best[b]) continue;
    int upper = std::min(seq.layer_of[b] - 1, k);
    if (upper < 1 || prefix[upper] < *best[b]) continue;
    int c = static_cast<int>(
        std::lower_bound(prefix.begin() + 1, prefix.begin() + upper + 1, *best[b]) -
        prefix.begin());
    first = std::min(first, c);
  }
  CriticalCheck check;
  if (first > k) {
    check.cut = k;
    check.delta = seq.bottlenecks[k - 1];
    check.resolved = check.delta.is_finite();
    return check;
  }
  std::optional<SymbolicValue> delta;
  for (int b = 0; b < n; ++b) {
    if (!best[b] || seq.layer_of[b] <= first) continue;
    SymbolicValue cand = *best[b] - prefix[first - 1];
    if (!delta || cand < *delta) delta = cand;
  }
  const SymbolicValue& full = seq.bottlenecks[first - 1];
  if (!delta || !delta->is_finite() || delta->value() < 1 || full < *delta) {
    throw InvariantViolation("find-critical produced an invalid bottleneck");
  }
  check.cut = first;
  check.delta = *delta;
  check.truncated = first < k || *delta < full;
  if (!full.is_finite()) {
    check.truncated = first < k;
  }
  return check;
}

int64_t AmcEngine::ApplyStage(const CutSequence& seq, const CriticalCheck& check) {
  const int n = g_.num_nodes();
  const int p = check.cut;
  if (p == 0) return 0;
  const int64_t delta = check.delta.value();
  std::vector<SymbolicValue> shift(n);
  std::vector<int64_t> et_new(labels_.earliest);
  const int64_t last = CheckedAdd(seq.Prefix(p - 1).value(), delta);
  for (int v = 0; v < n; ++v) {
    int q = seq.layer_of[v];
    if (q < 0) continue;
    int64_t sh = q <= 1 ? 0 : (q <= p ? seq.Prefix(q - 1).value() : last);
    shift[v] = sh;
    et_new[v] -= sh;
  }
  std::vector<int64_t> x_new(x_);
  for (int a = 0; a < g_.num_arcs(); ++a) {
    int i = g_.Tail(a), j = g_.Head(a);
    if (!cg_.critical_node[i] || !cg_.critical_node[j]) continue;
    x_new[a] = std::min(et_new[j] - et_new[i], costs_[a].normal());
    Check(ExtendedInt(x_new[a]) >= costs_[a].minimum(), "duration fell below its minimum");
  }
  std::vector<std::optional<SymbolicValue>> unused;
  std::vector<std::optional<SymbolicValue>> h = ShiftedSlackSearch(shift, &unused);
  for (int v = 0; v < n; ++v) {
    if (cg_.critical_node[v]) continue;
    if (!h[v]) throw InvariantViolation("non-critical node unreachable from critical nodes");
    et_new[v] = labels_.earliest[v] - h[v]->value();
  }
  Potentials pi{et_new};
  NodeLabels next = ComputeLabels(x_new, &pi);
  if (options_.check_invariants) {
    for (int v = 0; v < n; ++v) {
      if (cg_.critical_node[v]) {
        Check(next.earliest[v] == et_new[v] && next.latest[v] >= et_new[v],
              "critical node " + std::to_string(v) + " has labels (" +
                  std::to_string(next.earliest[v]) + ", " + std::to_string(next.latest[v]) +
                  ") after stage, expected " + std::to_string(et_new[v]));
      }
    }
    Check(next.makespan == labels_.makespan - last, "makespan did not drop by the applied amount");
    std::vector<int64_t> normal(g_.num_arcs());
    for (int a = 0; a < g_.num_arcs(); ++a) normal[a] = costs_[a].normal();
    Check(DurationsFromLabels(g_, normal, next) == x_new,
          "durations do not round-trip through labels");
  }
  x_ = std::move(x_new);
  labels_ = std::move(next);
  int lost = 0;
  cg_ = RefreshAfterStage(cg_, g_, costs_, x_, labels_, state_.flow, &lost);
  if (lost > 0) {
    ++stats_.shrinking_stages;
    stats_.critical_nodes_lost += lost;
  }
  return last;
}

AMCResult AmcEngine::Run(const StopRule& stop) {
  Initialize();
  AMCResult result;
  std::vector<CurvePoint> curve = {{labels_.makespan, 0}};
  std::vector<int64_t> slopes;  // slope of the segment ending at curve[i+1]
  int64_t cost = 0;
  const ExtendedInt limit =
      stop.flow_target ? ExtendedInt(*stop.flow_target) : ExtendedInt::PosInf();
  const int n = g_.num_nodes();
  for (;;) {
    AugmentOutcome aug = Augment(limit);
    if (stop.flow_target && state_.value >= *stop.flow_target) {
      result.termination = Termination::kFlowTarget;
      break;
    }
    if (aug.unbounded) {
      result.termination = Termination::kInfiniteCostCut;
      break;
    }
    if (stop.target_makespan && labels_.makespan <= *stop.target_makespan) {
      result.termination = Termination::kTargetMakespan;
      break;
    }
    ++stage_index_;
    Trace(TraceEvent::Kind::kStageStart, "flow " + std::to_string(state_.value) + " makespan " +
                                             std::to_string(labels_.makespan) + " critical " +
                                             std::to_string(cg_.num_critical));
    CutSequence seq = RunStage();
    stats_.stages++;
    stats_.cuts += seq.num_cuts;
    stats_.max_cuts_in_stage = std::max<int64_t>(stats_.max_cuts_in_stage, seq.num_cuts);
    CriticalCheck check = FindCritical(seq);
    if (check.truncated) {
      stats_.truncations++;
      Trace(TraceEvent::Kind::kTruncation,
            "cut " + std::to_string(check.cut) + " delta " + check.delta.ToString());
    }
    if (seq.ends_symbolic && check.resolved && check.cut == seq.num_cuts) {
      stats_.big_m_resolutions++;
      Trace(TraceEvent::Kind::kBigMResolved, "M = " + check.delta.ToString());
    }
    if (stop.target_makespan) {
      // Do not run past the target: cut the sequence where the reduction
      // reaches it exactly.
      int64_t need = labels_.makespan - *stop.target_makespan;
      SymbolicValue total = seq.Prefix(check.cut - 1) + check.delta;
      if (total > SymbolicValue(need)) {
        int q = 1;
        while (seq.Prefix(q) < SymbolicValue(need) && q < check.cut) ++q;
        check.delta = need - seq.Prefix(q - 1).value();
        check.cut = q;
        check.resolved = true;
      }
    }
    if (!check.resolved) {
      result.termination = Termination::kUnbounded;
      break;
    }
    const int64_t value = state_.value;
    int64_t reduction = ApplyStage(seq, check);
    cost = CheckedAdd(cost, CheckedMul(value, reduction));
    if (options_.check_invariants) {
      ExtendedInt total = 0;
      for (int a = 0; a < g_.num_arcs(); ++a) total = total + costs_[a].ExpediteCost(x_[a]);
      Check(total == ExtendedInt(cost), "expediting cost disagrees with cut values");
    }
    if (!slopes.empty() && slopes.back() == value) {
      curve.back() = {labels_.makespan, cost};
    } else {
      Check(slopes.empty() || slopes.back() < value, "cut values are not increasing");
      curve.push_back({labels_.makespan, cost});
      slopes.push_back(value);
    }
    Trace(TraceEvent::Kind::kStageApplied, "cuts " + std::to_string(check.cut) + " reduction " +
                                               std::to_string(reduction) + " makespan " +
                                               std::to_string(labels_.makespan));
  }
  Trace(TraceEvent::Kind::kStop, TerminationName(result.termination));
  Check(stats_.stages <= static_cast<int64_t>(slopes.size()) + n + stats_.truncations + 1,
        "stage count exceeds its bound");
  Check(stats_.truncations <= n, "more truncations than nodes");

  const int orig_n = project_.num_nodes();
  const int orig_m = project_.num_arcs();
  result.earliest.assign(orig_n, std::nullopt);
  result.latest.assign(orig_n, std::nullopt);
  for (int v = 0; v < orig_n; ++v) {
    int l = local_node_[v];
    if (l < 0) continue;
    result.earliest[v] = labels_.earliest[l];
    result.latest[v] = labels_.latest[l];
  }
  result.durations.resize(orig_m);
  result.flow.assign(orig_m, 0);
  result.critical_arc.assign(orig_m, false);
  for (int a = 0; a < orig_m; ++a) {
    int l = local_arc_[a];
    if (l < 0) {
      result.durations[a] = project_.arcs[a].normal_duration;
      continue;
    }
    result.durations[a] = x_[l];
    result.flow[a] = state_.flow[l];
    result.critical_arc[a] = cg_.arc_class[l] == ArcClass::kCritical;
  }
  result.flow_value = state_.value;
  result.makespan = labels_.makespan;
  result.cost = cost;
  result.curve = std::move(curve);
  result.stats = stats_;
  return result;
}

AMCResult Solve(const ProjectNetwork& p, const StopRule& stop, const SolveOptions& options) {
  AmcEngine engine(p, options);
  return engine.Run(stop);
}

}  // namespace amcflow
