// All-min-cuts engine for the time-cost tradeoff problem: repeated nested
// minimum cuts on the crashing graph, with bottleneck tracking, a delayed
// check for newly critical paths, and symbolic big-M bottlenecks.

#ifndef AMCFLOW_AMC_H_
#define AMCFLOW_AMC_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "amcflow/core_model.h"
#include "amcflow/crashing.h"
#include "amcflow/digraph.h"
#include "amcflow/labels.h"
#include "amcflow/maxflow.h"
#include "amcflow/pairing_heap.h"

namespace amcflow {

// a*M + b for a symbolic "big M". Ordered lexicographically on (a, b).
class SymbolicValue {
 public:
  constexpr SymbolicValue() = default;
  constexpr SymbolicValue(int64_t constant) : constant_(constant) {}  // NOLINT
  constexpr SymbolicValue(int64_t m_coeff, int64_t constant)
      : m_coeff_(m_coeff), constant_(constant) {}
  static constexpr SymbolicValue BigM() { return {1, 0}; }

  int64_t m_coeff() const { return m_coeff_; }
  int64_t constant() const { return constant_; }
  bool is_finite() const { return m_coeff_ == 0; }
  int64_t value() const {
    if (!is_finite()) throw std::logic_error("unresolved big-M value");
    return constant_;
  }

  auto operator<=>(const SymbolicValue&) const = default;

  friend SymbolicValue operator+(const SymbolicValue& a, const SymbolicValue& b) {
    return {CheckedAdd(a.m_coeff_, b.m_coeff_), CheckedAdd(a.constant_, b.constant_)};
  }
  friend SymbolicValue operator-(const SymbolicValue& a, const SymbolicValue& b) {
    return {CheckedSub(a.m_coeff_, b.m_coeff_), CheckedSub(a.constant_, b.constant_)};
  }

  std::string ToString() const;

 private:
  int64_t m_coeff_ = 0;
  int64_t constant_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const SymbolicValue& v) {
  return os << v.ToString();
}

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The nested cuts of one stage. layers[0] = {s}; layers[q] = Δ_q for
// q = 1..k, and layers[k+1] is the residue holding t. S_q is the union of
// layers[0..q].
struct CutSequence {
  int num_cuts = 0;
  std::vector<std::vector<int>> layers;
  std::vector<SymbolicValue> bottlenecks;         // δ_1..δ_k
  std::vector<std::vector<int>> bottleneck_arcs;  // bot-set relaxed after cut q
  std::vector<int> layer_of;                      // -1 outside V_c
  bool ends_symbolic = false;

  // D_q = δ_1 + ... + δ_q (D_0 = 0).
  SymbolicValue Prefix(int q) const;
  // Amount subtracted from ET of a layer-q node when all k cuts apply.
  SymbolicValue ShiftOfLayer(int q) const { return q <= 1 ? SymbolicValue(0) : Prefix(q - 1); }
};

// Result of the delayed criticality check: apply cuts 1..cut, the last one
// by `delta` instead of δ_cut.
struct CriticalCheck {
  int cut = 0;
  SymbolicValue delta;
  bool truncated = false;
  // False when delta is still symbolic: no non-critical path limits an
  // unbounded cut, so the makespan can drop without bound.
  bool resolved = true;
};

struct TraceEvent {
  enum class Kind { kStageStart, kCut, kTruncation, kBigMResolved, kStageApplied, kStop };
  Kind kind;
  int stage = 0;
  std::string detail;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct SolveOptions {
  bool check_invariants = true;
  TraceSink trace;
};

// Stop when the max flow reaches `flow_target`, when the makespan reaches
// `target_makespan`, or (neither set) when the cheapest cut is infinite.
struct StopRule {
  std::optional<int64_t> flow_target;
  std::optional<int64_t> target_makespan;
};

enum class Termination { kFlowTarget, kTargetMakespan, kInfiniteCostCut, kUnbounded };

const char* TerminationName(Termination t);

struct CurvePoint {
  int64_t makespan = 0;
  int64_t cost = 0;
  auto operator<=>(const CurvePoint&) const = default;
};

struct SolveStats {
  int64_t stages = 0;
  int64_t cuts = 0;
  int64_t truncations = 0;
  int64_t big_m_resolutions = 0;
  int64_t augmentations = 0;
  int64_t heap_operations = 0;
  int64_t max_cuts_in_stage = 0;
  int64_t shrinking_stages = 0;     // stages after which the critical set shrank
  int64_t critical_nodes_lost = 0;  // summed over those stages
};

struct AMCResult {
  // Indexed by original node / arc. Nodes off every s-t path have no labels
  // and their arcs keep normal durations and zero flow.
  std::vector<std::optional<int64_t>> earliest;
  std::vector<std::optional<int64_t>> latest;
  std::vector<int64_t> durations;
  std::vector<int64_t> flow;
  std::vector<bool> critical_arc;
  int64_t flow_value = 0;
  int64_t makespan = 0;
  int64_t cost = 0;
  std::vector<CurvePoint> curve;  // breakpoints, decreasing makespan
  Termination termination = Termination::kInfiniteCostCut;
  SolveStats stats;
};

// Bottleneck bookkeeping of one stage: sink-side nodes keyed by the
// cumulative reduction at which one of their cut arcs hits a breakpoint.
class BotUpdate {
 public:
  struct Min {
    SymbolicValue key;
    std::vector<int> arcs;
    std::vector<int> nodes;
  };

  BotUpdate(const Digraph& g, std::span<const DurationCost> costs, std::span<const int64_t> x,
            const CrashingGraph& cg, std::span<const int64_t> flow);

  // Moves `nodes` to the source side. `prefix` is the total reduction already
  // applied to the sink side (D_{k-1}).
  void AddSourceNodes(std::span<const int> nodes, const SymbolicValue& prefix,
                      const std::vector<bool>& source_side);
  bool Empty() const { return heap_.Empty(); }
  // Removes all minimum-key nodes and returns them with their tied arcs.
  Min ExtractMin();
  // Room left on a cut arc before its capacity bound changes.
  SymbolicValue Candidate(int arc, bool forward) const;
  int64_t heap_operations() const { return heap_.operations(); }

 private:
  const Digraph& g_;
  std::span<const DurationCost> costs_;
  std::span<const int64_t> x_;
  const CrashingGraph& cg_;
  std::span<const int64_t> flow_;
  PairingHeap<SymbolicValue> heap_;
  std::vector<std::vector<int>> bot_set_;
};

class AmcEngine {
 public:
  AmcEngine(const ProjectNetwork& p, SolveOptions options = {});

  // Step 0: normal durations, labels, crashing graph, zero flow.
  void Initialize();
  AugmentOutcome Augment(ExtendedInt limit);
  CutSequence RunStage();
  CriticalCheck FindCritical(const CutSequence& seq) const;
  // Applies cuts 1..check.cut; returns the makespan reduction.
  int64_t ApplyStage(const CutSequence& seq, const CriticalCheck& check);
  AMCResult Run(const StopRule& stop);

  const Digraph& graph() const { return g_; }
  int source() const { return s_; }
  int sink() const { return t_; }
  // Local id of an original node, or -1 if it was pruned.
  int LocalNode(int original) const { return local_node_[original]; }
  int LocalArc(int original) const { return local_arc_[original]; }
  const NodeLabels& labels() const { return labels_; }
  const std::vector<int64_t>& durations() const { return x_; }
  const CrashingGraph& crashing() const { return cg_; }
  const FlowState& flow() const { return state_; }
  const SolveStats& stats() const { return stats_; }

 private:
  void Trace(TraceEvent::Kind kind, const std::string& detail) const;
  void Check(bool condition, const std::string& what) const;
  NodeLabels ComputeLabels(std::span<const int64_t> x, const Potentials* hint) const;
  // Multi-source search over the non-critical part: every critical node a
  // starts at `shift[a]`, arcs cost their reduced slack, and critical nodes
  // only act as sources. Returns labels for non-critical nodes and, through
  // `at_critical`, the best label arriving at each critical node.
  std::vector<std::optional<SymbolicValue>> ShiftedSlackSearch(
      const std::vector<SymbolicValue>& shift,
      std::vector<std::optional<SymbolicValue>>* at_critical) const;

  SolveOptions options_;
  const ProjectNetwork& project_;
  std::vector<int> local_node_, local_arc_, original_node_, original_arc_;
  Digraph g_;
  int s_ = 0, t_ = 0;
  bool acyclic_ = false;
  std::vector<DurationCost> costs_;
  std::vector<int64_t> x_;
  NodeLabels labels_;
  CrashingGraph cg_;
  FlowState state_;
  SolveStats stats_;
  int stage_index_ = 0;
};

AMCResult Solve(const ProjectNetwork& p, const StopRule& stop, const SolveOptions& options = {});

}  // namespace amcflow

#endif  // AMCFLOW_AMC_H_
