#include "amcflow/core_model.h"

#include <cstdlib>
#include <deque>
#include <sstream>

#include "amcflow/digraph.h"
#include "amcflow/maxflow.h"

namespace amcflow {
namespace {

bool TooLarge(int64_t v) { return v > kMaxMagnitude || v < -kMaxMagnitude; }
bool TooLarge(const ExtendedInt& v) { return v.is_finite() && TooLarge(v.value()); }

// Queue-based Bellman-Ford from a virtual source joined to every node.
// Returns true if some cycle has strictly positive total length.
bool HasPositiveCycle(int n, const std::vector<int>& tails, const std::vector<int>& heads,
                      const std::vector<int64_t>& lengths) {
  Digraph g(n, tails, heads);
  if (n == 0 || !g.TopologicalOrder().empty()) return false;
  std::vector<int64_t> dist(n, 0);
  std::vector<int> relaxations(n, 0);  // times queued
  std::vector<bool> queued(n, true);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v) queue.push_back(v);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    queued[v] = false;
    for (int a : g.OutArcs(v)) {
      int w = heads[a];
      int64_t cand = dist[v] + lengths[a];
      if (cand > dist[w]) {
        dist[w] = cand;
        if (!queued[w]) {
          // Without a positive cycle a node is queued at most n times.
          if (++relaxations[w] > n) return true;
          queued[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return false;
}

}  // namespace

ProjectArc MakeActivity(int tail, int head, int64_t normal, ExtendedInt minimum,
                        ExtendedInt per_unit) {
  ProjectArc a;
  a.tail = tail;
  a.head = head;
  a.kind = ArcKind::kActivity;
  a.normal_duration = normal;
  a.min_duration = minimum;
  a.cost = LinearCost{per_unit};
  return a;
}

ProjectArc MakeConvexActivity(int tail, int head, ExtendedInt minimum,
                              std::vector<ConvexPiece> pieces) {
  ProjectArc a;
  a.tail = tail;
  a.head = head;
  a.kind = ArcKind::kActivity;
  a.normal_duration = pieces.empty() ? 0 : pieces.front().breakpoint;
  a.min_duration = minimum;
  a.cost = ConvexCost{std::move(pieces)};
  return a;
}

ProjectArc MakePrecedence(int tail, int head) {
  ProjectArc a;
  a.tail = tail;
  a.head = head;
  a.kind = ArcKind::kPrecedence;
  a.normal_duration = 0;
  a.min_duration = 0;
  a.cost = LinearCost{ExtendedInt::PosInf()};
  return a;
}

int ProjectNetwork::AddNode(std::string name) {
  if (name.empty()) name = std::to_string(node_names.size());
  node_names.push_back(std::move(name));
  return num_nodes() - 1;
}

ExtendedInt McfArc::TotalCapacity() const {
  if (!is_convex()) return capacity;
  ExtendedInt total = 0;
  for (const FlowPiece& p : convex) total = total + p.capacity;
  return total;
}

int64_t McfArc::CostOf(int64_t q) const {
  if (!is_convex()) return CheckedMul(cost, q);
  int64_t total = 0;
  for (const FlowPiece& p : convex) {
    if (q == 0) break;
    int64_t take = p.capacity.is_finite() && p.capacity.value() < q ? p.capacity.value() : q;
    total = CheckedAdd(total, CheckedMul(take, p.unit_cost));
    q -= take;
  }
  if (q != 0) throw std::invalid_argument("McfArc::CostOf: flow exceeds capacity");
  return total;
}

int64_t McfInstance::TotalSupply() const {
  int64_t total = 0;
  for (int64_t b : supplies) {
    if (b > 0) total = CheckedAdd(total, b);
  }
  return total;
}

bool McfInstance::HasConvexArcs() const {
  for (const McfArc& a : arcs) {
    if (a.is_convex()) return true;
  }
  return false;
}

bool ValidationReport::ok() const {
  for (const Diagnostic& d : diagnostics) {
    if (d.severity == Severity::kError) return false;
  }
  return true;
}

bool ValidationReport::Has(const std::string& code) const {
  for (const Diagnostic& d : diagnostics) {
    if (d.code == code) return true;
  }
  return false;
}

void ValidationReport::Error(std::string code, std::string message, int arc, int node) {
  diagnostics.push_back({Severity::kError, std::move(code), arc, node, std::move(message)});
}

std::string ValidationReport::Summary() const {
  std::ostringstream os;
  for (const Diagnostic& d : diagnostics) {
    os << (d.severity == Severity::kError ? "error" : "warning") << " [" << d.code << "]";
    if (d.arc >= 0) os << " arc " << d.arc;
    if (d.node >= 0) os << " node " << d.node;
    os << ": " << d.message << "\n";
  }
  return os.str();
}

ValidationReport ValidateProject(const ProjectNetwork& p) {
  ValidationReport report;
  const int n = p.num_nodes();
  if (n == 0) {
    report.Error("empty", "project has no nodes");
    return report;
  }
  if (p.source < 0 || p.source >= n || p.sink < 0 || p.sink >= n) {
    report.Error("bad-endpoint", "start or finish node out of range");
    return report;
  }
  bool endpoints_ok = true;
  for (int i = 0; i < p.num_arcs(); ++i) {
    const ProjectArc& a = p.arcs[i];
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n) {
      report.Error("bad-endpoint", "arc endpoint out of range", i);
      endpoints_ok = false;
      continue;
    }
    if (a.tail == a.head) report.Error("self-loop", "self-loops are not allowed", i);
    if (TooLarge(a.normal_duration) || TooLarge(a.min_duration)) {
      report.Error("magnitude", "duration exceeds 2^40 in magnitude", i);
    }
    if (a.min_duration.is_pos_inf()) {
      report.Error("bad-minimum", "minimum duration cannot be +inf", i);
    }
    if (a.kind == ArcKind::kPrecedence) {
      if (a.normal_duration != 0) {
        report.Error("precedence-duration-nonzero", "precedence duration nonzero", i);
      }
      const auto* lin = std::get_if<LinearCost>(&a.cost);
      if (lin == nullptr || !lin->per_unit.is_pos_inf()) {
        report.Error("precedence-cost", "precedence arcs have infinite expediting cost", i);
      }
      continue;
    }
    if (a.min_duration > ExtendedInt(a.normal_duration)) {
      report.Error("min-above-normal", "minimum duration exceeds normal duration", i);
    }
    if (const auto* lin = std::get_if<LinearCost>(&a.cost)) {
      if (lin->per_unit.is_neg_inf() || (lin->per_unit.is_finite() && lin->per_unit.value() < 0)) {
        report.Error("negative-cost", "expediting cost must be nonnegative", i);
      } else if (TooLarge(lin->per_unit)) {
        report.Error("magnitude", "expediting cost exceeds 2^40", i);
      } else if (lin->per_unit == ExtendedInt(0) &&
                 a.min_duration < ExtendedInt(a.normal_duration)) {
        report.Error("zero-cost-crash", "crashable activity with zero expediting cost", i);
      }
    } else {
      const auto& pieces = std::get<ConvexCost>(a.cost).pieces;
      if (pieces.empty()) {
        report.Error("convex-shape", "convex cost needs at least one piece", i);
        continue;
      }
      if (pieces.front().breakpoint != a.normal_duration) {
        report.Error("convex-shape", "first breakpoint must equal the normal duration", i);
      }
      for (size_t k = 0; k < pieces.size(); ++k) {
        if (TooLarge(pieces[k].breakpoint) || TooLarge(pieces[k].slope)) {
          report.Error("magnitude", "convex piece exceeds 2^40", i);
        }
        if (pieces[k].slope < 1) report.Error("convex-shape", "slopes must be positive", i);
        if (k > 0 && pieces[k].breakpoint >= pieces[k - 1].breakpoint) {
          report.Error("convex-shape", "breakpoints must strictly decrease", i);
        }
        if (k > 0 && pieces[k].slope <= pieces[k - 1].slope) {
          report.Error("convex-shape", "slopes must strictly increase", i);
        }
      }
      if (a.min_duration >= ExtendedInt(pieces.back().breakpoint)) {
        report.Error("convex-shape", "last breakpoint must lie above the minimum duration", i);
      }
    }
  }
  if (!endpoints_ok) return report;

  std::vector<int> tails, heads;
  std::vector<int64_t> lengths;
  for (const ProjectArc& a : p.arcs) {
    tails.push_back(a.tail);
    heads.push_back(a.head);
    lengths.push_back(a.normal_duration);
  }
  if (HasPositiveCycle(n, tails, heads, lengths)) {
    report.Error("positive-cycle", "positive cycle: a directed cycle has positive total duration");
  }
  Digraph g(n, tails, heads);
  std::vector<bool> from_s = g.Reach(p.source, true);
  std::vector<bool> to_t = g.Reach(p.sink, false);
  if (!from_s[p.sink]) report.Error("sink-unreachable", "finish is not reachable from start");
  for (int v = 0; v < n; ++v) {
    if (to_t[v] && !from_s[v]) {
      report.Error("unreachable", "node reaches finish but is not reachable from start", -1, v);
    }
  }
  return report;
}

ValidationReport ValidateMcf(const McfInstance& m, const McfValidationOptions& options) {
  ValidationReport report;
  const int n = m.num_nodes();
  int64_t balance = 0;
  for (int v = 0; v < n; ++v) {
    if (TooLarge(m.supplies[v])) report.Error("magnitude", "supply exceeds 2^40", -1, v);
    balance += m.supplies[v];
  }
  if (balance != 0) report.Error("unbalanced-supply", "unbalanced supply: supplies do not sum to 0");

  bool endpoints_ok = true;
  std::vector<int> tails, heads;
  std::vector<int64_t> lengths;
  for (int i = 0; i < m.num_arcs(); ++i) {
    const McfArc& a = m.arcs[i];
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n) {
      report.Error("bad-endpoint", "arc endpoint out of range", i);
      endpoints_ok = false;
      continue;
    }
    if (a.tail == a.head) report.Error("self-loop", "self-loops are not allowed", i);
    auto check_capacity = [&](const ExtendedInt& cap) {
      if (cap.is_neg_inf() || (cap.is_finite() && cap.value() < 1)) {
        report.Error("capacity", "capacities must be at least 1", i);
      } else if (TooLarge(cap)) {
        report.Error("magnitude", "capacity exceeds 2^40", i);
      }
    };
    int64_t cheapest = a.cost;
    if (a.is_convex()) {
      cheapest = a.convex.front().unit_cost;
      for (size_t k = 0; k < a.convex.size(); ++k) {
        check_capacity(a.convex[k].capacity);
        if (TooLarge(a.convex[k].unit_cost)) report.Error("magnitude", "cost exceeds 2^40", i);
        if (k > 0 && a.convex[k].unit_cost < a.convex[k - 1].unit_cost) {
          report.Error("convex-shape", "piece costs must not decrease", i);
        }
        if (k + 1 < a.convex.size() && a.convex[k].capacity.is_pos_inf()) {
          report.Error("convex-shape", "only the last piece may be unbounded", i);
        }
      }
    } else {
      check_capacity(a.capacity);
      if (TooLarge(a.cost)) report.Error("magnitude", "cost exceeds 2^40", i);
    }
    tails.push_back(a.tail);
    heads.push_back(a.head);
    lengths.push_back(-cheapest);
  }
  if (!endpoints_ok || !report.ok()) return report;

  if (HasPositiveCycle(n, tails, heads, lengths)) {
    report.Error("negative-cycle", "a directed cycle has negative total cost");
  }
  if (m.flow_target.has_value()) {
    int64_t k = *m.flow_target;
    if (k < 0) {
      report.Error("bad-target", "flow target must be nonnegative");
    } else if (k > m.TotalSupply()) {
      report.Error("target-exceeds-supply", "K exceeds the total supply B");
    } else if (options.check_max_flow && report.ok()) {
      ExtendedInt max_flow = McfMaxFlow(m);
      if (max_flow < ExtendedInt(k)) {
        report.Error("k-exceeds-max-flow", "K exceeds max flow (" + max_flow.ToString() + ")");
      }
    }
  }
  return report;
}

StForm NormalizeToSt(const McfInstance& m, bool force_super) {
  StForm st;
  st.instance = m;
  st.original_nodes = m.num_nodes();
  st.original_arcs = m.num_arcs();
  st.total_supply = m.TotalSupply();
  std::vector<int> pos, neg;
  for (int v = 0; v < m.num_nodes(); ++v) {
    if (m.supplies[v] > 0) pos.push_back(v);
    if (m.supplies[v] < 0) neg.push_back(v);
  }
  if (!force_super && pos.size() == 1 && neg.size() == 1) {
    st.source = pos[0];
    st.sink = neg[0];
    return st;
  }
  McfInstance& out = st.instance;
  st.source = out.num_nodes();
  st.sink = out.num_nodes() + 1;
  for (int64_t& b : out.supplies) b = 0;
  out.supplies.push_back(st.total_supply);
  out.supplies.push_back(-st.total_supply);
  for (int v : pos) out.arcs.push_back({st.source, v, 0, m.supplies[v], {}});
  for (int v : neg) out.arcs.push_back({v, st.sink, 0, -m.supplies[v], {}});
  return st;
}

}  // namespace amcflow
