#include "amcflow/maxflow.h"

#include <algorithm>
#include <stdexcept>

namespace amcflow {

AugmentOutcome AugmentToMax(const Digraph& g, int source, int sink, const FlowBounds& bounds,
                            FlowState& state, ExtendedInt limit) {
  AugmentOutcome outcome;
  const int n = g.num_nodes();
  std::vector<int> parent_arc(n);
  std::vector<bool> seen(n);
  std::vector<int> queue;
  queue.reserve(n);
  while (ExtendedInt(state.value) < limit) {
    std::fill(seen.begin(), seen.end(), false);
    queue.clear();
    queue.push_back(source);
    seen[source] = true;
    for (size_t head = 0; head < queue.size() && !seen[sink]; ++head) {
      int v = queue[head];
      for (int a : g.OutArcs(v)) {
        int w = g.Head(a);
        if (seen[w] || !bounds.active[a]) continue;
        if (bounds.upper[a] > ExtendedInt(state.flow[a])) {
          seen[w] = true;
          parent_arc[w] = a;
          queue.push_back(w);
        }
      }
      for (int a : g.InArcs(v)) {
        int w = g.Tail(a);
        if (seen[w] || !bounds.active[a]) continue;
        if (state.flow[a] > bounds.lower[a]) {
          seen[w] = true;
          parent_arc[w] = a;
          queue.push_back(w);
        }
      }
    }
    if (!seen[sink]) break;
    ExtendedInt push = limit - ExtendedInt(state.value);
    for (int v = sink; v != source;) {
      int a = parent_arc[v];
      bool forward = g.Head(a) == v;
      ExtendedInt room = forward ? bounds.upper[a] - ExtendedInt(state.flow[a])
                                 : ExtendedInt(state.flow[a] - bounds.lower[a]);
      push = Min(push, room);
      v = forward ? g.Tail(a) : g.Head(a);
    }
    if (!push.is_finite()) {
      outcome.unbounded = true;
      break;
    }
    int64_t delta = push.value();
    for (int v = sink; v != source;) {
      int a = parent_arc[v];
      bool forward = g.Head(a) == v;
      state.flow[a] += forward ? delta : -delta;
      v = forward ? g.Tail(a) : g.Head(a);
    }
    state.value = CheckedAdd(state.value, delta);
    ++outcome.augmentations;
  }
  return outcome;
}

std::vector<int> ExpandReach(const Digraph& g, const FlowBounds& bounds,
                             std::span<const int64_t> flow, std::span<const int> frontier,
                             std::vector<bool>& in_set) {
  std::vector<int> reached;
  std::vector<int> queue(frontier.begin(), frontier.end());
  for (size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int a : g.OutArcs(v)) {
      int w = g.Head(a);
      if (in_set[w] || !bounds.active[a]) continue;
      if (bounds.upper[a] > ExtendedInt(flow[a])) {
        in_set[w] = true;
        reached.push_back(w);
        queue.push_back(w);
      }
    }
    for (int a : g.InArcs(v)) {
      int w = g.Tail(a);
      if (in_set[w] || !bounds.active[a]) continue;
      if (flow[a] > bounds.lower[a]) {
        in_set[w] = true;
        reached.push_back(w);
        queue.push_back(w);
      }
    }
  }
  return reached;
}

ExtendedInt McfMaxFlow(const McfInstance& m) {
  StForm st = NormalizeToSt(m);
  const McfInstance& inst = st.instance;
  std::vector<int> tails, heads;
  FlowBounds bounds;
  for (const McfArc& a : inst.arcs) {
    tails.push_back(a.tail);
    heads.push_back(a.head);
    bounds.active.push_back(true);
    bounds.lower.push_back(0);
    bounds.upper.push_back(a.TotalCapacity());
  }
  Digraph g(inst.num_nodes(), tails, heads);
  FlowState state{std::vector<int64_t>(inst.num_arcs(), 0), 0};
  AugmentOutcome out = AugmentToMax(g, st.source, st.sink, bounds, state);
  if (out.unbounded) return ExtendedInt::PosInf();
  return state.value;
}

}  // namespace amcflow
