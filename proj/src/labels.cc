#include "amcflow/labels.h"

#include <algorithm>
#include <deque>
#include <limits>

#include "amcflow/pairing_heap.h"

namespace amcflow {
namespace {

constexpr int64_t kUnset = std::numeric_limits<int64_t>::min();

void RequireAllSet(const std::vector<int64_t>& dist, const char* what) {
  for (int64_t d : dist) {
    if (d == kUnset) throw std::invalid_argument(what);
  }
}

// Dijkstra over nonnegative reduced lengths, following out-arcs (forward) or
// in-arcs (backward) from `root`.
std::vector<int64_t> ReducedDistances(const Digraph& g, int root, const std::vector<int64_t>& red,
                                      bool forward) {
  std::vector<int64_t> dist(g.num_nodes(), kUnset);
  std::vector<bool> done(g.num_nodes(), false);
  PairingHeap<int64_t> heap(g.num_nodes());
  dist[root] = 0;
  heap.Push(root, 0);
  while (!heap.Empty()) {
    int v = heap.Top();
    heap.Pop();
    done[v] = true;
    for (int a : forward ? g.OutArcs(v) : g.InArcs(v)) {
      int w = forward ? g.Head(a) : g.Tail(a);
      if (done[w]) continue;
      int64_t cand = dist[v] + red[a];
      if (dist[w] == kUnset || cand < dist[w]) {
        dist[w] = cand;
        heap.PushOrDecrease(w, cand);
      }
    }
  }
  return dist;
}

}  // namespace

int NodeLabels::CountCritical() const {
  int count = 0;
  for (size_t v = 0; v < earliest.size(); ++v) count += earliest[v] == latest[v];
  return count;
}

NodeLabels CpmLabels(const Digraph& g, int source, int sink, std::span<const int64_t> x) {
  std::vector<int> order = g.TopologicalOrder();
  if (order.empty() && g.num_nodes() > 0) {
    throw std::invalid_argument("CpmLabels: graph has a cycle");
  }
  const int n = g.num_nodes();
  std::vector<int64_t> et(n, kUnset), lt(n, kUnset);
  et[source] = 0;
  for (int v : order) {
    if (et[v] == kUnset) continue;
    for (int a : g.OutArcs(v)) {
      int w = g.Head(a);
      et[w] = std::max(et[w], et[v] + x[a]);
    }
  }
  RequireAllSet(et, "CpmLabels: node not reachable from source");
  // Latest starts, propagated with an "unset" marker standing for +inf.
  lt[sink] = et[sink];
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (lt[v] == kUnset) continue;
    for (int a : g.InArcs(v)) {
      int u = g.Tail(a);
      int64_t cand = lt[v] - x[a];
      if (lt[u] == kUnset || cand < lt[u]) lt[u] = cand;
    }
  }
  RequireAllSet(lt, "CpmLabels: node does not reach sink");
  int64_t makespan = et[sink];
  return {std::move(et), std::move(lt), makespan};
}

Potentials InitPotentials(const Digraph& g, int source, std::span<const int64_t> x) {
  const int n = g.num_nodes();
  std::vector<int64_t> dist(n, kUnset);
  std::vector<int> relaxations(n, 0);  // times queued
  std::vector<bool> queued(n, false);
  std::deque<int> queue = {source};
  dist[source] = 0;
  queued[source] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    queued[v] = false;
    for (int a : g.OutArcs(v)) {
      int w = g.Head(a);
      int64_t cand = dist[v] + x[a];
      if (dist[w] == kUnset || cand > dist[w]) {
        dist[w] = cand;
        if (!queued[w]) {
          // Without a positive cycle a node is queued at most n times.
          if (++relaxations[w] > n) throw PositiveCycleError();
          queued[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  RequireAllSet(dist, "InitPotentials: node not reachable from source");
  return {std::move(dist)};
}

NodeLabels SsspLabels(const Digraph& g, int source, int sink, std::span<const int64_t> x,
                      const Potentials& potentials) {
  const std::vector<int64_t>& pi = potentials.pi;
  std::vector<int64_t> red(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) {
    red[a] = pi[g.Head(a)] - pi[g.Tail(a)] - x[a];
    if (red[a] < 0) throw std::logic_error("SsspLabels: potentials violate an arc");
  }
  std::vector<int64_t> fwd = ReducedDistances(g, source, red, true);
  std::vector<int64_t> bwd = ReducedDistances(g, sink, red, false);
  RequireAllSet(fwd, "SsspLabels: node not reachable from source");
  RequireAllSet(bwd, "SsspLabels: node does not reach sink");
  const int n = g.num_nodes();
  NodeLabels labels;
  labels.earliest.resize(n);
  labels.latest.resize(n);
  for (int v = 0; v < n; ++v) labels.earliest[v] = pi[v] - pi[source] - fwd[v];
  labels.makespan = labels.earliest[sink];
  for (int v = 0; v < n; ++v) {
    int64_t to_sink = pi[sink] - pi[v] - bwd[v];
    labels.latest[v] = labels.makespan - to_sink;
  }
  return labels;
}

std::vector<int64_t> DurationsFromLabels(const Digraph& g, std::span<const int64_t> normal,
                                         const NodeLabels& labels) {
  std::vector<int64_t> x(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) {
    x[a] = std::min(labels.latest[g.Head(a)] - labels.earliest[g.Tail(a)], normal[a]);
  }
  return x;
}

}  // namespace amcflow
