#include "amcflow/oracle.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <variant>

namespace amcflow::oracle {
namespace {

// Stands in for an infinite capacity; far above any finite flow the
// parsers allow on desk-scale instances.
constexpr int64_t kInf = int64_t{1} << 52;
constexpr int64_t kNone = std::numeric_limits<int64_t>::min();

// ---------------------------------------------------------------------------
// Expediting cost of one project arc, straight from its definition.

struct ArcCost {
  int64_t normal = 0;
  std::optional<int64_t> minimum;          // nullopt: no lower limit
  std::vector<int64_t> tops;               // piece p covers [tops[p+1], tops[p]]
  std::vector<std::optional<int64_t>> w;   // nullopt: infinite slope

  static ArcCost Of(const ProjectArc& a) {
    ArcCost c;
    c.normal = a.normal_duration;
    if (a.min_duration.is_finite()) c.minimum = a.min_duration.value();
    if (const auto* lin = std::get_if<LinearCost>(&a.cost)) {
      c.tops = {a.normal_duration};
      c.w = {lin->per_unit.is_finite() ? std::optional<int64_t>(lin->per_unit.value())
                                       : std::nullopt};
    } else {
      for (const ConvexPiece& p : std::get<ConvexCost>(a.cost).pieces) {
        c.tops.push_back(p.breakpoint);
        c.w.push_back(p.slope);
      }
    }
    return c;
  }

  // Cost of running at duration x; nullopt if x is not allowed.
  std::optional<int64_t> At(int64_t x) const {
    if (minimum && x < *minimum) return std::nullopt;
    int64_t total = 0;
    for (size_t p = 0; p < tops.size(); ++p) {
      if (x >= tops[p]) break;
      int64_t bottom = p + 1 < tops.size() ? std::max(x, tops[p + 1]) : x;
      if (!w[p]) return std::nullopt;
      total += (tops[p] - bottom) * *w[p];
    }
    return total;
  }
  // Saving of lengthening by one unit.
  int64_t Lengthen(int64_t x) const { return x >= normal ? 0 : *At(x) - *At(x + 1); }
  // Cost of shortening by one unit; nullopt if impossible.
  std::optional<int64_t> Shorten(int64_t x) const {
    std::optional<int64_t> lower = At(x - 1);
    if (!lower) return std::nullopt;
    return *lower - *At(x);
  }
};

// ---------------------------------------------------------------------------
// Dinic max flow on an explicit residual graph.

class Dinic {
 public:
  explicit Dinic(int n) : adj_(n), level_(n), it_(n) {}
  int AddEdge(int u, int v, int64_t cap) {
    adj_[u].push_back(static_cast<int>(to_.size()));
    to_.push_back(v);
    cap_.push_back(cap);
    adj_[v].push_back(static_cast<int>(to_.size()));
    to_.push_back(u);
    cap_.push_back(0);
    return static_cast<int>(to_.size()) - 2;
  }
  int64_t Run(int s, int t, int64_t limit = kInf) {
    int64_t total = 0;
    while (total < limit && Bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (int64_t f = Dfs(s, t, limit - total)) total += f;
    }
    return total;
  }
  int64_t Residual(int e) const { return cap_[e]; }
  void Disable(int e) { cap_[e] = cap_[e ^ 1] = 0; }
  std::vector<bool> ReachableFrom(int s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<int> stack = {s};
    seen[s] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int e : adj_[u]) {
        if (cap_[e] > 0 && !seen[to_[e]]) {
          seen[to_[e]] = true;
          stack.push_back(to_[e]);
        }
      }
    }
    return seen;
  }

 private:
  bool Bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e : adj_[u]) {
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          q.push(to_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }
  int64_t Dfs(int u, int t, int64_t pushed) {
    if (u == t || pushed == 0) return pushed;
    for (int& i = it_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
      int e = adj_[u][i];
      int v = to_[e];
      if (cap_[e] <= 0 || level_[v] != level_[u] + 1) continue;
      if (int64_t f = Dfs(v, t, std::min(pushed, cap_[e]))) {
        cap_[e] -= f;
        cap_[e ^ 1] += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> to_;
  std::vector<int64_t> cap_;
  std::vector<int> level_, it_;
};

struct Schedule {
  std::vector<int64_t> et, lt;
  int64_t makespan = 0;
};

Schedule Cpm(const ProjectNetwork& p, const std::vector<int64_t>& x) {
  const int n = p.num_nodes();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (int a = 0; a < p.num_arcs(); ++a) {
    out[p.arcs[a].tail].push_back(a);
    ++indeg[p.arcs[a].head];
  }
  std::vector<int> order;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) order.push_back(v);
  }
  for (size_t i = 0; i < order.size(); ++i) {
    for (int a : out[order[i]]) {
      if (--indeg[p.arcs[a].head] == 0) order.push_back(p.arcs[a].head);
    }
  }
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("PdSolve needs a DAG");
  Schedule s;
  s.et.assign(n, kNone);
  s.lt.assign(n, kNone);
  s.et[p.source] = 0;
  for (int v : order) {
    if (s.et[v] == kNone) continue;
    for (int a : out[v]) {
      int w = p.arcs[a].head;
      s.et[w] = std::max(s.et[w], s.et[v] + x[a]);
    }
  }
  s.makespan = s.et[p.sink];
  s.lt[p.sink] = s.makespan;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    for (int a : out[v]) {
      int w = p.arcs[a].head;
      if (s.lt[w] == kNone) continue;
      int64_t cand = s.lt[w] - x[a];
      if (s.lt[v] == kNone || cand < s.lt[v]) s.lt[v] = cand;
    }
  }
  return s;
}

}  // namespace

std::optional<int64_t> PdCurve::Cost(int64_t makespan) const {
  int64_t i = normal_makespan - makespan;
  if (i < 0 || i >= static_cast<int64_t>(cost.size())) return std::nullopt;
  return cost[i];
}

PdCurve PdSolve(const ProjectNetwork& p, std::optional<int64_t> target, int64_t max_steps) {
  const int n = p.num_nodes();
  const int m = p.num_arcs();
  std::vector<ArcCost> costs;
  std::vector<int64_t> x(m);
  for (int a = 0; a < m; ++a) {
    costs.push_back(ArcCost::Of(p.arcs[a]));
    x[a] = p.arcs[a].normal_duration;
  }
  Schedule sched = Cpm(p, x);
  if (sched.makespan == kNone) throw std::invalid_argument("finish not reachable");
  PdCurve curve;
  curve.normal_makespan = sched.makespan;
  curve.cost.push_back(0);
  while (curve.steps < max_steps && !(target && sched.makespan <= *target)) {
    auto critical = [&](int v) { return sched.et[v] != kNone && sched.et[v] == sched.lt[v]; };
    // Network of zero-slack arcs, bounds (c+, c-), plus the lower-bound
    // reduction: t->s return arc and excess terminals.
    const int ss = n, tt = n + 1;
    Dinic net(n + 2);
    std::vector<int> edge(m, -1);
    std::vector<int64_t> lower(m, 0), upper(m, 0);
    std::vector<int64_t> excess(n, 0);
    for (int a = 0; a < m; ++a) {
      int i = p.arcs[a].tail, j = p.arcs[a].head;
      if (!critical(i) || !critical(j) || sched.lt[j] - sched.et[i] - x[a] != 0) continue;
      lower[a] = costs[a].Lengthen(x[a]);
      std::optional<int64_t> up = costs[a].Shorten(x[a]);
      upper[a] = up ? *up : kInf;
      edge[a] = net.AddEdge(i, j, upper[a] == kInf ? kInf : upper[a] - lower[a]);
      excess[j] += lower[a];
      excess[i] -= lower[a];
    }
    int back = net.AddEdge(p.sink, p.source, kInf);
    int64_t need = 0;
    for (int v = 0; v < n; ++v) {
      if (excess[v] > 0) {
        net.AddEdge(ss, v, excess[v]);
        need += excess[v];
      } else if (excess[v] < 0) {
        net.AddEdge(v, tt, -excess[v]);
      }
    }
    if (net.Run(ss, tt) != need) throw std::logic_error("PdSolve: lower bounds infeasible");
    net.Disable(back);
    int64_t extra = net.Run(p.source, p.sink);
    if (extra >= kInf / 2) {
      curve.reached_minimum = true;
      break;
    }
    std::vector<bool> side = net.ReachableFrom(p.source);
    int64_t cut = 0;
    for (int a = 0; a < m; ++a) {
      if (edge[a] < 0) continue;
      bool from = side[p.arcs[a].tail], to = side[p.arcs[a].head];
      if (from && !to) {
        if (upper[a] == kInf) throw std::logic_error("PdSolve: infinite arc in a finite cut");
        cut += upper[a];
        --x[a];
      } else if (!from && to) {
        cut -= lower[a];
        if (lower[a] > 0) ++x[a];
      }
    }
    int64_t before = sched.makespan;
    sched = Cpm(p, x);
    if (sched.makespan != before - 1) {
      throw std::logic_error("PdSolve: a unit step did not shorten the project by one");
    }
    curve.cost.push_back(curve.cost.back() + cut);
    ++curve.steps;
  }
  return curve;
}

SspResult SspMinCostFlow(const McfInstance& m, int64_t k) {
  // Own s,t form: super terminals unless exactly one source and one sink.
  const int n0 = m.num_nodes();
  std::vector<int> pos, neg;
  for (int v = 0; v < n0; ++v) {
    if (m.supplies[v] > 0) pos.push_back(v);
    if (m.supplies[v] < 0) neg.push_back(v);
  }
  const bool super = !(pos.size() == 1 && neg.size() == 1);
  const int n = super ? n0 + 2 : n0;
  const int s = super ? n0 : pos[0];
  const int t = super ? n0 + 1 : neg[0];

  struct Edge {
    int to;
    int64_t cap;
    int64_t cost;
    int arc;  // original arc, or -1
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj(n);
  auto add = [&](int u, int v, int64_t cap, int64_t cost, int arc) {
    adj[u].push_back(static_cast<int>(edges.size()));
    edges.push_back({v, cap, cost, arc});
    adj[v].push_back(static_cast<int>(edges.size()));
    edges.push_back({u, 0, -cost, arc});
  };
  auto cap_of = [](const ExtendedInt& c) { return c.is_finite() ? c.value() : kInf; };
  for (int a = 0; a < m.num_arcs(); ++a) {
    const McfArc& arc = m.arcs[a];
    if (arc.is_convex()) {
      for (const FlowPiece& piece : arc.convex) {
        add(arc.tail, arc.head, cap_of(piece.capacity), piece.unit_cost, a);
      }
    } else {
      add(arc.tail, arc.head, cap_of(arc.capacity), arc.cost, a);
    }
  }
  if (super) {
    for (int v : pos) add(s, v, m.supplies[v], 0, -1);
    for (int v : neg) add(v, t, -m.supplies[v], 0, -1);
  }

  // Shortest-path potentials from a virtual source (no negative cycles).
  std::vector<int64_t> pi(n, 0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int u = 0; u < n; ++u) {
      for (int e : adj[u]) {
        if (edges[e].cap > 0 && pi[u] + edges[e].cost < pi[edges[e].to]) {
          pi[edges[e].to] = pi[u] + edges[e].cost;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  SspResult result;
  int64_t sent = 0;
  while (sent < k) {
    std::vector<int64_t> dist(n, kNone);
    std::vector<int> via(n, -1);
    using Item = std::pair<int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[s] = 0;
    heap.push({0, s});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d != dist[u]) continue;
      for (int e : adj[u]) {
        if (edges[e].cap <= 0) continue;
        int v = edges[e].to;
        int64_t nd = d + edges[e].cost + pi[u] - pi[v];
        if (dist[v] == kNone || nd < dist[v]) {
          dist[v] = nd;
          via[v] = e;
          heap.push({nd, v});
        }
      }
    }
    if (dist[t] == kNone) return result;  // infeasible
    int64_t reach_max = 0;
    for (int v = 0; v < n; ++v) {
      if (dist[v] != kNone) reach_max = std::max(reach_max, dist[v]);
    }
    for (int v = 0; v < n; ++v) pi[v] += dist[v] == kNone ? reach_max : dist[v];
    int64_t push = k - sent;
    for (int v = t; v != s; v = edges[via[v] ^ 1].to) push = std::min(push, edges[via[v]].cap);
    for (int v = t; v != s; v = edges[via[v] ^ 1].to) {
      edges[via[v]].cap -= push;
      edges[via[v] ^ 1].cap += push;
    }
    sent += push;
    ++result.augmentations;
  }
  result.feasible = true;
  result.flow.assign(m.num_arcs(), 0);
  for (size_t e = 0; e < edges.size(); e += 2) {
    if (edges[e].arc < 0) continue;
    int64_t f = edges[e + 1].cap;
    result.flow[edges[e].arc] += f;
    result.objective += f * edges[e].cost;
  }
  result.potential.resize(n);
  for (int v = 0; v < n; ++v) result.potential[v] = -pi[v];
  return result;
}

BruteAssignmentResult BruteAssignment(const std::vector<std::vector<std::optional<int64_t>>>& c,
                                      bool maximize) {
  const int n = static_cast<int>(c.size());
  if (n > 8) throw std::invalid_argument("BruteAssignment: n > 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BruteAssignmentResult best;
  do {
    int64_t total = 0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!c[i][perm[i]]) {
        ok = false;
      } else {
        total += *c[i][perm[i]];
      }
    }
    if (!ok) continue;
    if (!best.feasible || (maximize ? total > best.objective : total < best.objective)) {
      best.feasible = true;
      best.objective = total;
      best.match = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace amcflow::oracle
