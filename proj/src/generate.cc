#include "amcflow/generate.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "amcflow/maxflow.h"

namespace amcflow {
namespace {

// Stable across standard libraries, unlike the <random> distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  int64_t Uniform(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(engine_() % static_cast<uint64_t>(hi - lo + 1));
  }
  bool Chance(int percent) { return Uniform(0, 99) < percent; }

 private:
  std::mt19937_64 engine_;
};

// Clips the requested target to the max flow (and the supply).
void SetTarget(McfInstance& m, const GenOptions& o, Rng& rng) {
  ExtendedInt max_flow = McfMaxFlow(m);
  int64_t cap = Min(max_flow, ExtendedInt(m.TotalSupply())).value();
  m.flow_target = o.k ? std::min(*o.k, cap) : rng.Uniform(std::min<int64_t>(1, cap), cap);
}

// Supplies of `total` split over the given nodes, each at least 1 while
// units last.
void Spread(std::vector<int64_t>& supplies, const std::vector<int>& nodes, int64_t total,
            int sign, Rng& rng) {
  std::vector<int64_t> share(nodes.size(), 0);
  for (int64_t u = 0; u < total; ++u) {
    size_t i = u < static_cast<int64_t>(nodes.size()) ? u : rng.Uniform(0, nodes.size() - 1);
    ++share[i];
  }
  for (size_t i = 0; i < nodes.size(); ++i) supplies[nodes[i]] = sign * share[i];
}

McfInstance SingleCommodity(int nodes, int source, int sink, std::vector<McfArc> arcs) {
  McfInstance m;
  m.supplies.assign(nodes, 0);
  m.arcs = std::move(arcs);
  // Supply equal to the max flow, found with a generous provisional supply.
  int64_t out = 0;
  for (const McfArc& a : m.arcs) {
    if (a.tail == source) out += a.TotalCapacity().is_finite() ? a.TotalCapacity().value() : 1;
  }
  m.supplies[source] = out;
  m.supplies[sink] = -out;
  ExtendedInt max_flow = McfMaxFlow(m);
  int64_t f = Min(max_flow, ExtendedInt(out)).value();
  m.supplies[source] = f;
  m.supplies[sink] = -f;
  return m;
}

McfInstance RandomNetwork(const GenOptions& o, Rng& rng, bool convex) {
  const int n = std::max(o.n, 2);
  const int m = o.m > 0 ? o.m : 4 * n;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.Uniform(0, i)]);
  const int max_terminals = std::max(1, std::min(3, n / 2));
  const int num_sources = static_cast<int>(rng.Uniform(1, max_terminals));
  const int num_sinks = static_cast<int>(rng.Uniform(1, max_terminals));
  std::vector<int> sources(order.begin(), order.begin() + num_sources);
  std::vector<int> sinks(order.end() - num_sinks, order.end());

  auto make_arc = [&](int u, int v) {
    McfArc a;
    a.tail = u;
    a.head = v;
    if (convex && rng.Chance(70)) {
      int pieces = static_cast<int>(rng.Uniform(1, std::max(1, o.max_pieces)));
      int64_t cost = rng.Uniform(0, o.max_cost / 2);
      for (int p = 0; p < pieces; ++p) {
        bool last = p + 1 == pieces;
        ExtendedInt cap = last && rng.Chance(15) ? ExtendedInt::PosInf()
                                                 : ExtendedInt(rng.Uniform(1, o.max_capacity));
        a.convex.push_back({cap, cost});
        cost += rng.Uniform(1, std::max<int64_t>(1, o.max_cost / 4));
      }
    } else {
      a.cost = rng.Uniform(0, o.max_cost);
      a.capacity = rng.Chance(10) ? ExtendedInt::PosInf()
                                  : ExtendedInt(rng.Uniform(1, o.max_capacity));
    }
    return a;
  };

  McfInstance inst;
  inst.supplies.assign(n, 0);
  // A short random path from every source to some sink.
  for (int s : sources) {
    int prev = s;
    int hops = static_cast<int>(rng.Uniform(0, 3));
    for (int h = 0; h < hops; ++h) {
      int v = static_cast<int>(rng.Uniform(0, n - 1));
      if (v == prev) continue;
      inst.arcs.push_back(make_arc(prev, v));
      prev = v;
    }
    int t = sinks[rng.Uniform(0, num_sinks - 1)];
    if (t != prev) inst.arcs.push_back(make_arc(prev, t));
  }
  while (inst.num_arcs() < m) {
    int u = static_cast<int>(rng.Uniform(0, n - 1));
    int v = static_cast<int>(rng.Uniform(0, n - 1));
    if (u != v) inst.arcs.push_back(make_arc(u, v));
  }
  int64_t total = rng.Uniform(std::max(num_sources, num_sinks), 3 * o.max_capacity);
  Spread(inst.supplies, sources, total, 1, rng);
  Spread(inst.supplies, sinks, total, -1, rng);
  SetTarget(inst, o, rng);
  return inst;
}

}  // namespace

McfInstance GenerateUnitVertex(const GenOptions& o) {
  Rng rng(o.seed);
  const int inner = std::max(o.n - 2, 1);
  const int nodes = 2 + 2 * inner;
  const int m = o.m > 0 ? o.m : 8 * o.n;
  auto in = [](int i) { return 2 + 2 * i; };
  auto out = [](int i) { return 3 + 2 * i; };
  std::vector<McfArc> arcs;
  for (int i = 0; i < inner; ++i) arcs.push_back({in(i), out(i), 0, 1, {}});
  arcs.push_back({0, in(0), rng.Uniform(0, o.max_cost), 1, {}});
  for (int i = 0; i + 1 < inner; ++i) {
    arcs.push_back({out(i), in(i + 1), rng.Uniform(0, o.max_cost), 1, {}});
  }
  arcs.push_back({out(inner - 1), 1, rng.Uniform(0, o.max_cost), 1, {}});
  // Fans at the terminals so the max flow grows with n.
  for (int f = 0; f < inner / 8; ++f) {
    arcs.push_back({0, in(static_cast<int>(rng.Uniform(0, inner - 1))),
                    rng.Uniform(0, o.max_cost), 1, {}});
    arcs.push_back({out(static_cast<int>(rng.Uniform(0, inner - 1))), 1,
                    rng.Uniform(0, o.max_cost), 1, {}});
  }
  while (static_cast<int>(arcs.size()) < m) {
    // Tails: source or an out node; heads: an in node or the sink.
    int64_t a = rng.Uniform(-1, inner - 1);
    int64_t b = rng.Uniform(0, inner);
    int tail = a < 0 ? 0 : out(static_cast<int>(a));
    int head = b == inner ? 1 : in(static_cast<int>(b));
    if (a >= 0 && a == b) continue;
    arcs.push_back({tail, head, rng.Uniform(0, o.max_cost), 1, {}});
  }
  McfInstance inst = SingleCommodity(nodes, 0, 1, std::move(arcs));
  SetTarget(inst, o, rng);
  return inst;
}

McfInstance GenerateUnitArc(const GenOptions& o) {
  Rng rng(o.seed);
  const int n = std::max(o.n, 2);
  const int m = o.m > 0 ? o.m : 4 * n;
  std::vector<McfArc> arcs;
  std::vector<int> chain(n - 2);
  std::iota(chain.begin(), chain.end(), 1);
  for (int i = static_cast<int>(chain.size()) - 1; i > 0; --i) {
    std::swap(chain[i], chain[rng.Uniform(0, i)]);
  }
  chain.insert(chain.begin(), 0);
  chain.push_back(n - 1);
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    arcs.push_back({chain[i], chain[i + 1], rng.Uniform(0, o.max_cost), 1, {}});
  }
  while (static_cast<int>(arcs.size()) < m) {
    int u = static_cast<int>(rng.Uniform(0, n - 1));
    int v = static_cast<int>(rng.Uniform(0, n - 1));
    if (u != v) arcs.push_back({u, v, rng.Uniform(0, o.max_cost), 1, {}});
  }
  McfInstance inst = SingleCommodity(n, 0, n - 1, std::move(arcs));
  SetTarget(inst, o, rng);
  return inst;
}

AssignmentMatrix GenerateAssignment(const GenOptions& o) {
  Rng rng(o.seed);
  const int n = std::max(o.n, 1);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.Uniform(0, i)]);
  AssignmentMatrix costs(n, std::vector<std::optional<int64_t>>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == perm[i] || !rng.Chance(10)) costs[i][j] = rng.Uniform(0, o.max_cost);
    }
  }
  return costs;
}

McfInstance GenerateKFlow(const GenOptions& o) {
  Rng rng(o.seed);
  return RandomNetwork(o, rng, false);
}

McfInstance GenerateConvex(const GenOptions& o) {
  Rng rng(o.seed);
  return RandomNetwork(o, rng, true);
}

ProjectNetwork GenerateDagProject(const GenOptions& o) {
  Rng rng(o.seed);
  const int n = std::max(o.n, 2);
  const int m = o.m > 0 ? o.m : 2 * n;
  ProjectNetwork p;
  for (int v = 0; v < n; ++v) p.AddNode("v" + std::to_string(v));
  p.source = 0;
  p.sink = n - 1;
  auto add = [&](int u, int v) {
    int64_t kind = rng.Uniform(0, 99);
    if (kind < 15) {
      p.arcs.push_back(MakePrecedence(u, v));
    } else if (kind < 35) {
      int pieces = static_cast<int>(rng.Uniform(1, std::max(1, o.max_pieces)));
      int64_t range = pieces + rng.Uniform(0, 4);
      int64_t d = range + rng.Uniform(0, o.max_duration);
      int64_t dmin = d - range;
      // pieces-1 distinct interior breakpoints in (dmin, d).
      std::vector<int64_t> cuts(range - 1);
      std::iota(cuts.begin(), cuts.end(), dmin + 1);
      for (int i = static_cast<int>(cuts.size()) - 1; i > 0; --i) {
        std::swap(cuts[i], cuts[rng.Uniform(0, i)]);
      }
      cuts.resize(pieces - 1);
      std::sort(cuts.rbegin(), cuts.rend());
      std::vector<ConvexPiece> list;
      int64_t slope = rng.Uniform(1, std::max<int64_t>(1, o.max_cost / 2));
      list.push_back({d, slope});
      for (int64_t b : cuts) {
        slope += rng.Uniform(1, std::max<int64_t>(1, o.max_cost / 4));
        list.push_back({b, slope});
      }
      p.arcs.push_back(MakeConvexActivity(u, v, dmin, std::move(list)));
    } else {
      int64_t d = rng.Uniform(0, o.max_duration);
      int64_t dmin = std::max<int64_t>(0, d - rng.Uniform(0, 4));
      p.arcs.push_back(MakeActivity(u, v, d, dmin, rng.Uniform(1, o.max_cost)));
    }
  };
  for (int v = 1; v + 1 < n; ++v) {
    add(static_cast<int>(rng.Uniform(0, v - 1)), v);
    add(v, static_cast<int>(rng.Uniform(v + 1, n - 1)));
  }
  if (n == 2) add(0, 1);
  while (p.num_arcs() < m) {
    int u = static_cast<int>(rng.Uniform(0, n - 2));
    int v = static_cast<int>(rng.Uniform(u + 1, n - 1));
    add(u, v);
  }
  return p;
}

}  // namespace amcflow
