// Earliest/latest start labels (longest paths), slacks and potentials.

#ifndef AMCFLOW_LABELS_H_
#define AMCFLOW_LABELS_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "amcflow/digraph.h"

namespace amcflow {

struct NodeLabels {
  std::vector<int64_t> earliest;  // ET
  std::vector<int64_t> latest;    // LT
  int64_t makespan = 0;

  bool IsCritical(int v) const { return earliest[v] == latest[v]; }
  int CountCritical() const;
};

// Longest-path potentials: pi[head] >= pi[tail] + length for every arc.
struct Potentials {
  std::vector<int64_t> pi;
};

class PositiveCycleError : public std::runtime_error {
 public:
  PositiveCycleError() : std::runtime_error("positive-length cycle") {}
};

// All label functions require every node to lie on some source→sink path.

// Topological CPM, O(m). Throws std::invalid_argument on a cyclic graph.
NodeLabels CpmLabels(const Digraph& g, int source, int sink, std::span<const int64_t> x);

// Bellman-Ford longest distances from `source`. Throws PositiveCycleError.
Potentials InitPotentials(const Digraph& g, int source, std::span<const int64_t> x);

// Dijkstra on potential-reduced lengths, O(m + n log n). Throws
// std::logic_error if some arc has pi[head] - pi[tail] - x < 0.
NodeLabels SsspLabels(const Digraph& g, int source, int sink, std::span<const int64_t> x,
                      const Potentials& potentials);

inline int64_t Slack(const NodeLabels& labels, int tail, int head, int64_t x) {
  return labels.latest[head] - labels.earliest[tail] - x;
}

// x_ij = min(LT(j) - ET(i), d_ij).
std::vector<int64_t> DurationsFromLabels(const Digraph& g, std::span<const int64_t> normal,
                                         const NodeLabels& labels);

}  // namespace amcflow

#endif  // AMCFLOW_LABELS_H_
