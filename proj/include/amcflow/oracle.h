// Slow exact reference solvers. They use only the instance types and carry
// their own longest-path, max-flow and shortest-path code.

#ifndef AMCFLOW_ORACLE_H_
#define AMCFLOW_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "amcflow/core_model.h"

namespace amcflow::oracle {

struct PdCurve {
  int64_t normal_makespan = 0;
  // cost[i] = Z(normal_makespan - i).
  std::vector<int64_t> cost;
  bool reached_minimum = false;  // stopped on an infinite cut
  int64_t steps = 0;

  int64_t min_makespan() const { return normal_makespan - static_cast<int64_t>(cost.size()) + 1; }
  std::optional<int64_t> Cost(int64_t makespan) const;
};

// Unit-step repeated cuts on an acyclic project: one minimum cut with lower
// bounds per unit of makespan, labels recomputed from scratch each step.
// Stops at `target`, on an infinite cut, or after `max_steps` steps.
PdCurve PdSolve(const ProjectNetwork& p, std::optional<int64_t> target = std::nullopt,
                int64_t max_steps = 100000);

struct SspResult {
  bool feasible = false;
  int64_t objective = 0;
  std::vector<int64_t> flow;  // per original arc
  // Per s,t-form node, in the convention c + pi_head - pi_tail >= 0 on
  // residual arcs.
  std::vector<std::optional<int64_t>> potential;
  int64_t augmentations = 0;
};

// Successive shortest paths for exactly k units, convex arcs expanded into
// one arc per piece.
SspResult SspMinCostFlow(const McfInstance& m, int64_t k);

struct BruteAssignmentResult {
  bool feasible = false;
  int64_t objective = 0;
  std::vector<int> match;
};

// Enumerates all n! permutations (n <= 8).
BruteAssignmentResult BruteAssignment(const std::vector<std::vector<std::optional<int64_t>>>& c,
                                      bool maximize);

}  // namespace amcflow::oracle

#endif  // AMCFLOW_ORACLE_H_
