// Seeded random instance families. Every generated flow instance has a
// flow target no larger than its max flow.

#ifndef AMCFLOW_GENERATE_H_
#define AMCFLOW_GENERATE_H_

#include <cstdint>
#include <optional>
#include <string>

#include "amcflow/core_model.h"
#include "amcflow/mcf_api.h"

namespace amcflow {

struct GenOptions {
  int n = 10;
  int m = 0;  // 0 picks a family default
  int64_t max_cost = 100;
  int64_t max_capacity = 10;
  int max_pieces = 3;
  int64_t max_duration = 10;
  std::optional<int64_t> k;  // requested flow target, clipped to the max flow
  uint64_t seed = 1;
};

// Node-split digraph: every inner node is an in/out pair joined by a unit
// arc. Source 0, sink 1, and about n/8 extra arcs at each terminal.
McfInstance GenerateUnitVertex(const GenOptions& o);
// Random digraph with unit capacities.
McfInstance GenerateUnitArc(const GenOptions& o);
// n x n matrix, entries in [0, max_cost], about a tenth missing but always
// with a perfect matching.
AssignmentMatrix GenerateAssignment(const GenOptions& o);
// Random digraph (cycles allowed) with one to three sources and sinks,
// some uncapacitated arcs.
McfInstance GenerateKFlow(const GenOptions& o);
// As GenerateKFlow with convex arcs of up to max_pieces pieces.
McfInstance GenerateConvex(const GenOptions& o);
// Acyclic project, every node on a start-finish path, mixing linear,
// convex and precedence arcs with finite minimum durations.
ProjectNetwork GenerateDagProject(const GenOptions& o);

}  // namespace amcflow

#endif  // AMCFLOW_GENERATE_H_
