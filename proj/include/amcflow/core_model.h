// Problem instances: project networks for time-cost tradeoff and min-cost
// flow instances, plus their validation.

#ifndef AMCFLOW_CORE_MODEL_H_
#define AMCFLOW_CORE_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "amcflow/numeric.h"

namespace amcflow {

enum class ArcKind { kActivity, kPrecedence };

// Cost per unit of shortening below the normal duration. PosInf means the
// arc cannot be shortened at any price.
struct LinearCost {
  ExtendedInt per_unit;
};

// One linear piece of a convex expediting cost. Piece p covers durations
// [breakpoint_{p+1}, breakpoint_p], the last piece ends at the arc minimum.
struct ConvexPiece {
  int64_t breakpoint;
  int64_t slope;
};

struct ConvexCost {
  std::vector<ConvexPiece> pieces;
};

using CostSpec = std::variant<LinearCost, ConvexCost>;

struct ProjectArc {
  int tail = 0;
  int head = 0;
  ArcKind kind = ArcKind::kActivity;
  int64_t normal_duration = 0;
  ExtendedInt min_duration = 0;  // finite or NegInf
  CostSpec cost = LinearCost{0};
};

ProjectArc MakeActivity(int tail, int head, int64_t normal, ExtendedInt minimum,
                        ExtendedInt per_unit);
ProjectArc MakeConvexActivity(int tail, int head, ExtendedInt minimum,
                              std::vector<ConvexPiece> pieces);
ProjectArc MakePrecedence(int tail, int head);

struct ProjectNetwork {
  std::vector<std::string> node_names;
  int source = 0;
  int sink = 0;
  std::vector<ProjectArc> arcs;

  int num_nodes() const { return static_cast<int>(node_names.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }
  // Adds a node named after its index when `name` is empty.
  int AddNode(std::string name = "");
};

// A flow cost piece: up to `capacity` units at `unit_cost` each.
struct FlowPiece {
  ExtendedInt capacity;
  int64_t unit_cost = 0;
};

struct McfArc {
  int tail = 0;
  int head = 0;
  int64_t cost = 0;
  ExtendedInt capacity = 1;
  // Non-empty for convex piecewise-linear flow costs; then `cost` and
  // `capacity` are ignored. Pieces are ordered by increasing unit cost.
  std::vector<FlowPiece> convex;

  bool is_convex() const { return !convex.empty(); }
  ExtendedInt TotalCapacity() const;
  // Cost of sending `q` units, filling the cheapest pieces first.
  int64_t CostOf(int64_t q) const;
};

struct McfInstance {
  std::vector<int64_t> supplies;
  std::vector<McfArc> arcs;
  std::optional<int64_t> flow_target;  // nullopt means "max"

  int num_nodes() const { return static_cast<int>(supplies.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }
  int64_t TotalSupply() const;
  bool HasConvexArcs() const;
};

// An s,t form: the original nodes and arcs keep their indices; super nodes
// and arcs (if any) are appended after them.
struct StForm {
  McfInstance instance;
  int source = 0;
  int sink = 0;
  int64_t total_supply = 0;
  int original_nodes = 0;
  int original_arcs = 0;
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  int arc = -1;
  int node = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;

  bool ok() const;
  bool Has(const std::string& code) const;
  void Error(std::string code, std::string message, int arc = -1, int node = -1);
  std::string Summary() const;
};

ValidationReport ValidateProject(const ProjectNetwork& p);

struct McfValidationOptions {
  // Also compute the max flow and compare it against a finite target.
  bool check_max_flow = false;
};

ValidationReport ValidateMcf(const McfInstance& m,
                             const McfValidationOptions& options = {});

// `force_super` adds the super source and sink even for a single
// supply-demand pair.
StForm NormalizeToSt(const McfInstance& m, bool force_super = false);

}  // namespace amcflow

#endif  // AMCFLOW_CORE_MODEL_H_
