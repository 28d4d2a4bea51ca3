// Text formats: DIMACS min-cost flow (with `inf` capacities and convex `q`
// lines), project networks, assignment matrices, flow solutions and curve
// CSV. Parsers report 1-based line and column positions.

#ifndef AMCFLOW_IO_H_
#define AMCFLOW_IO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amcflow/core_model.h"
#include "amcflow/mcf_api.h"

namespace amcflow {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// "p min N M", "n ID SUPPLY", "a SRC DST LOW CAP COST" with LOW = 0 and CAP
// possibly "inf", and "q SRC DST CAP:COST,CAP:COST,..." for convex arcs.
// The result is validated (without the max-flow check).
McfInstance ParseDimacs(std::string_view text);
std::string WriteDimacs(const McfInstance& m);

// "node ID", "start ID", "finish ID", and
// "arc SRC DST activity D DMIN linear W", "arc SRC DST activity D DMIN
// convex B1:W1,B2:W2,...", "arc SRC DST precedence". DMIN may be "-inf",
// W may be "inf". '#' starts a comment.
ProjectNetwork ParseProject(std::string_view text);
std::string WriteProject(const ProjectNetwork& p);

// First line N, then N rows of N entries; "-" marks a missing pair.
AssignmentMatrix ParseAssignment(std::string_view text);
std::string WriteAssignment(const AssignmentMatrix& costs);

struct Solution {
  int64_t cost = 0;
  struct ArcFlow {
    int tail;
    int head;
    int64_t flow;
  };
  std::vector<ArcFlow> flows;           // 0-based endpoints, in arc order
  std::map<int, int64_t> potentials;    // 0-based s,t-form node -> potential
};

// "s COST", one "f SRC DST FLOW" per arc in order, optional "p NODE POT".
Solution ParseSolution(std::string_view text);
std::string WriteSolution(const McfInstance& m, const FlowResult& r);

// Header "makespan,cost,slope"; slope is that of the segment ending at the
// row (0 on the first row).
std::string WriteCurveCsv(const TctCurve& curve);

}  // namespace amcflow

#endif  // AMCFLOW_IO_H_
