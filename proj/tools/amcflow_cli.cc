// Command-line front end: solve, curve export, generation, benchmarks and
// certificate checks. Exit codes: 0 success, 1 infeasible or not optimal,
// 2 input error, 3 internal error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "amcflow/generate.h"
#include "amcflow/io.h"
#include "amcflow/mcf_api.h"
#include "amcflow/oracle.h"
#include "json.hpp"

namespace {

using namespace amcflow;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

int SolveMcf(const std::string& file, std::optional<int64_t> k, bool certify, bool warm,
             const std::string& out) {
  McfInstance m = ParseDimacs(ReadFile(file));
  KFlowOptions options;
  options.warm_start = warm;
  FlowResult r = SolveKFlow(m, k, options);
  if (certify) {
    CertificateReport report = VerifyOptimality(m, r.value, r.flow, r.potential);
    std::cerr << report.Summary() << (report.ok() ? "\n" : "");
    if (!report.ok()) return kInternalError;
  }
  WriteOutput(out, WriteSolution(m, r));
  return kOk;
}

int SolveAssignmentCmd(const std::string& file, bool maximize, bool warm) {
  AssignmentMatrix costs = ParseAssignment(ReadFile(file));
  KFlowOptions options;
  options.warm_start = warm;
  AssignmentResult r = SolveAssignment(costs, maximize, options);
  std::cout << "objective " << r.objective << "\n";
  for (size_t i = 0; i < r.match.size(); ++i) {
    std::cout << "match " << i + 1 << " " << r.match[i] + 1 << "\n";
  }
  return kOk;
}

int TctCurveCmd(const std::string& file, std::optional<int64_t> target, const std::string& out) {
  ProjectNetwork p = ParseProject(ReadFile(file));
  TctCurve curve = ComputeTctCurve(p, target);
  if (!curve.notice.empty()) std::cerr << "notice: " << curve.notice << "\n";
  WriteOutput(out, WriteCurveCsv(curve));
  return kOk;
}

int Generate(const std::string& kind, const GenOptions& o, const std::string& out) {
  std::string text;
  if (kind == "unit-vertex") {
    text = WriteDimacs(GenerateUnitVertex(o));
  } else if (kind == "unit-arc") {
    text = WriteDimacs(GenerateUnitArc(o));
  } else if (kind == "k-flow") {
    text = WriteDimacs(GenerateKFlow(o));
  } else if (kind == "convex") {
    text = WriteDimacs(GenerateConvex(o));
  } else if (kind == "assignment") {
    text = WriteAssignment(GenerateAssignment(o));
  } else if (kind == "dag-project") {
    text = WriteProject(GenerateDagProject(o));
  } else {
    throw std::invalid_argument("unknown instance kind '" + kind + "'");
  }
  WriteOutput(out, text);
  return kOk;
}

int Bench(const std::string& suite, std::vector<int> sizes, uint64_t seed, bool oracle_check,
          bool check, const std::string& out) {
  using Clock = std::chrono::steady_clock;
  if (sizes.empty()) sizes = {1000, 2000, 4000, 8000};
  nlohmann::json report = nlohmann::json::array();
  for (int n : sizes) {
    GenOptions o;
    o.n = n;
    o.seed = seed;
    McfInstance m;
    if (suite == "unit-vertex") {
      m = GenerateUnitVertex(o);
    } else if (suite == "unit-arc") {
      m = GenerateUnitArc(o);
    } else if (suite == "k-flow") {
      m = GenerateKFlow(o);
    } else if (suite == "convex") {
      m = GenerateConvex(o);
    } else if (suite == "assignment") {
      m = AssignmentInstance(GenerateAssignment(o), false);
    } else {
      throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    KFlowOptions options;
    options.check_invariants = check;
    auto start = Clock::now();
    FlowResult r = SolveKFlow(m, std::nullopt, options);
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    nlohmann::json row = {{"instance", suite + "-" + std::to_string(n) + "-s" +
                                           std::to_string(seed)},
                          {"n", m.num_nodes()},
                          {"m", m.num_arcs()},
                          {"K", r.value},
                          {"cost", r.objective},
                          {"stages", r.stats.stages},
                          {"cuts", r.stats.cuts},
                          {"augmentations", r.stats.augmentations},
                          {"heap_ops", r.stats.heap_operations},
                          {"time_ms", ms}};
    if (oracle_check) row["oracle_cost"] = oracle::SspMinCostFlow(m, r.value).objective;
    std::cerr << row.dump() << "\n";
    report.push_back(row);
  }
  WriteOutput(out, report.dump(2) + "\n");
  return kOk;
}

int Verify(const std::string& instance_file, const std::string& solution_file,
           std::optional<int64_t> k) {
  McfInstance m = ParseDimacs(ReadFile(instance_file));
  Solution s = ParseSolution(ReadFile(solution_file));
  if (static_cast<int>(s.flows.size()) != m.num_arcs()) {
    throw std::invalid_argument("solution has " + std::to_string(s.flows.size()) +
                                " flow lines for " + std::to_string(m.num_arcs()) + " arcs");
  }
  std::vector<int64_t> flow(m.num_arcs());
  int64_t objective = 0;
  for (int a = 0; a < m.num_arcs(); ++a) {
    if (s.flows[a].tail != m.arcs[a].tail || s.flows[a].head != m.arcs[a].head) {
      throw std::invalid_argument("flow line " + std::to_string(a + 1) +
                                  " does not match the arc endpoints");
    }
    flow[a] = s.flows[a].flow;
    if (flow[a] >= 0 && ExtendedInt(flow[a]) <= m.arcs[a].TotalCapacity()) {
      objective += m.arcs[a].CostOf(flow[a]);
    }
  }
  StForm st = NormalizeToSt(m);
  std::vector<std::optional<int64_t>> potential(st.instance.num_nodes());
  for (auto [v, pot] : s.potentials) {
    if (v < 0 || v >= static_cast<int>(potential.size())) {
      throw std::invalid_argument("potential for unknown node " + std::to_string(v + 1));
    }
    potential[v] = pot;
  }
  if (!k) {
    // Flow value: what leaves the supply nodes.
    int64_t value = 0;
    std::vector<int64_t> net(m.num_nodes(), 0);
    for (int a = 0; a < m.num_arcs(); ++a) {
      net[m.arcs[a].tail] += flow[a];
      net[m.arcs[a].head] -= flow[a];
    }
    for (int v = 0; v < m.num_nodes(); ++v) {
      if (m.supplies[v] > 0) value += net[v];
    }
    k = value;
  }
  CertificateReport report = VerifyOptimality(m, *k, flow, potential);
  if (objective != s.cost) {
    report.violations.push_back({Severity::kError, "objective", -1, -1,
                                 "stated cost " + std::to_string(s.cost) + " but the flow costs " +
                                     std::to_string(objective)});
  }
  std::cout << report.Summary() << (report.ok() ? "\n" : "");
  return report.ok() ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-min-cuts solver for min-cost K-flow, assignment and time-cost tradeoff"};
  app.require_subcommand(1);

  std::string file, file2, out;
  std::optional<int64_t> k, target;
  bool certify = false, maximize = false, warm = false, oracle_check = false, check = false;

  auto* solve = app.add_subcommand("solve-mcf", "Min-cost K-flow on a DIMACS instance");
  solve->add_option("file", file, "DIMACS file")->required();
  solve->add_option("--k", k, "Flow target K (default: max flow)");
  solve->add_flag("--certify", certify, "Check the optimality certificate");
  solve->add_flag("--warm-start", warm, "Bipartite warm start (K must equal the supply)");
  solve->add_option("--out", out, "Solution file (default: stdout)");

  auto* assign = app.add_subcommand("solve-assignment", "Assignment from a cost matrix file");
  assign->add_option("file", file, "Matrix file")->required();
  assign->add_flag("--max", maximize, "Maximize instead of minimize");
  assign->add_flag("--warm-start", warm, "Bipartite warm start");

  auto* curve = app.add_subcommand("tct-curve", "Time-cost tradeoff curve of a project");
  curve->add_option("file", file, "Project file")->required();
  curve->add_option("--target", target, "Stop at this makespan");
  curve->add_option("--out", out, "CSV output (default: stdout)");

  GenOptions gen_options;
  std::string kind;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("kind", kind,
                  "unit-vertex | unit-arc | assignment | k-flow | convex | dag-project")
      ->required();
  gen->add_option("--n", gen_options.n, "Node count");
  gen->add_option("--m", gen_options.m, "Arc count (0: family default)");
  gen->add_option("--k", gen_options.k, "Flow target (clipped to the max flow)");
  gen->add_option("--seed", gen_options.seed, "Random seed");
  gen->add_option("--max-cost", gen_options.max_cost, "Largest cost");
  gen->add_option("--max-capacity", gen_options.max_capacity, "Largest capacity");
  gen->add_option("--pieces", gen_options.max_pieces, "Largest number of convex pieces");
  gen->add_option("--out", out, "Output file (default: stdout)");

  std::string suite;
  std::vector<int> sizes;
  uint64_t seed = 1;
  auto* bench = app.add_subcommand("bench", "Time a generated suite");
  bench->add_option("suite", suite, "unit-vertex | unit-arc | k-flow | convex | assignment")
      ->required();
  bench->add_option("--sizes", sizes, "Node counts")->delimiter(',');
  bench->add_option("--seed", seed, "Random seed");
  bench->add_flag("--oracle", oracle_check, "Also report the reference solver's cost");
  bench->add_flag("--check", check, "Keep the engine's invariant checks on");
  bench->add_option("--out", out, "JSON report (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Check a solution's optimality certificate");
  verify->add_option("instance", file, "DIMACS file")->required();
  verify->add_option("solution", file2, "Solution file")->required();
  verify->add_option("--k", k, "Flow value to require (default: the solution's)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return SolveMcf(file, k, certify, warm, out);
    if (*assign) return SolveAssignmentCmd(file, maximize, warm);
    if (*curve) return TctCurveCmd(file, target, out);
    if (*gen) return Generate(kind, gen_options, out);
    if (*bench) return Bench(suite, sizes, seed, oracle_check, check, out);
    if (*verify) return Verify(file, file2, k);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}
