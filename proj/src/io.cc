#include "amcflow/io.h"

#include <cctype>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace amcflow {
namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

// Splits into non-empty lines of whitespace-separated tokens, dropping text
// after `comment` when it starts a token.
std::vector<Line> Tokenize(std::string_view text, char comment) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    Line line{number, {}};
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size() || raw[i] == comment) break;
      size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void Fail(const Line& line, const Token& tok, const std::string& message) {
  throw ParseError(line.number, tok.column, message);
}

[[noreturn]] void Fail(const Line& line, const std::string& message) {
  throw ParseError(line.number, 1, message);
}

int64_t ParseInt(const Line& line, const Token& tok) {
  int64_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (!tok.text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    Fail(line, tok, "expected an integer, got '" + std::string(tok.text) + "'");
  }
  return value;
}

ExtendedInt ParseExtended(const Line& line, const Token& tok) {
  if (tok.text == "inf" || tok.text == "+inf") return ExtendedInt::PosInf();
  if (tok.text == "-inf") return ExtendedInt::NegInf();
  return ParseInt(line, tok);
}

void Expect(const Line& line, size_t count, const char* usage) {
  if (line.tokens.size() != count) {
    Fail(line, std::string("expected ") + std::to_string(count) + " fields: " + usage);
  }
}

// Splits "a:b,c:d" into pairs.
std::vector<std::pair<Token, Token>> ParsePairs(const Line& line, const Token& tok) {
  std::vector<std::pair<Token, Token>> out;
  size_t start = 0;
  while (start <= tok.text.size()) {
    size_t comma = tok.text.find(',', start);
    if (comma == std::string_view::npos) comma = tok.text.size();
    std::string_view item = tok.text.substr(start, comma - start);
    size_t colon = item.find(':');
    if (colon == std::string_view::npos) Fail(line, tok, "expected X:Y pairs");
    int col = tok.column + static_cast<int>(start);
    out.push_back({Token{item.substr(0, colon), col},
                   Token{item.substr(colon + 1), col + static_cast<int>(colon) + 1}});
    if (comma == tok.text.size()) break;
    start = comma + 1;
  }
  return out;
}

std::string Str(const ExtendedInt& v) { return v.ToString(); }

void ThrowValidation(const ValidationReport& report, const std::vector<int>& arc_lines) {
  for (const Diagnostic& d : report.diagnostics) {
    if (d.severity != Severity::kError) continue;
    int line = d.arc >= 0 && d.arc < static_cast<int>(arc_lines.size()) ? arc_lines[d.arc] : 0;
    throw ParseError(line, 1, "[" + d.code + "] " + d.message);
  }
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

McfInstance ParseDimacs(std::string_view text) {
  McfInstance m;
  std::optional<int64_t> declared_arcs;
  std::vector<int> arc_lines;
  auto node = [&](const Line& line, const Token& tok) {
    int64_t id = ParseInt(line, tok);
    if (id < 1 || id > m.num_nodes()) Fail(line, tok, "node id out of range");
    return static_cast<int>(id - 1);
  };
  for (const Line& line : Tokenize(text, '\0')) {
    std::string_view kind = line.tokens[0].text;
    if (kind == "c") continue;
    if (!declared_arcs && kind != "p") Fail(line, "the problem line must come first");
    if (kind == "p") {
      if (declared_arcs) Fail(line, "duplicate problem line");
      Expect(line, 4, "p min NODES ARCS");
      if (line.tokens[1].text != "min") Fail(line, line.tokens[1], "only 'p min' is supported");
      int64_t n = ParseInt(line, line.tokens[2]);
      if (n < 0 || n > kMaxMagnitude) Fail(line, line.tokens[2], "bad node count");
      m.supplies.assign(n, 0);
      declared_arcs = ParseInt(line, line.tokens[3]);
    } else if (kind == "n") {
      Expect(line, 3, "n ID SUPPLY");
      m.supplies[node(line, line.tokens[1])] = ParseInt(line, line.tokens[2]);
    } else if (kind == "a") {
      Expect(line, 6, "a SRC DST LOW CAP COST");
      McfArc arc;
      arc.tail = node(line, line.tokens[1]);
      arc.head = node(line, line.tokens[2]);
      if (ParseInt(line, line.tokens[3]) != 0) {
        Fail(line, line.tokens[3], "unsupported feature: nonzero lower bound");
      }
      arc.capacity = ParseExtended(line, line.tokens[4]);
      arc.cost = ParseInt(line, line.tokens[5]);
      m.arcs.push_back(arc);
      arc_lines.push_back(line.number);
    } else if (kind == "q") {
      Expect(line, 4, "q SRC DST CAP:COST,...");
      McfArc arc;
      arc.tail = node(line, line.tokens[1]);
      arc.head = node(line, line.tokens[2]);
      for (auto& [cap, cost] : ParsePairs(line, line.tokens[3])) {
        arc.convex.push_back({ParseExtended(line, cap), ParseInt(line, cost)});
      }
      m.arcs.push_back(arc);
      arc_lines.push_back(line.number);
    } else {
      Fail(line, line.tokens[0], "unknown line type '" + std::string(kind) + "'");
    }
  }
  if (!declared_arcs) throw ParseError(0, 0, "missing problem line");
  if (*declared_arcs != m.num_arcs()) {
    throw ParseError(0, 0, "problem line declares " + std::to_string(*declared_arcs) +
                               " arcs, found " + std::to_string(m.num_arcs()));
  }
  ThrowValidation(ValidateMcf(m), arc_lines);
  return m;
}

std::string WriteDimacs(const McfInstance& m) {
  std::ostringstream out;
  out << "p min " << m.num_nodes() << " " << m.num_arcs() << "\n";
  for (int v = 0; v < m.num_nodes(); ++v) {
    if (m.supplies[v] != 0) out << "n " << v + 1 << " " << m.supplies[v] << "\n";
  }
  for (const McfArc& a : m.arcs) {
    if (a.is_convex()) {
      out << "q " << a.tail + 1 << " " << a.head + 1 << " ";
      for (size_t p = 0; p < a.convex.size(); ++p) {
        out << (p ? "," : "") << Str(a.convex[p].capacity) << ":" << a.convex[p].unit_cost;
      }
      out << "\n";
    } else {
      out << "a " << a.tail + 1 << " " << a.head + 1 << " 0 " << Str(a.capacity) << " "
          << a.cost << "\n";
    }
  }
  return out.str();
}

ProjectNetwork ParseProject(std::string_view text) {
  ProjectNetwork p;
  std::unordered_map<std::string, int> ids;
  std::optional<int> start, finish;
  std::vector<int> arc_lines;
  auto node = [&](const Line& line, const Token& tok) {
    auto it = ids.find(std::string(tok.text));
    if (it == ids.end()) Fail(line, tok, "undeclared node '" + std::string(tok.text) + "'");
    return it->second;
  };
  for (const Line& line : Tokenize(text, '#')) {
    std::string_view kind = line.tokens[0].text;
    if (kind == "node") {
      Expect(line, 2, "node ID");
      std::string name(line.tokens[1].text);
      if (ids.count(name)) Fail(line, line.tokens[1], "duplicate node '" + name + "'");
      ids[name] = p.AddNode(name);
    } else if (kind == "start" || kind == "finish") {
      Expect(line, 2, "start|finish ID");
      (kind == "start" ? start : finish) = node(line, line.tokens[1]);
    } else if (kind == "arc") {
      if (line.tokens.size() < 4) Fail(line, "expected: arc SRC DST precedence|activity ...");
      int tail = node(line, line.tokens[1]);
      int head = node(line, line.tokens[2]);
      std::string_view type = line.tokens[3].text;
      if (type == "precedence") {
        Expect(line, 4, "arc SRC DST precedence");
        p.arcs.push_back(MakePrecedence(tail, head));
      } else if (type == "activity") {
        Expect(line, 8, "arc SRC DST activity D DMIN linear|convex COST");
        int64_t d = ParseInt(line, line.tokens[4]);
        ExtendedInt dmin = ParseExtended(line, line.tokens[5]);
        std::string_view model = line.tokens[6].text;
        if (model == "linear") {
          p.arcs.push_back(MakeActivity(tail, head, d, dmin, ParseExtended(line, line.tokens[7])));
        } else if (model == "convex") {
          std::vector<ConvexPiece> pieces;
          for (auto& [b, w] : ParsePairs(line, line.tokens[7])) {
            pieces.push_back({ParseInt(line, b), ParseInt(line, w)});
          }
          ProjectArc arc = MakeConvexActivity(tail, head, dmin, std::move(pieces));
          arc.normal_duration = d;
          p.arcs.push_back(std::move(arc));
        } else {
          Fail(line, line.tokens[6], "expected 'linear' or 'convex'");
        }
      } else {
        Fail(line, line.tokens[3], "expected 'activity' or 'precedence'");
      }
      arc_lines.push_back(line.number);
    } else {
      Fail(line, line.tokens[0], "unknown keyword '" + std::string(kind) + "'");
    }
  }
  if (!start) throw ParseError(0, 0, "missing 'start' line");
  if (!finish) throw ParseError(0, 0, "missing 'finish' line");
  p.source = *start;
  p.sink = *finish;
  ThrowValidation(ValidateProject(p), arc_lines);
  return p;
}

std::string WriteProject(const ProjectNetwork& p) {
  std::ostringstream out;
  for (const std::string& name : p.node_names) out << "node " << name << "\n";
  out << "start " << p.node_names[p.source] << "\n";
  out << "finish " << p.node_names[p.sink] << "\n";
  for (const ProjectArc& a : p.arcs) {
    out << "arc " << p.node_names[a.tail] << " " << p.node_names[a.head] << " ";
    if (a.kind == ArcKind::kPrecedence) {
      out << "precedence\n";
      continue;
    }
    out << "activity " << a.normal_duration << " " << Str(a.min_duration) << " ";
    if (const auto* lin = std::get_if<LinearCost>(&a.cost)) {
      out << "linear " << Str(lin->per_unit) << "\n";
    } else {
      out << "convex ";
      const auto& pieces = std::get<ConvexCost>(a.cost).pieces;
      for (size_t k = 0; k < pieces.size(); ++k) {
        out << (k ? "," : "") << pieces[k].breakpoint << ":" << pieces[k].slope;
      }
      out << "\n";
    }
  }
  return out.str();
}

AssignmentMatrix ParseAssignment(std::string_view text) {
  std::vector<Line> lines = Tokenize(text, '#');
  if (lines.empty()) throw ParseError(0, 0, "empty assignment file");
  Expect(lines[0], 1, "N");
  int64_t n = ParseInt(lines[0], lines[0].tokens[0]);
  if (n < 0 || n > 100000) Fail(lines[0], lines[0].tokens[0], "bad matrix size");
  if (static_cast<int64_t>(lines.size()) != n + 1) {
    throw ParseError(0, 0, "expected " + std::to_string(n) + " matrix rows");
  }
  AssignmentMatrix costs(n);
  for (int64_t i = 0; i < n; ++i) {
    const Line& line = lines[i + 1];
    if (static_cast<int64_t>(line.tokens.size()) != n) {
      Fail(line, "expected " + std::to_string(n) + " entries");
    }
    for (const Token& tok : line.tokens) {
      if (tok.text == "-") {
        costs[i].push_back(std::nullopt);
        continue;
      }
      int64_t v = ParseInt(line, tok);
      if (v > kMaxMagnitude || v < -kMaxMagnitude) Fail(line, tok, "entry exceeds 2^40");
      costs[i].push_back(v);
    }
  }
  return costs;
}

std::string WriteAssignment(const AssignmentMatrix& costs) {
  std::ostringstream out;
  out << costs.size() << "\n";
  for (const auto& row : costs) {
    for (size_t j = 0; j < row.size(); ++j) {
      out << (j ? " " : "");
      if (row[j]) {
        out << *row[j];
      } else {
        out << "-";
      }
    }
    out << "\n";
  }
  return out.str();
}

Solution ParseSolution(std::string_view text) {
  Solution s;
  bool has_cost = false;
  for (const Line& line : Tokenize(text, '\0')) {
    std::string_view kind = line.tokens[0].text;
    if (kind == "c") continue;
    if (kind == "s") {
      Expect(line, 2, "s COST");
      s.cost = ParseInt(line, line.tokens[1]);
      has_cost = true;
    } else if (kind == "f") {
      Expect(line, 4, "f SRC DST FLOW");
      s.flows.push_back({static_cast<int>(ParseInt(line, line.tokens[1]) - 1),
                         static_cast<int>(ParseInt(line, line.tokens[2]) - 1),
                         ParseInt(line, line.tokens[3])});
    } else if (kind == "p") {
      Expect(line, 3, "p NODE POTENTIAL");
      s.potentials[static_cast<int>(ParseInt(line, line.tokens[1]) - 1)] =
          ParseInt(line, line.tokens[2]);
    } else {
      Fail(line, line.tokens[0], "unknown line type '" + std::string(kind) + "'");
    }
  }
  if (!has_cost) throw ParseError(0, 0, "missing 's' line");
  return s;
}

std::string WriteSolution(const McfInstance& m, const FlowResult& r) {
  std::ostringstream out;
  out << "s " << r.objective << "\n";
  for (int a = 0; a < m.num_arcs(); ++a) {
    out << "f " << m.arcs[a].tail + 1 << " " << m.arcs[a].head + 1 << " " << r.flow[a] << "\n";
  }
  for (size_t v = 0; v < r.potential.size(); ++v) {
    if (r.potential[v]) out << "p " << v + 1 << " " << *r.potential[v] << "\n";
  }
  return out.str();
}

std::string WriteCurveCsv(const TctCurve& curve) {
  std::ostringstream out;
  out << "makespan,cost,slope\n";
  for (size_t i = 0; i < curve.points.size(); ++i) {
    out << curve.points[i].makespan << "," << curve.points[i].cost << ","
        << (i == 0 ? 0 : curve.slopes[i - 1]) << "\n";
  }
  return out.str();
}

}  // namespace amcflow
