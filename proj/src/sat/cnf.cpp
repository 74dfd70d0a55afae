#include "patbreak/sat/cnf.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace patbreak::sat {

void CnfFormula::add_clause(std::vector<int> lits) {
  for (int l : lits) {
    if (l == 0) throw std::invalid_argument("zero literal in clause");
    if (std::abs(l) > var_count)
      throw std::invalid_argument("literal exceeds variable count");
  }
  clauses.push_back(std::move(lits));
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  for (const auto& c : f.comments) out << "c " << c << '\n';
  out << "p cnf " << f.var_count << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (int l : clause) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

void export_dimacs(const CnfFormula& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_dimacs(f);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void load_into(const CnfFormula& f, Solver& s) {
  s.ensure_vars(f.var_count);
  for (const auto& c : f.clauses) s.add_clause(c);
}

EnumerateResult enumerate_models(
    Solver& s, const std::vector<int>& projection, std::uint64_t limit,
    const std::function<void(const std::vector<bool>&)>& on_model) {
  if (projection.empty())
    throw std::invalid_argument("projection set must be nonempty");
  EnumerateResult res;
  std::vector<bool> values(projection.size());
  while (s.solve() == Result::Sat) {
    std::vector<int> block;
    block.reserve(projection.size());
    for (size_t i = 0; i < projection.size(); ++i) {
      bool v = s.model_value(projection[i]);
      values[i] = v;
      block.push_back(v ? -projection[i] : projection[i]);
    }
    ++res.count;
    if (on_model) on_model(values);
    if (res.count >= limit) {
      res.truncated = true;
      return res;
    }
    if (!s.add_clause(std::move(block))) break;
  }
  return res;
}

namespace {

std::optional<std::string> run_and_capture(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  pclose(pipe);
  return output;
}

}  // namespace

std::optional<ExternalSolveResult> parse_solver_output(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ExternalSolveResult res;
  bool have_status = false;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSATISFIABLE") != std::string::npos) {
        res.sat = false;
        have_status = true;
      } else if (line.find("SATISFIABLE") != std::string::npos) {
        res.sat = true;
        have_status = true;
      }
    } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
      std::istringstream vs(line.substr(1));
      int lit;
      while (vs >> lit)
        if (lit != 0) res.model.push_back(lit);
    }
  }
  if (!have_status) return std::nullopt;
  return res;
}

std::optional<std::uint64_t> parse_counter_output(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<std::uint64_t> count;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    // accept "s mc N", "c s exact arb int N" style lines or a bare integer
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      bool numeric = !tok.empty();
      for (char ch : tok)
        if (ch < '0' || ch > '9') numeric = false;
      if (numeric) {
        count = std::stoull(tok);
        break;
      }
    }
    if (count) break;
  }
  return count;
}

std::optional<ExternalSolveResult> run_external_solver(const std::string& tool,
                                                       const std::string& dimacs_path) {
  auto out = run_and_capture(tool + " " + dimacs_path + " 2>/dev/null");
  if (!out) return std::nullopt;
  return parse_solver_output(*out);
}

std::optional<std::uint64_t> run_external_counter(const std::string& tool,
                                                  const std::string& dimacs_path) {
  auto out = run_and_capture(tool + " " + dimacs_path + " 2>/dev/null");
  if (!out) return std::nullopt;
  return parse_counter_output(*out);
}

}  // namespace patbreak::sat
