#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "patbreak/sat/solver.hpp"

namespace patbreak::sat {

// A clause database that can be replayed into solvers or exported as DIMACS.
struct CnfFormula {
  int var_count = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<std::string> comments;

  int new_var() { return ++var_count; }
  void add_clause(std::vector<int> lits);
  void add_comment(std::string text) { comments.push_back(std::move(text)); }
};

std::string to_dimacs(const CnfFormula& f);
void export_dimacs(const CnfFormula& f, const std::string& path);

// Builder that mirrors every clause into an optional live solver, so CEGAR
// loops stay incremental while the full formula remains exportable.
struct Encoder {
  CnfFormula cnf;
  Solver* live = nullptr;

  int new_var() {
    int v = cnf.new_var();
    if (live) live->ensure_vars(v);
    return v;
  }
  void ensure_vars(int count) {
    if (cnf.var_count < count) cnf.var_count = count;
    if (live) live->ensure_vars(count);
  }
  void add_clause(std::vector<int> lits) {
    if (live) live->add_clause(lits);
    cnf.add_clause(std::move(lits));
  }
};

// Loads a formula into a fresh solver.
void load_into(const CnfFormula& f, Solver& s);

struct EnumerateResult {
  std::uint64_t count = 0;
  bool truncated = false;  // stopped at the limit, more models may exist
};

// Enumerates models projected onto the given variables, blocking each
// projection once. on_model may be null.
EnumerateResult enumerate_models(
    Solver& s, const std::vector<int>& projection, std::uint64_t limit,
    const std::function<void(const std::vector<bool>&)>& on_model = nullptr);

// External tool bridges (optional; used only when a path is configured).
// Runs `tool <dimacs-path>` and parses "s SATISFIABLE"/"s UNSATISFIABLE"
// plus "v" lines.
struct ExternalSolveResult {
  bool sat = false;
  std::vector<int> model;  // literals as in the v-lines
};
std::optional<ExternalSolveResult> run_external_solver(const std::string& tool,
                                                       const std::string& dimacs_path);
// Runs `tool <dimacs-path>` and parses a single integer count line.
std::optional<std::uint64_t> run_external_counter(const std::string& tool,
                                                  const std::string& dimacs_path);

// Parsing helpers, exposed for tests.
std::optional<ExternalSolveResult> parse_solver_output(const std::string& text);
std::optional<std::uint64_t> parse_counter_output(const std::string& text);

}  // namespace patbreak::sat
