#pragma once

#include "patbreak/cegar.hpp"
#include "patbreak/metrics.hpp"

namespace patbreak {

// The search for R(s,t;n) graphs: no clique of size s, no independent set
// of size t.
struct RamseyInstance {
  int s = 0;
  int t = 0;
  Order order;

  RamseyInstance() = default;
  RamseyInstance(int s_, int t_, Order o) : s(s_), t(t_), order(o) {
    if (s < 2 || t < 2) throw std::invalid_argument("clique bounds must be >= 2");
  }
};

inline constexpr std::uint64_t kDefaultClauseBudget = 5'000'000;
inline constexpr std::uint64_t kDefaultModelBudget = 1'000'000;

// One clause per s-subset (some edge missing) and per t-subset (some edge
// present), over edge variables 1..m.
sat::CnfFormula ramsey_clauses(const RamseyInstance& inst,
                               std::uint64_t budget = kDefaultClauseBudget);

// Mask predicate for packed-graph sweeps (m <= 64).
GraphPredicate ramsey_predicate(const RamseyInstance& inst);

bool is_ramsey_graph(const RamseyInstance& inst, const GraphBits& g);

struct CountResult {
  std::uint64_t count = 0;
  bool truncated = false;
};

// Solutions surviving the break, by SAT model enumeration projected on the
// edge variables.
CountResult count_solutions(const RamseyInstance& inst, const PatternSet* psi,
                            std::uint64_t model_budget = kDefaultModelBudget);

// Same number by exhaustive sweep (n <= 7): the independent oracle.
std::uint64_t count_solutions_sweep(const RamseyInstance& inst, const PatternSet* psi,
                                    int workers = 1, bool allow_big = false);

// Layered CEGAR restricted to graphs satisfying the instance.
CegarRun tailored_break(const RamseyInstance& inst, const CegarOptions& options = {});

}  // namespace patbreak
