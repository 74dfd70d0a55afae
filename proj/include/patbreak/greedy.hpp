#pragma once

#include <array>

#include "patbreak/enumeration.hpp"

namespace patbreak {

// Number of graphs covered by p but uncovered by psi, by exhaustive sweep
// of the graph space. Refuses n > 7.
std::uint64_t ranking(const GraphPattern& p, const PatternSet& psi, Order order);

struct GreedyPick {
  GraphPattern pattern;
  std::uint64_t delta = 0;
  int round = 0;
};

struct GreedyResult {
  Order order;
  std::vector<GreedyPick> picks;
  std::uint64_t covered = 0;  // equals the number of non-canonical graphs

  // Selection order preserved; delta and smallest generating class recorded.
  PatternSet to_pattern_set() const;
};

// Greedy cover of all non-canonical graphs by dominating patterns. Each
// round admits a maximal mutually-orthogonal batch headed by the
// highest-ranked candidate; ties go to the lexicographically least normal
// form. Refuses n > 7.
GreedyResult symbreak_greedy(Order order, int workers = 1);

// The four top-ranked patterns for n >= 5: pat_1((2,3)), pat_2((1,2)),
// pat_2((3,4)), pat_4((4,5)).
std::array<GraphPattern, 4> top_four(Order order);

}  // namespace patbreak
