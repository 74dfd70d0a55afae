#pragma once

#include "patbreak/pattern_io.hpp"

namespace patbreak {

struct PatternCensus {
  Order order;
  PermClass cls;
  std::uint64_t total = 0;
  std::uint64_t dominating = 0;
};

// Default cap on class-member-count * edge-count for pattern enumeration.
// Admits every class at n = 8 and the involution classes well beyond;
// S_9 and up need an explicit raise.
inline constexpr std::uint64_t kDefaultEnumBudget = 12'000'000;

// All distinct non-BOT patterns pat_i(pi) over the class members. Patterns
// keep the provenance of their first derivation; meta.cls records the
// smallest class of that permutation.
PatternSet all_patterns(Order order, PermClass cls,
                        std::uint64_t budget = kDefaultEnumBudget);

// The subsumption-maximal subset (patterns not strictly subsumed by
// another member).
PatternSet dominators(const PatternSet& set, int workers = 1);

PatternCensus census(Order order, PermClass cls,
                     std::uint64_t budget = kDefaultEnumBudget, int workers = 1);

// Smallest chain class containing the permutation.
PermClass smallest_class(const Permutation& pi);

}  // namespace patbreak
