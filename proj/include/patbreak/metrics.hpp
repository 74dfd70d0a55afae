#pragma once

#include <array>
#include <optional>

#include "patbreak/enumeration.hpp"

namespace patbreak {

// Mask predicate restricting packed-graph sweeps to a search problem.
struct GraphPredicate {
  std::vector<std::uint64_t> forbid_full;   // fails when (g & mask) == mask
  std::vector<std::uint64_t> forbid_empty;  // fails when (g & mask) == 0

  bool operator()(std::uint64_t g) const {
    for (std::uint64_t m : forbid_full)
      if ((g & m) == m) return false;
    for (std::uint64_t m : forbid_empty)
      if ((g & m) == 0) return false;
    return true;
  }
};

// Survivor counts of the layer chain: survivors[k] is the number of graphs
// (satisfying the problem, if given) minimal under every permutation of
// chain class k. survivors[5] is the number of canonical graphs.
struct LayerCounts {
  std::array<std::uint64_t, 6> survivors{};
  std::uint64_t total = 0;  // graphs satisfying the problem
};

// Exhaustive sweeps; n <= 7 unless allow_big (n = 8 takes a while).
LayerCounts layer_survivor_counts(Order order, const GraphPredicate* problem = nullptr,
                                  int workers = 1, bool allow_big = false);

std::uint64_t iso_class_count(Order order, const GraphPredicate* problem = nullptr,
                              int workers = 1, bool allow_big = false);

// Graphs satisfying the problem and covered by no pattern of psi.
std::uint64_t uncovered_count(const PatternSet& psi, Order order,
                              const GraphPredicate* problem = nullptr,
                              int workers = 1, bool allow_big = false);

double redundancy_ratio(const PatternSet& psi, Order order,
                        const GraphPredicate* problem = nullptr, int workers = 1,
                        bool allow_big = false);

double percent_ncc(const PatternSet& psi, Order order, int workers = 1,
                   bool allow_big = false);

struct BreakProfile {
  std::size_t size = 0;
  // Cumulative counts of patterns generated by ct, t, ci+t, di, i.
  std::array<std::size_t, 5> class_hist{};
  double rho = 0;
  double pct_ncc = 0;
  std::uint64_t uncovered = 0;
  std::uint64_t iso_classes = 0;
};

BreakProfile profile(const PatternSet& psi, Order order,
                     const GraphPredicate* problem = nullptr, int workers = 1,
                     bool allow_big = false);

// Smallest chain class with a member regenerating the pattern, preferring
// the provenance permutation when present.
std::optional<PermClass> smallest_generating_class(const GraphPattern& p);

}  // namespace patbreak
