#include "patbreak/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "patbreak/util.hpp"

namespace patbreak {

PermClass smallest_class(const Permutation& pi) {
  for (PermClass c : kClassChain)
    if (class_test(pi, c)) return c;
  throw std::invalid_argument("identity permutation belongs to no class");
}

PatternSet all_patterns(Order order, PermClass cls, std::uint64_t budget) {
  std::uint64_t members = class_member_count(order, cls);
  std::uint64_t work = members * order.edge_count();
  if (work > budget)
    throw std::runtime_error(
        "pattern enumeration budget exceeded: " + std::to_string(members) +
        " class members x " + std::to_string(order.edge_count()) +
        " positions = " + std::to_string(work) + " derivations (budget " +
        std::to_string(budget) + ")");
  PatternSet set(order);
  for (const auto& pi : class_members(order, cls)) {
    PatternMeta meta;
    meta.cls = smallest_class(pi);
    for (int i = 1; i <= order.edge_count(); ++i) {
      GraphPattern p = derive_pattern(pi, i);
      if (p.is_bot()) continue;
      set.add(std::move(p), meta);
    }
  }
  return set;
}

namespace {

struct SubsumeSig {
  std::uint64_t zero_mask = 0;
  std::uint64_t one_mask = 0;
  int vars = 0;
  std::uint32_t index = 0;
};

bool subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

}  // namespace

PatternSet dominators(const PatternSet& set, int workers) {
  const std::size_t count = set.size();
  if (count == 0) return set;
  if (set.order().edge_count() > 64)
    throw std::invalid_argument("dominator scan supports at most 64 edges");

  std::vector<SubsumeSig> sigs(count);
  for (std::size_t k = 0; k < count; ++k) {
    const GraphPattern& p = set.pattern(k);
    SubsumeSig s;
    s.index = static_cast<std::uint32_t>(k);
    s.vars = p.var_count();
    for (int pos = 1; pos <= p.size(); ++pos) {
      if (p.cell(pos) == kCellZero) s.zero_mask |= std::uint64_t{1} << (pos - 1);
      if (p.cell(pos) == kCellOne) s.one_mask |= std::uint64_t{1} << (pos - 1);
    }
    sigs[k] = s;
  }
  // More general patterns (strictly more variables) come first; a pattern
  // can only be subsumed by one of those.
  std::vector<std::uint32_t> by_vars(count);
  std::iota(by_vars.begin(), by_vars.end(), 0u);
  std::sort(by_vars.begin(), by_vars.end(), [&](std::uint32_t a, std::uint32_t b) {
    return sigs[a].vars > sigs[b].vars || (sigs[a].vars == sigs[b].vars && a < b);
  });
  std::vector<SubsumeSig> sorted(count);
  for (std::size_t k = 0; k < count; ++k) sorted[k] = sigs[by_vars[k]];
  std::vector<std::size_t> prefix_end(count);  // candidates with more vars
  {
    std::size_t e = 0;
    for (std::size_t k = 0; k < count; ++k) {
      while (e < count && sorted[e].vars > sorted[k].vars) ++e;
      prefix_end[k] = e;
    }
  }

  std::vector<char> dominated(count, 0);
  parallel_ranges(count, workers, [&](int, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t k = begin; k < end; ++k) {
      const SubsumeSig& s = sorted[k];
      const GraphPattern& p = set.pattern(s.index);
      for (std::size_t c = 0; c < prefix_end[k]; ++c) {
        const SubsumeSig& g = sorted[c];
        if (!subset(g.zero_mask, s.zero_mask) || !subset(g.one_mask, s.one_mask))
          continue;
        if (subsumes(set.pattern(g.index), p)) {
          dominated[s.index] = 1;
          break;
        }
      }
    }
  });

  std::vector<bool> keep(count);
  for (std::size_t k = 0; k < count; ++k) keep[k] = !dominated[k];
  return set.filtered(keep);
}

PatternCensus census(Order order, PermClass cls, std::uint64_t budget, int workers) {
  PatternSet all = all_patterns(order, cls, budget);
  PatternSet dom = dominators(all, workers);
  return PatternCensus{order, cls, all.size(), dom.size()};
}

}  // namespace patbreak
