#include "patbreak/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "patbreak/canon.hpp"
#include "patbreak/util.hpp"

namespace patbreak {

namespace {

void check_sweep_order(Order order, bool allow_big) {
  int limit = allow_big ? 8 : 7;
  if (order.n > limit)
    throw std::runtime_error(
        "exhaustive sweep supports n <= " + std::to_string(limit) +
        ", got n = " + std::to_string(order.n) +
        (allow_big ? "" : " (pass the big-sweep flag for n = 8)"));
}

// pi(g) < g with early exit; map uses 0-based positions.
inline bool reduces_packed(std::uint64_t g, const std::vector<int>& map) {
  for (std::size_t p = 0; p < map.size(); ++p) {
    unsigned a = (g >> map[p]) & 1u;
    unsigned b = (g >> p) & 1u;
    if (a != b) return a < b;
  }
  return false;
}

// Edge maps of each chain class minus its predecessor, so a sweep can stop
// at the first class that reduces a graph.
std::vector<std::vector<std::vector<int>>> chain_delta_maps(Order o) {
  std::vector<std::vector<std::vector<int>>> groups(6);
  auto to_map = [&](const Permutation& pi) {
    EdgePermutation tau = induced_edge_perm(pi);
    std::vector<int> map(tau.map.size());
    for (std::size_t p = 0; p < map.size(); ++p) map[p] = tau.map[p] - 1;
    return map;
  };
  for (const auto& pi : class_members(o, PermClass::I)) {
    PermClass c = smallest_class(pi);
    int slot = 0;
    switch (c) {
      case PermClass::Ct: slot = 0; break;
      case PermClass::T: slot = 1; break;
      case PermClass::CiT: slot = 2; break;
      case PermClass::Di: slot = 3; break;
      default: slot = 4; break;
    }
    groups[slot].push_back(to_map(pi));
  }
  // Non-involutions form the final delta (all \ i).
  std::vector<int> image(o.n);
  std::iota(image.begin(), image.end(), 1);
  while (std::next_permutation(image.begin(), image.end())) {
    Permutation pi(o, image);
    if (!pi.is_involution()) groups[5].push_back(to_map(pi));
  }
  return groups;
}

struct PatternMasks {
  std::uint64_t one_mask = 0;
  std::uint64_t zero_mask = 0;
  std::vector<std::uint64_t> var_masks;

  explicit PatternMasks(const GraphPattern& p) {
    var_masks.reserve(p.var_count());
    std::vector<std::uint64_t> vm(p.var_count(), 0);
    for (int pos = 1; pos <= p.size(); ++pos) {
      Cell c = p.cell(pos);
      std::uint64_t bit = std::uint64_t{1} << (pos - 1);
      if (c == kCellOne)
        one_mask |= bit;
      else if (c == kCellZero)
        zero_mask |= bit;
      else
        vm[cell_var(c) - 1] |= bit;
    }
    for (std::uint64_t mask : vm)
      if (std::popcount(mask) >= 2) var_masks.push_back(mask);
  }

  bool covers(std::uint64_t g) const {
    if ((g & one_mask) != one_mask) return false;
    if ((g & zero_mask) != 0) return false;
    for (std::uint64_t vm : var_masks) {
      std::uint64_t bits = g & vm;
      if (bits != 0 && bits != vm) return false;
    }
    return true;
  }
};

std::vector<PatternMasks> pattern_masks(const PatternSet& psi) {
  std::vector<PatternMasks> masks;
  masks.reserve(psi.size());
  for (const auto& p : psi.patterns()) masks.emplace_back(p);
  return masks;
}

bool covered_by(std::uint64_t g, const std::vector<PatternMasks>& masks) {
  for (const auto& m : masks)
    if (m.covers(g)) return true;
  return false;
}

}  // namespace

LayerCounts layer_survivor_counts(Order order, const GraphPredicate* problem,
                                  int workers, bool allow_big) {
  check_sweep_order(order, allow_big);
  auto groups = chain_delta_maps(order);
  std::uint64_t space = std::uint64_t{1} << order.edge_count();
  if (workers < 1) workers = 1;
  std::vector<LayerCounts> partial(workers);
  parallel_ranges(space, workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    LayerCounts& acc = partial[w];
    for (std::uint64_t g = begin; g < end; ++g) {
      if (problem && !(*problem)(g)) continue;
      ++acc.total;
      for (int layer = 0; layer < 6; ++layer) {
        bool reduced = false;
        for (const auto& map : groups[layer])
          if (reduces_packed(g, map)) {
            reduced = true;
            break;
          }
        if (reduced) break;
        ++acc.survivors[layer];
      }
    }
  });
  LayerCounts out;
  for (const auto& p : partial) {
    out.total += p.total;
    for (int k = 0; k < 6; ++k) out.survivors[k] += p.survivors[k];
  }
  return out;
}

std::uint64_t iso_class_count(Order order, const GraphPredicate* problem,
                              int workers, bool allow_big) {
  return layer_survivor_counts(order, problem, workers, allow_big).survivors[5];
}

std::uint64_t uncovered_count(const PatternSet& psi, Order order,
                              const GraphPredicate* problem, int workers,
                              bool allow_big) {
  check_sweep_order(order, allow_big);
  auto masks = pattern_masks(psi);
  std::uint64_t space = std::uint64_t{1} << order.edge_count();
  if (workers < 1) workers = 1;
  std::vector<std::uint64_t> partial(workers, 0);
  parallel_ranges(space, workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t acc = 0;
    for (std::uint64_t g = begin; g < end; ++g) {
      if (problem && !(*problem)(g)) continue;
      if (!covered_by(g, masks)) ++acc;
    }
    partial[w] += acc;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

double redundancy_ratio(const PatternSet& psi, Order order,
                        const GraphPredicate* problem, int workers, bool allow_big) {
  std::uint64_t classes = iso_class_count(order, problem, workers, allow_big);
  if (classes == 0) throw std::runtime_error("no isomorphism classes in the space");
  std::uint64_t satisfying = uncovered_count(psi, order, problem, workers, allow_big);
  return static_cast<double>(satisfying) / static_cast<double>(classes);
}

double percent_ncc(const PatternSet& psi, Order order, int workers, bool allow_big) {
  check_sweep_order(order, allow_big);
  auto groups = chain_delta_maps(order);
  auto masks = pattern_masks(psi);
  std::uint64_t space = std::uint64_t{1} << order.edge_count();
  if (workers < 1) workers = 1;
  std::vector<std::array<std::uint64_t, 2>> partial(workers, {0, 0});
  parallel_ranges(space, workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t noncanonical = 0, covered = 0;
    for (std::uint64_t g = begin; g < end; ++g) {
      bool canonical = true;
      for (int layer = 0; layer < 6 && canonical; ++layer)
        for (const auto& map : groups[layer])
          if (reduces_packed(g, map)) {
            canonical = false;
            break;
          }
      if (canonical) continue;
      ++noncanonical;
      if (covered_by(g, masks)) ++covered;
    }
    partial[w][0] += noncanonical;
    partial[w][1] += covered;
  });
  std::uint64_t noncanonical = 0, covered = 0;
  for (const auto& p : partial) {
    noncanonical += p[0];
    covered += p[1];
  }
  if (noncanonical == 0) return 100.0;
  return 100.0 * static_cast<double>(covered) / static_cast<double>(noncanonical);
}

std::optional<PermClass> smallest_generating_class(const GraphPattern& p) {
  if (p.is_bot()) return std::nullopt;
  if (p.provenance()) return smallest_class(p.provenance()->perm);
  Order o = p.order();
  for (PermClass c : kClassChain) {
    if (c == PermClass::All && o.n > 8) break;
    for (const auto& pi : class_members(o, c))
      for (int i = 1; i <= o.edge_count(); ++i)
        if (derive_pattern(pi, i) == p) return c;
  }
  return std::nullopt;
}

BreakProfile profile(const PatternSet& psi, Order order,
                     const GraphPredicate* problem, int workers, bool allow_big) {
  BreakProfile out;
  out.size = psi.size();
  for (std::size_t k = 0; k < psi.size(); ++k) {
    std::optional<PermClass> cls = psi.meta(k).cls;
    if (!cls) cls = smallest_generating_class(psi.pattern(k));
    if (!cls || *cls == PermClass::All) continue;  // counted in size only
    int slot;
    switch (*cls) {
      case PermClass::Ct: slot = 0; break;
      case PermClass::T: slot = 1; break;
      case PermClass::CiT: slot = 2; break;
      case PermClass::Di: slot = 3; break;
      default: slot = 4; break;
    }
    // Cumulative along the chain, matching the profiling-table semantics.
    for (int s = slot; s < 5; ++s) ++out.class_hist[s];
  }
  out.iso_classes = iso_class_count(order, problem, workers, allow_big);
  out.uncovered = uncovered_count(psi, order, problem, workers, allow_big);
  out.rho = static_cast<double>(out.uncovered) / static_cast<double>(out.iso_classes);
  out.pct_ncc = percent_ncc(psi, order, workers, allow_big);
  return out;
}

}  // namespace patbreak
