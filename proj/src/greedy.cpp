#include "patbreak/greedy.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace patbreak {

namespace {

void check_sweep_order(Order order) {
  if (order.n > 7)
    throw std::runtime_error("exhaustive ranking supports n <= 7, got n = " +
                             std::to_string(order.n));
}

// Packed-word instance enumerator for one pattern.
struct PatternWords {
  std::uint64_t one_mask = 0;
  std::vector<std::uint64_t> var_masks;

  explicit PatternWords(const GraphPattern& p) {
    var_masks.assign(p.var_count(), 0);
    for (int pos = 1; pos <= p.size(); ++pos) {
      Cell c = p.cell(pos);
      if (c == kCellOne)
        one_mask |= std::uint64_t{1} << (pos - 1);
      else if (cell_is_var(c))
        var_masks[cell_var(c) - 1] |= std::uint64_t{1} << (pos - 1);
    }
  }

  template <typename Fn>
  void for_each_instance(Fn&& fn) const {
    std::uint64_t k = var_masks.size();
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
      std::uint64_t g = one_mask;
      for (std::uint64_t v = 0; v < k; ++v)
        if ((a >> v) & 1) g |= var_masks[v];
      fn(g);
    }
  }
};

struct CoveredBitset {
  std::vector<std::uint64_t> words;
  explicit CoveredBitset(int m) : words((std::size_t{1} << m) / 64 + 1, 0) {}
  bool test(std::uint64_t g) const { return (words[g >> 6] >> (g & 63)) & 1; }
  void set(std::uint64_t g) { words[g >> 6] |= std::uint64_t{1} << (g & 63); }
};

}  // namespace

std::uint64_t ranking(const GraphPattern& p, const PatternSet& psi, Order order) {
  check_sweep_order(order);
  if (p.is_bot()) return 0;
  if (p.order() != order) throw std::invalid_argument("order mismatch");
  std::vector<PatternWords> covered;
  covered.reserve(psi.size());
  for (const auto& q : psi.patterns()) covered.emplace_back(q);
  PatternWords pw(p);
  // Membership tests against psi via masks.
  std::vector<std::uint64_t> zero_masks(psi.size(), 0);
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const GraphPattern& q = psi.pattern(k);
    for (int pos = 1; pos <= q.size(); ++pos)
      if (q.cell(pos) == kCellZero)
        zero_masks[k] |= std::uint64_t{1} << (pos - 1);
  }
  std::uint64_t count = 0;
  pw.for_each_instance([&](std::uint64_t g) {
    for (std::size_t k = 0; k < psi.size(); ++k) {
      const PatternWords& q = covered[k];
      if ((g & q.one_mask) != q.one_mask) continue;
      if ((g & zero_masks[k]) != 0) continue;
      bool match = true;
      for (std::uint64_t vm : q.var_masks) {
        std::uint64_t bits = g & vm;
        if (bits != 0 && bits != vm) {
          match = false;
          break;
        }
      }
      if (match) return;  // covered by psi
    }
    ++count;
  });
  return count;
}

PatternSet GreedyResult::to_pattern_set() const {
  PatternSet set(order);
  for (const auto& pick : picks) {
    PatternMeta meta;
    meta.delta = pick.delta;
    if (pick.pattern.provenance())
      meta.cls = smallest_class(pick.pattern.provenance()->perm);
    set.add(pick.pattern, meta);
  }
  return set;
}

GreedyResult symbreak_greedy(Order order, int workers) {
  check_sweep_order(order);
  PatternSet dom = dominators(all_patterns(order, PermClass::All), workers);

  struct Candidate {
    GraphPattern pattern;
    PatternWords words;
    std::uint64_t delta = 0;
    std::uint64_t version = 0;
  };
  std::vector<Candidate> cands;
  cands.reserve(dom.size());
  for (const auto& p : dom.patterns())
    cands.push_back({p, PatternWords(p), cover_size(p), 0});

  CoveredBitset covered(order.edge_count());
  GreedyResult result;
  result.order = order;

  // Rankings only decrease as coverage grows, so stale values are upper
  // bounds and lazy re-evaluation selects the exact maximum. Among equal
  // rankings the lexicographically least normal form wins.
  auto later = [&](std::size_t a, std::size_t b) {
    if (cands[a].delta != cands[b].delta) return cands[a].delta < cands[b].delta;
    return cands[b].pattern < cands[a].pattern;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)>
      queue(later);
  for (std::size_t k = 0; k < cands.size(); ++k) queue.push(k);

  std::uint64_t version = 0;
  int round = 0;
  std::vector<GraphPattern> batch;
  while (!queue.empty()) {
    std::size_t k = queue.top();
    queue.pop();
    Candidate& c = cands[k];
    if (c.version != version) {
      c.delta = 0;
      c.words.for_each_instance([&](std::uint64_t g) {
        if (!covered.test(g)) ++c.delta;
      });
      c.version = version;
      if (c.delta > 0) queue.push(k);
      continue;
    }
    if (c.delta == 0) continue;

    // Rounds group consecutive picks that stay mutually orthogonal, the
    // grouping under which one ranking pass admits the whole round.
    bool joins = !batch.empty();
    for (const auto& q : batch)
      if (!orthogonal(q, c.pattern)) {
        joins = false;
        break;
      }
    if (!joins) {
      ++round;
      batch.clear();
    }
    batch.push_back(c.pattern);
    result.picks.push_back({c.pattern, c.delta, round});
    result.covered += c.delta;
    c.words.for_each_instance([&](std::uint64_t g) { covered.set(g); });
    ++version;
  }
  return result;
}

std::array<GraphPattern, 4> top_four(Order order) {
  if (order.n < 5)
    throw std::invalid_argument("top_four requires n >= 5");
  auto swap_perm = [&](int a, int b) {
    return Permutation::from_swaps(order, {{a, b}});
  };
  return {derive_pattern(swap_perm(2, 3), 1), derive_pattern(swap_perm(1, 2), 2),
          derive_pattern(swap_perm(3, 4), 2), derive_pattern(swap_perm(4, 5), 4)};
}

}  // namespace patbreak
