#include "patbreak/ramsey.hpp"

#include <numeric>

#include "patbreak/util.hpp"

namespace patbreak {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// Visits every k-subset of {1..n} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k > n) return;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 1);
  for (;;) {
    fn(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::vector<int> subset_edges(const std::vector<int>& verts, Order o) {
  std::vector<int> edges;
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = a + 1; b < verts.size(); ++b)
      edges.push_back(edge_index(verts[a], verts[b], o));
  return edges;
}

}  // namespace

sat::CnfFormula ramsey_clauses(const RamseyInstance& inst, std::uint64_t budget) {
  Order o = inst.order;
  std::uint64_t work = binomial(o.n, inst.s) + binomial(o.n, inst.t);
  if (work > budget)
    throw std::runtime_error("ramsey clause budget exceeded: " +
                             std::to_string(work) + " subsets (budget " +
                             std::to_string(budget) + ")");
  sat::CnfFormula f;
  f.var_count = o.edge_count();
  f.add_comment("ramsey " + std::to_string(inst.s) + " " + std::to_string(inst.t) +
                " order " + std::to_string(o.n));
  for_each_subset(o.n, inst.s, [&](const std::vector<int>& verts) {
    std::vector<int> clause;
    for (int e : subset_edges(verts, o)) clause.push_back(-e);
    f.add_clause(std::move(clause));
  });
  for_each_subset(o.n, inst.t, [&](const std::vector<int>& verts) {
    f.add_clause(subset_edges(verts, o));
  });
  return f;
}

GraphPredicate ramsey_predicate(const RamseyInstance& inst) {
  Order o = inst.order;
  if (o.edge_count() > 64)
    throw std::invalid_argument("predicate supports at most 64 edges");
  GraphPredicate pred;
  for_each_subset(o.n, inst.s, [&](const std::vector<int>& verts) {
    std::uint64_t mask = 0;
    for (int e : subset_edges(verts, o)) mask |= std::uint64_t{1} << (e - 1);
    pred.forbid_full.push_back(mask);
  });
  for_each_subset(o.n, inst.t, [&](const std::vector<int>& verts) {
    std::uint64_t mask = 0;
    for (int e : subset_edges(verts, o)) mask |= std::uint64_t{1} << (e - 1);
    pred.forbid_empty.push_back(mask);
  });
  return pred;
}

bool is_ramsey_graph(const RamseyInstance& inst, const GraphBits& g) {
  if (g.order() != inst.order) throw std::invalid_argument("order mismatch");
  return ramsey_predicate(inst)(g.word());
}

CountResult count_solutions(const RamseyInstance& inst, const PatternSet* psi,
                            std::uint64_t model_budget) {
  sat::Solver solver;
  sat::Encoder enc;
  enc.live = &solver;
  std::vector<int> edge_vars(inst.order.edge_count());
  for (int& v : edge_vars) v = enc.new_var();
  for (const auto& c : ramsey_clauses(inst).clauses) enc.add_clause(c);
  if (psi) {
    XorRegistry xors;
    encode_not_covered(enc, *psi, edge_vars, xors);
  }
  auto res = sat::enumerate_models(solver, edge_vars, model_budget);
  return CountResult{res.count, res.truncated};
}

std::uint64_t count_solutions_sweep(const RamseyInstance& inst, const PatternSet* psi,
                                    int workers, bool allow_big) {
  GraphPredicate pred = ramsey_predicate(inst);
  if (!psi || psi->empty()) {
    Order o = inst.order;
    int limit = allow_big ? 8 : 7;
    if (o.n > limit) throw std::runtime_error("sweep supports n <= " + std::to_string(limit));
    std::uint64_t space = std::uint64_t{1} << o.edge_count();
    std::vector<std::uint64_t> partial(std::max(workers, 1), 0);
    parallel_ranges(space, workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
      std::uint64_t acc = 0;
      for (std::uint64_t g = begin; g < end; ++g)
        if (pred(g)) ++acc;
      partial[w] += acc;
    });
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  }
  return uncovered_count(*psi, inst.order, &pred, workers, allow_big);
}

CegarRun tailored_break(const RamseyInstance& inst, const CegarOptions& options) {
  sat::CnfFormula problem = ramsey_clauses(inst);
  return layered_cegar(inst.order, options, &problem);
}

}  // namespace patbreak
