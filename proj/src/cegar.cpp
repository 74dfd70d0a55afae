#include "patbreak/cegar.hpp"

#include <algorithm>

#include "patbreak/enumeration.hpp"
#include "patbreak/util.hpp"

namespace patbreak {

namespace {

std::vector<int> edge_var_block(sat::Encoder& enc, Order order) {
  std::vector<int> vars(order.edge_count());
  for (int& v : vars) v = enc.new_var();
  return vars;
}

void add_problem(sat::Encoder& enc, const sat::CnfFormula* problem, Order order) {
  if (!problem) return;
  if (problem->var_count > order.edge_count())
    throw std::invalid_argument("problem clauses must range over edge variables");
  for (const auto& c : problem->clauses) enc.add_clause(c);
}

int chain_pos(PermClass c) {
  for (int k = 0; k < 6; ++k)
    if (kClassChain[k] == c) return k;
  throw std::logic_error("bad class");
}

}  // namespace

// Solver context for one layer: edge variables, problem clauses, pattern
// clauses for psi, and the counter-example query for one class.
struct LayerContext {
  sat::Solver solver;
  sat::Encoder enc;
  std::vector<int> edge_vars;
  XorRegistry xors;
  PermEncoding pe;
  Order order;

  // Variable discipline: edge variables 1..m, then the permutation matrix,
  // then auxiliaries (image, lex chain, xor).
  LayerContext(Order o, PermClass cls, const PatternSet& psi,
               const sat::CnfFormula* problem)
      : order(o) {
    enc.live = &solver;
    edge_vars = edge_var_block(enc, o);
    add_problem(enc, problem, o);
    pe = encode_permutation(enc, o, cls);
    encode_image(enc, pe, edge_vars);
    encode_lex_less(enc, pe.image_vars, edge_vars);
    encode_not_covered(enc, psi, edge_vars, xors);
  }

  CounterExample extract() const {
    GraphBits g(order);
    for (int p = 1; p <= order.edge_count(); ++p)
      g.set(p, solver.model_value(edge_vars[p - 1]));
    Permutation pi = decode_permutation(solver, pe);
    GraphBits image = apply_perm(pi, g);
    for (int p = 1; p <= order.edge_count(); ++p)
      if (solver.model_value(pe.image_vars[p - 1]) != image.get(p))
        throw std::logic_error("model image vars disagree with apply_perm");
    LexResult lex = lex_strict_at(image, g);
    if (lex.rel != LexRel::LessAt)
      throw std::logic_error("counter-example model is not strictly smaller");
    return CounterExample{std::move(g), std::move(pi), lex.pos};
  }
};

int cegar_layer(LayerContext& ctx, PatternSet& psi, PermClass cls) {
  int iterations = 0;
  while (ctx.solver.solve() == sat::Result::Sat) {
    ++iterations;
    CounterExample ce = ctx.extract();
    GraphPattern p = derive_pattern(ce.perm, ce.index);
    if (p.is_bot())
      throw std::logic_error("counter-example produced an empty pattern");
    PatternMeta meta;
    meta.layer = cls;
    meta.cls = smallest_class(ce.perm);
    if (!psi.add(p, meta))
      throw std::logic_error("counter-example pattern was already present");
    ctx.enc.add_clause(to_clause(p, ctx.edge_vars, ctx.enc, ctx.xors));
  }
  return iterations;
}

CegarRun layered_cegar(Order order, const CegarOptions& options,
                       const sat::CnfFormula* problem) {
  if (options.layers.empty())
    throw std::invalid_argument("at least one layer is required");
  for (std::size_t k = 1; k < options.layers.size(); ++k)
    if (chain_pos(options.layers[k]) <= chain_pos(options.layers[k - 1]))
      throw std::invalid_argument("layers must follow the class chain");

  CegarRun run;
  run.order = order;
  run.psi = PatternSet(order);
  for (PermClass cls : options.layers) {
    Stopwatch watch;
    LayerRun lr;
    lr.cls = cls;
    std::size_t before = run.psi.size();
    LayerContext ctx(order, cls, run.psi, problem);
    lr.iterations = cegar_layer(ctx, run.psi, cls);
    lr.patterns_added = static_cast<int>(run.psi.size() - before);
    lr.psi_size_after = run.psi.size();
    lr.seconds = watch.seconds();
    lr.psi_snapshot = run.psi;
    run.total_iterations += lr.iterations;
    run.layers.push_back(std::move(lr));
  }
  run.complete = options.layers.back() == PermClass::All;
  if (options.reduce) {
    if (!run.complete)
      throw std::invalid_argument("reduce requires a complete break");
    Stopwatch watch;
    PatternSet reduced = reduce_break(run.psi, order, problem);
    run.reduced_removed = run.psi.size() - reduced.size();
    run.psi = std::move(reduced);
    run.reduce_seconds = watch.seconds();
  }
  return run;
}

PatternSet reduce_break(const PatternSet& psi, Order order,
                        const sat::CnfFormula* problem) {
  sat::Solver solver;
  sat::Encoder enc;
  enc.live = &solver;
  std::vector<int> edge_vars = edge_var_block(enc, order);
  add_problem(enc, problem, order);
  PermEncoding pe = encode_permutation(enc, order, PermClass::All);
  encode_image(enc, pe, edge_vars);
  encode_lex_less(enc, pe.image_vars, edge_vars);
  XorRegistry xors;
  // Guard literal per pattern so single clauses can be switched off.
  std::vector<int> guards;
  guards.reserve(psi.size());
  for (const auto& p : psi.patterns()) {
    int s = enc.new_var();
    std::vector<int> clause = to_clause(p, edge_vars, enc, xors);
    clause.insert(clause.begin(), -s);
    enc.add_clause(std::move(clause));
    guards.push_back(s);
  }

  std::vector<bool> active(psi.size(), true);
  auto solve_without = [&](std::size_t skip) {
    std::vector<int> assumptions;
    for (std::size_t k = 0; k < psi.size(); ++k)
      if (active[k] && k != skip) assumptions.push_back(guards[k]);
    return solver.solve(assumptions);
  };
  if (solve_without(psi.size()) == sat::Result::Sat)
    throw std::invalid_argument("reduce requires a complete symmetry break");
  for (std::size_t k = psi.size(); k-- > 0;) {
    if (solve_without(k) == sat::Result::Unsat) active[k] = false;
  }
  std::vector<bool> keep(active.begin(), active.end());
  return psi.filtered(keep);
}

bool verify_complete(const PatternSet& psi, Order order,
                     const sat::CnfFormula* problem) {
  sat::Solver solver;
  sat::Encoder enc;
  enc.live = &solver;
  std::vector<int> edge_vars = edge_var_block(enc, order);
  add_problem(enc, problem, order);
  PermEncoding pe = encode_permutation(enc, order, PermClass::All);
  encode_image(enc, pe, edge_vars);
  encode_lex_less(enc, pe.image_vars, edge_vars);
  XorRegistry xors;
  encode_not_covered(enc, psi, edge_vars, xors);
  return solver.solve() == sat::Result::Unsat;
}

}  // namespace patbreak
