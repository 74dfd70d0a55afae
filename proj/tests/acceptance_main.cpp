// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for all criteria, or pass criterion numbers to run a subset.

#include <cmath>
#include <cstring>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "patbreak/canon.hpp"
#include "patbreak/cegar.hpp"
#include "patbreak/cli.hpp"
#include "patbreak/greedy.hpp"
#include "patbreak/metrics.hpp"
#include "patbreak/ramsey.hpp"
#include "patbreak/util.hpp"

using namespace patbreak;

namespace {

int failures = 0;
std::ostringstream detail;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    detail << "    FAILED: " << what << '\n';
  }
}

template <typename A, typename B>
void expect_eq(const A& got, const B& want, const std::string& what) {
  if (!(got == static_cast<A>(want))) {
    ++failures;
    detail << "    FAILED: " << what << ": got " << got << ", want " << want << '\n';
  }
}

int workers() { return default_workers(); }

// ---------------------------------------------------------------- criterion 1
void criterion_table1() {
  struct Cell {
    int n;
    PermClass cls;
    std::uint64_t total, dominating;
  };
  const Cell cells[] = {
      {4, PermClass::Ct, 6, 6},        {4, PermClass::T, 12, 12},
      {4, PermClass::CiT, 14, 14},     {4, PermClass::Di, 14, 14},
      {4, PermClass::I, 17, 16},       {4, PermClass::All, 59, 18},
      {5, PermClass::Ct, 12, 12},      {5, PermClass::T, 30, 30},
      {5, PermClass::CiT, 40, 39},     {5, PermClass::Di, 47, 46},
      {5, PermClass::I, 80, 75},       {5, PermClass::All, 550, 163},
      {6, PermClass::Ct, 20, 20},      {6, PermClass::T, 60, 60},
      {6, PermClass::CiT, 92, 88},     {6, PermClass::Di, 136, 130},
      {6, PermClass::I, 348, 327},     {6, PermClass::All, 4610, 1648},
      {7, PermClass::Ct, 30, 30},      {7, PermClass::T, 105, 105},
      {7, PermClass::CiT, 187, 176},   {7, PermClass::Di, 361, 339},
      {7, PermClass::I, 1451, 1369},   {7, PermClass::All, 43065, 17945},
      {8, PermClass::Ct, 42, 42},      {8, PermClass::T, 168, 168},
      {8, PermClass::CiT, 354, 329},   {8, PermClass::Di, 906, 842},
      {8, PermClass::I, 6055, 5762},
  };
  for (const Cell& c : cells) {
    PatternCensus got = census(Order(c.n), c.cls, kDefaultEnumBudget, workers());
    std::string name = "census(" + std::to_string(c.n) + "," + class_name(c.cls) + ")";
    expect_eq(got.total, c.total, name + " total");
    expect_eq(got.dominating, c.dominating, name + " dominating");
  }
}

// ---------------------------------------------------------------- criterion 2
void criterion_order4_ground_truth() {
  Order o(4);
  const char* expected_canonical[] = {
      "[0,0,0,0,0,0]", "[0,0,0,0,0,1]", "[0,0,0,0,1,1]", "[0,0,0,1,1,1]",
      "[0,0,1,0,1,1]", "[0,0,1,1,0,0]", "[0,0,1,1,0,1]", "[0,0,1,1,1,1]",
      "[0,1,1,1,1,0]", "[0,1,1,1,1,1]", "[1,1,1,1,1,1]"};
  auto canon = canonical_graphs(o);
  expect_eq(canon.size(), std::size_t{11}, "canonical count at n=4");
  for (std::size_t k = 0; k < canon.size() && k < 11; ++k)
    expect_eq(canon[k].to_string(), std::string(expected_canonical[k]),
              "canonical graph " + std::to_string(k + 1));
  expect_eq(64 - canon.size(), std::size_t{53}, "non-canonical count at n=4");

  GreedyResult res = symbreak_greedy(o, workers());
  expect_eq(res.picks.size(), std::size_t{6}, "greedy pattern count");
  const std::uint64_t deltas[] = {16, 16, 8, 6, 5, 2};
  for (std::size_t k = 0; k < res.picks.size() && k < 6; ++k)
    expect_eq(res.picks[k].delta, deltas[k], "greedy delta " + std::to_string(k + 1));
  std::set<std::string> got, want = {"[1,0,A,B,C,D]", "[A,1,0,B,C,D]",
                                     "[A,1,B,0,C,D]", "[A,B,1,B,0,C]",
                                     "[A,A,B,C,1,0]", "[A,B,B,1,0,C]"};
  for (const auto& pick : res.picks) got.insert(pick.pattern.to_string());
  expect(got == want, "greedy patterns equal the reference six as a set");
}

// ---------------------------------------------------------------- criterion 3
void criterion_derivation_soundness() {
  std::uint64_t checks = 0, failures_here = 0;
  {  // exhaustive n=4
    Order o(4);
    for (const auto& pi : class_members(o, PermClass::All))
      for (int i = 1; i <= 6; ++i) {
        GraphPattern p = derive_pattern(pi, i);
        for (std::uint64_t w = 0; w < 64; ++w) {
          GraphBits g = GraphBits::from_word(o, w);
          LexResult lex = lex_strict_at(apply_perm(pi, g), g);
          bool smaller = lex.rel == LexRel::LessAt && lex.pos == i;
          ++checks;
          if (covers(p, g) != smaller) ++failures_here;
        }
      }
  }
  expect_eq(checks, std::uint64_t{24 * 6 * 64} - 6 * 64, "exhaustive n=4 trials");
  for (int n : {5, 6, 7}) {
    Order o(n);
    std::mt19937_64 rng(1000 + n);
    int m = o.edge_count();
    for (int trial = 0; trial < 100000; ++trial) {
      std::vector<int> image(o.n);
      for (int k = 0; k < o.n; ++k) image[k] = k + 1;
      for (int k = o.n - 1; k > 0; --k)
        std::swap(image[k], image[rng() % (k + 1)]);
      Permutation pi(o, image);
      if (pi.is_identity()) continue;
      int i = 1 + static_cast<int>(rng() % m);
      GraphBits g = GraphBits::from_word(o, rng() & ((std::uint64_t{1} << m) - 1));
      GraphPattern p = derive_pattern(pi, i);
      LexResult lex = lex_strict_at(apply_perm(pi, g), g);
      bool smaller = lex.rel == LexRel::LessAt && lex.pos == i;
      if (covers(p, g) != smaller) ++failures_here;
    }
  }
  expect_eq(failures_here, std::uint64_t{0}, "derivation soundness failures");
}

// ---------------------------------------------------------------- criterion 4
void criterion_top_four() {
  for (int n : {5, 6}) {
    Order o(n);
    int m = o.edge_count();
    auto four = top_four(o);
    std::string tag = " (n=" + std::to_string(n) + ")";
    expect_eq(cover_size(four[0]), std::uint64_t{1} << (m - 2), "cover 1" + tag);
    expect_eq(cover_size(four[1]), std::uint64_t{1} << (m - 2), "cover 2" + tag);
    expect_eq(cover_size(four[2]), std::uint64_t{1} << (m - 2), "cover 3" + tag);
    expect_eq(cover_size(four[3]), std::uint64_t{1} << (m - 2), "cover 4" + tag);
    expect(orthogonal(four[0], four[1]), "patterns 1,2 orthogonal" + tag);
    expect(orthogonal(four[2], four[3]), "patterns 3,4 orthogonal" + tag);
    // new coverage of patterns 3 and 4 over the first two is 2^(m-3) each
    PatternSet first_two(o);
    first_two.add(four[0]);
    first_two.add(four[1]);
    expect_eq(ranking(four[2], first_two, o), std::uint64_t{1} << (m - 3),
              "pattern 3 new coverage" + tag);
    PatternSet first_three = first_two;
    first_three.add(four[2]);
    expect_eq(ranking(four[3], first_three, o), std::uint64_t{1} << (m - 3),
              "pattern 4 new coverage" + tag);
    // exhaustive union size: exactly 3/4 of the whole space
    PatternSet all_four = first_three;
    all_four.add(four[3]);
    std::uint64_t covered =
        (std::uint64_t{1} << m) - uncovered_count(all_four, o, nullptr, workers());
    expect_eq(covered, 3 * (std::uint64_t{1} << m) / 4, "union covers 3/4" + tag);
  }
}

// ---------------------------------------------------------------- criterion 5
void criterion_table3_ratios() {
  // ratio rows from the layered-CEGAR table, n=4..7
  const double table[4][5] = {
      {1.00, 1.00, 1.00, 1.00, 1.00},
      {1.35, 1.26, 1.06, 1.06, 1.00},
      {2.08, 1.77, 1.16, 1.12, 1.00},
      {3.87, 3.02, 1.46, 1.31, 1.01},
  };
  for (int n = 4; n <= 7; ++n) {
    LayerCounts lc = layer_survivor_counts(Order(n), nullptr, workers());
    std::uint64_t classes = lc.survivors[5];
    std::ostringstream line;
    line << "    [reported] n=" << n << " ratios:";
    for (int layer = 0; layer < 5; ++layer) {
      double ratio = static_cast<double>(lc.survivors[layer]) / classes;
      double want = table[n - 4][layer];
      line << ' ' << class_name(kClassChain[layer]) << '=' << ratio;
      std::ostringstream what;
      what << "ratio n=" << n << " layer " << class_name(kClassChain[layer])
           << ": got " << ratio << ", want " << want;
      expect(std::abs(ratio - want) <= 0.005, what.str());
    }
    std::cout << line.str() << '\n';
    // complete layer ratio is exactly 1
    expect_eq(lc.survivors[5], classes, "complete ratio n=" + std::to_string(n));
  }
  // completeness flag + reported sizes from the actual runs
  for (int n = 4; n <= 7; ++n) {
    CegarRun run = layered_cegar(Order(n));
    expect(run.complete, "cegar complete flag n=" + std::to_string(n));
    expect(verify_complete(run.psi, Order(n)),
           "verify_complete n=" + std::to_string(n));
    std::ostringstream sizes;
    for (const auto& lr : run.layers) sizes << ' ' << lr.psi_size_after;
    std::cout << "    [reported] n=" << n << " layer sizes:" << sizes.str()
              << " (iterations " << run.total_iterations << ")\n";
  }
}

// ---------------------------------------------------------------- criterion 6
void criterion_fig4_counts() {
  struct Row {
    int s, t, n;
    std::uint64_t counts[6];  // ct, t, ci+t, di, i, all
  };
  const Row rows[] = {
      {4, 4, 4, {9, 9, 9, 9, 9, 9}},
      {4, 4, 5, {36, 33, 26, 26, 24, 24}},
      {4, 4, 6, {217, 178, 105, 99, 84, 84}},
      {4, 4, 7, {1901, 1478, 616, 512, 368, 362}},
      {3, 6, 4, {7, 7, 7, 7, 7, 7}},
      {3, 6, 5, {20, 18, 15, 15, 14, 14}},
      {3, 6, 6, {75, 63, 44, 41, 37, 37}},
      {3, 6, 7, {387, 299, 152, 130, 101, 100}},
  };
  for (const Row& row : rows) {
    RamseyInstance inst(row.s, row.t, Order(row.n));
    std::string tag = "R(" + std::to_string(row.s) + "," + std::to_string(row.t) +
                      ";" + std::to_string(row.n) + ")";
    // route 1: exhaustive minimality oracle
    GraphPredicate pred = ramsey_predicate(inst);
    LayerCounts lc = layer_survivor_counts(inst.order, &pred, workers());
    for (int layer = 0; layer < 6; ++layer)
      expect_eq(lc.survivors[layer], row.counts[layer],
                tag + " sweep layer " + class_name(kClassChain[layer]));
    // route 2: SAT enumeration under the emitted clauses of a tailored break
    CegarRun run = tailored_break(inst);
    for (std::size_t layer = 0; layer < run.layers.size(); ++layer) {
      CountResult res = count_solutions(inst, &run.layers[layer].psi_snapshot);
      expect(!res.truncated, tag + " enumeration within budget");
      expect_eq(res.count, row.counts[layer],
                tag + " sat layer " + class_name(kClassChain[layer]));
    }
  }
}

// ---------------------------------------------------------------- criterion 7
void criterion_cegar_completeness() {
  for (int n : {4, 5, 6}) {
    Order o(n);
    CegarRun run = layered_cegar(o);
    expect(run.complete, "complete flag n=" + std::to_string(n));
    expect(verify_complete(run.psi, o), "unsat certificate n=" + std::to_string(n));
    // exhaustive cross-check: satisfying set equals the canonical set
    auto maps = edge_maps(o, PermClass::All);
    std::uint64_t space = std::uint64_t{1} << o.edge_count();
    bool all_match = true;
    for (std::uint64_t w = 0; w < space; ++w) {
      GraphBits g = GraphBits::from_word(o, w);
      bool covered = false;
      for (const auto& p : run.psi.patterns())
        if (covers(p, g)) {
          covered = true;
          break;
        }
      if (covered == minimal_under(w, maps)) {
        all_match = false;
        break;
      }
    }
    expect(all_match, "satisfying set = canonical set at n=" + std::to_string(n));
  }
  for (int n : {4, 5}) {
    Order o(n);
    CegarOptions opt;
    opt.reduce = true;
    CegarRun run = layered_cegar(o, opt);
    expect(verify_complete(run.psi, o), "reduced break complete n=" + std::to_string(n));
    bool irredundant = true;
    for (std::size_t k = 0; k < run.psi.size(); ++k) {
      std::vector<bool> keep(run.psi.size(), true);
      keep[k] = false;
      if (verify_complete(run.psi.filtered(keep), o)) irredundant = false;
    }
    expect(irredundant, "reduced break irredundant n=" + std::to_string(n));
  }
}

// ---------------------------------------------------------------- criterion 8
void criterion_layering_benefit() {
  int strict = 0, cells = 0;
  auto compare = [&](const std::string& tag, const CegarRun& layered,
                     const CegarRun& flat) {
    ++cells;
    std::cout << "    [reported] " << tag << ": layered " << layered.total_iterations
              << " vs non-layered " << flat.total_iterations << " iterations\n";
    expect(layered.total_iterations <= flat.total_iterations,
           tag + " layered iterations do not exceed non-layered");
    if (layered.total_iterations < flat.total_iterations) ++strict;
  };
  CegarOptions flat_opt;
  flat_opt.layers = {PermClass::All};
  for (int n : {5, 6, 7}) {
    CegarRun layered = layered_cegar(Order(n));
    CegarRun flat = layered_cegar(Order(n), flat_opt);
    compare("plain n=" + std::to_string(n), layered, flat);
  }
  for (int n : {6, 7, 8}) {
    for (auto [s, t] : {std::pair{4, 4}, std::pair{3, 6}}) {
      RamseyInstance inst(s, t, Order(n));
      CegarRun layered = tailored_break(inst);
      CegarRun flat = tailored_break(inst, flat_opt);
      compare("R(" + std::to_string(s) + "," + std::to_string(t) + ";" +
                  std::to_string(n) + ")",
              layered, flat);
    }
  }
  expect(2 * strict >= cells, "strict improvement in at least half the cells (" +
                                  std::to_string(strict) + "/" +
                                  std::to_string(cells) + ")");
}

// ---------------------------------------------------------------- criterion 9
void criterion_encoding_cross_checks() {
  // to_clause vs covers on random pattern/graph pairs
  {
    std::mt19937_64 rng(4242);
    std::uint64_t bad = 0, done = 0;
    while (done < 100000) {
      int n = 4 + static_cast<int>(rng() % 4);
      Order o(n);
      int m = o.edge_count();
      std::vector<int> image(o.n);
      for (int k = 0; k < o.n; ++k) image[k] = k + 1;
      for (int k = o.n - 1; k > 0; --k)
        std::swap(image[k], image[rng() % (k + 1)]);
      Permutation pi(o, image);
      if (pi.is_identity()) continue;
      GraphPattern p = derive_pattern(pi, 1 + static_cast<int>(rng() % m));
      if (p.is_bot()) continue;
      sat::Solver solver;
      sat::Encoder enc;
      enc.live = &solver;
      std::vector<int> edges(m);
      for (int& v : edges) v = enc.new_var();
      XorRegistry xors;
      std::vector<int> clause = to_clause(p, edges, enc, xors);
      GraphBits g = GraphBits::from_word(o, rng() & ((std::uint64_t{1} << m) - 1));
      // fix the graph bits; the clause must be satisfiable iff not covered
      std::vector<int> assumptions;
      for (int pos = 1; pos <= m; ++pos)
        assumptions.push_back(g.get(pos) ? edges[pos - 1] : -edges[pos - 1]);
      solver.add_clause(clause);
      bool clause_sat = solver.solve(assumptions) == sat::Result::Sat;
      if (clause_sat != !covers(p, g)) ++bad;
      ++done;
    }
    expect_eq(bad, std::uint64_t{0}, "to_clause/covers disagreements");
  }
  // enumerate_models vs truth table on random formulas
  {
    std::mt19937_64 rng(777);
    int bad = 0;
    for (int round = 0; round < 200; ++round) {
      int vars = 4 + static_cast<int>(rng() % 13);  // up to 16
      sat::Solver solver;
      solver.ensure_vars(vars);
      std::vector<std::vector<int>> clauses;
      int nc = 3 + static_cast<int>(rng() % 10);
      for (int k = 0; k < nc; ++k) {
        std::vector<int> clause;
        int len = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < len; ++j) {
          int v = 1 + static_cast<int>(rng() % vars);
          clause.push_back((rng() & 1) ? v : -v);
        }
        clauses.push_back(clause);
        solver.add_clause(clause);
      }
      std::vector<int> projection(vars);
      for (int v = 1; v <= vars; ++v) projection[v - 1] = v;
      auto res = sat::enumerate_models(solver, projection, std::uint64_t{1} << 17);
      std::uint64_t brute = 0;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << vars); ++a) {
        bool ok = true;
        for (const auto& c : clauses) {
          bool sat = false;
          for (int l : c)
            if (((a >> (std::abs(l) - 1)) & 1) == (l > 0)) {
              sat = true;
              break;
            }
          if (!sat) {
            ok = false;
            break;
          }
        }
        if (ok) ++brute;
      }
      if (res.count != brute) ++bad;
    }
    expect_eq(bad, 0, "enumerate_models/truth-table disagreements");
  }
  // encode_image vs apply_perm on random permutation-graph pairs
  {
    std::mt19937_64 rng(31337);
    std::uint64_t bad = 0, done = 0;
    for (int n : {4, 5, 6}) {
      Order o(n);
      int m = o.edge_count();
      sat::Solver solver;
      sat::Encoder enc;
      enc.live = &solver;
      std::vector<int> edges(m);
      for (int& v : edges) v = enc.new_var();
      PermEncoding pe = encode_permutation(enc, o, PermClass::All);
      encode_image(enc, pe, edges);
      auto members = class_members(o, PermClass::All);
      for (std::uint64_t trial = 0; trial < 10000 / 3 + 1; ++trial) {
        const Permutation& pi = members[rng() % members.size()];
        GraphBits g = GraphBits::from_word(o, rng() & ((std::uint64_t{1} << m) - 1));
        std::vector<int> assumptions;
        for (int u = 1; u <= o.n; ++u)
          for (int v = 1; v <= o.n; ++v)
            assumptions.push_back(pi.apply(u) == v ? pe.P[u][v] : -pe.P[u][v]);
        for (int pos = 1; pos <= m; ++pos)
          assumptions.push_back(g.get(pos) ? edges[pos - 1] : -edges[pos - 1]);
        if (solver.solve(assumptions) != sat::Result::Sat) {
          ++bad;
          continue;
        }
        GraphBits expected = apply_perm(pi, g);
        for (int pos = 1; pos <= m; ++pos)
          if (solver.model_value(pe.image_vars[pos - 1]) != expected.get(pos)) ++bad;
        ++done;
      }
    }
    expect(done >= 10000, "image cross-check trial count");
    expect_eq(bad, std::uint64_t{0}, "encode_image/apply_perm disagreements");
  }
}

struct Criterion {
  int number;
  const char* title;
  void (*run)();
};

const Criterion kCriteria[] = {
    {1, "pattern census table (orders 4-8)", criterion_table1},
    {2, "order-4 ground truth and greedy run", criterion_order4_ground_truth},
    {3, "derivation soundness", criterion_derivation_soundness},
    {4, "four top patterns cover 3/4 of all graphs", criterion_top_four},
    {5, "layer-end redundancy ratios", criterion_table3_ratios},
    {6, "Ramsey solution counts per layer", criterion_fig4_counts},
    {7, "CEGAR completeness and irredundant reduce", criterion_cegar_completeness},
    {8, "layered iterations never exceed non-layered", criterion_layering_benefit},
    {9, "encoding cross-checks", criterion_encoding_cross_checks},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));
  int exit_code = 0;
  for (const Criterion& c : kCriteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    failures = 0;
    detail.str("");
    Stopwatch watch;
    c.run();
    double secs = watch.seconds();
    std::cout << (failures == 0 ? "PASS" : "FAIL") << " criterion " << c.number
              << ": " << c.title << " (" << static_cast<int>(secs * 1000) / 1000.0
              << "s)\n";
    std::cout << detail.str();
    if (failures != 0) exit_code = 1;
  }
  return exit_code;
}
