#include <doctest.h>

#include <set>

#include "patbreak/canon.hpp"
#include "patbreak/cegar.hpp"
#include "patbreak/greedy.hpp"
#include "patbreak/metrics.hpp"

using namespace patbreak;

namespace {

// Uncovered graphs by direct enumeration (the run-independent quantity).
std::set<std::uint64_t> uncovered_set(const PatternSet& psi, Order o) {
  std::set<std::uint64_t> out;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << o.edge_count()); ++w) {
    GraphBits g = GraphBits::from_word(o, w);
    bool covered = false;
    for (const auto& p : psi.patterns())
      if (covers(p, g)) {
        covered = true;
        break;
      }
    if (!covered) out.insert(w);
  }
  return out;
}

std::set<std::uint64_t> minimal_set(Order o, PermClass cls) {
  auto maps = edge_maps(o, cls);
  std::set<std::uint64_t> out;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << o.edge_count()); ++w)
    if (minimal_under(w, maps)) out.insert(w);
  return out;
}

}  // namespace

TEST_CASE("counter-example models project to the non-canonical graphs at n=4") {
  // class=all query with no break clauses: models restricted to the edge
  // variables are exactly the 53 non-canonical graphs
  Order o(4);
  sat::Solver solver;
  sat::Encoder enc;
  enc.live = &solver;
  std::vector<int> edges;
  for (int p = 1; p <= o.edge_count(); ++p) edges.push_back(enc.new_var());
  PermEncoding pe = encode_permutation(enc, o, PermClass::All);
  encode_image(enc, pe, edges);
  encode_lex_less(enc, pe.image_vars, edges);
  auto res = sat::enumerate_models(solver, edges, 1000);
  CHECK(res.count == 53);
}

TEST_CASE("single-layer saturation leaves exactly the class-minimal graphs") {
  Order o(4);
  for (PermClass cls : {PermClass::Ct, PermClass::T, PermClass::I}) {
    CegarOptions opt;
    opt.layers = {cls};
    CegarRun run = layered_cegar(o, opt);
    CHECK(uncovered_set(run.psi, o) == minimal_set(o, cls));
  }
}

TEST_CASE("layered cegar produces complete breaks (n=4,5)") {
  for (int n : {4, 5}) {
    Order o(n);
    CegarRun run = layered_cegar(o);
    CHECK(run.complete);
    CHECK(verify_complete(run.psi, o));
    // satisfying set is exactly the canonical set
    auto uncovered = uncovered_set(run.psi, o);
    auto canon = minimal_set(o, PermClass::All);
    CHECK(uncovered == canon);
    // every iteration added exactly one pattern
    CHECK(run.total_iterations == static_cast<int>(run.psi.size()));
  }
}

TEST_CASE("verify_complete on the reference order-4 break") {
  Order o(4);
  PatternSet six(o);
  for (const char* text : {"[1,0,A,B,C,D]", "[A,1,0,B,C,D]", "[A,1,B,0,C,D]",
                           "[A,B,1,B,0,C]", "[A,A,B,C,1,0]", "[A,B,B,1,0,C]"})
    six.add(GraphPattern::parse(text, o));
  CHECK(verify_complete(six, o));
  // dropping any single pattern breaks completeness
  for (std::size_t k = 0; k < six.size(); ++k) {
    std::vector<bool> keep(six.size(), true);
    keep[k] = false;
    CHECK(!verify_complete(six.filtered(keep), o));
  }
}

TEST_CASE("break clauses of the reference six admit exactly the 11 canonical models") {
  Order o(4);
  sat::Solver solver;
  sat::Encoder enc;
  enc.live = &solver;
  std::vector<int> edges;
  for (int p = 1; p <= o.edge_count(); ++p) edges.push_back(enc.new_var());
  PatternSet six(o);
  for (const char* text : {"[1,0,A,B,C,D]", "[A,1,0,B,C,D]", "[A,1,B,0,C,D]",
                           "[A,B,1,B,0,C]", "[A,A,B,C,1,0]", "[A,B,B,1,0,C]"})
    six.add(GraphPattern::parse(text, o));
  XorRegistry xors;
  encode_not_covered(enc, six, edges, xors);
  std::set<std::string> models;
  auto res = sat::enumerate_models(solver, edges, 100,
                                   [&](const std::vector<bool>& bits) {
                                     GraphBits g(o);
                                     for (int p = 1; p <= 6; ++p)
                                       g.set(p, bits[p - 1]);
                                     models.insert(g.to_string());
                                   });
  CHECK(res.count == 11);
  std::set<std::string> canonical;
  for (const auto& g : canonical_graphs(o)) canonical.insert(g.to_string());
  CHECK(models == canonical);
}

TEST_CASE("all involution patterns of order 5 form a complete break") {
  Order o(5);
  PatternSet psi = all_patterns(o, PermClass::I);
  CHECK(verify_complete(psi, o));
}

TEST_CASE("reduce keeps the greedy order-4 break intact") {
  GreedyResult res = symbreak_greedy(Order(4));
  PatternSet psi = res.to_pattern_set();
  PatternSet reduced = reduce_break(psi, Order(4));
  CHECK(reduced.size() == psi.size());
}

TEST_CASE("reduce yields an irredundant break (n=4,5)") {
  for (int n : {4, 5}) {
    Order o(n);
    CegarOptions opt;
    opt.reduce = true;
    CegarRun run = layered_cegar(o, opt);
    CHECK(verify_complete(run.psi, o));
    for (std::size_t k = 0; k < run.psi.size(); ++k) {
      std::vector<bool> keep(run.psi.size(), true);
      keep[k] = false;
      CHECK(!verify_complete(run.psi.filtered(keep), o));
    }
  }
}

TEST_CASE("reduce rejects incomplete inputs") {
  Order o(4);
  PatternSet one(o);
  one.add(GraphPattern::parse("[1,0,A,B,C,D]", o));
  CHECK_THROWS_AS(reduce_break(one, o), std::invalid_argument);
}

TEST_CASE("iterations bound the break size through reduce") {
  Order o(5);
  CegarOptions opt;
  opt.reduce = true;
  CegarRun run = layered_cegar(o, opt);
  CHECK(run.total_iterations >=
        static_cast<int>(run.psi.size() + run.reduced_removed));
}

TEST_CASE("layers must follow the chain") {
  CegarOptions opt;
  opt.layers = {PermClass::T, PermClass::Ct};
  CHECK_THROWS_AS(layered_cegar(Order(4), opt), std::invalid_argument);
  opt.layers = {};
  CHECK_THROWS_AS(layered_cegar(Order(4), opt), std::invalid_argument);
}

TEST_CASE("every added pattern covers its counter-example uniquely") {
  // Layer snapshots grow monotonically and stay duplicate-free; the psi
  // accounting inside cegar asserts per-iteration novelty already, so this
  // checks the recorded sizes line up per layer.
  CegarRun run = layered_cegar(Order(5));
  std::size_t acc = 0;
  for (const auto& lr : run.layers) {
    CHECK(lr.patterns_added == lr.iterations);
    acc += lr.patterns_added;
    CHECK(lr.psi_size_after == acc);
    CHECK(lr.psi_snapshot.size() == acc);
  }
}
