#include <doctest.h>

#include <random>
#include <set>

#include "patbreak/encode.hpp"

using namespace patbreak;

namespace {

std::vector<int> edge_vars_for(sat::Encoder& enc, Order o) {
  std::vector<int> vars(o.edge_count());
  for (int& v : vars) v = enc.new_var();
  return vars;
}

// Evaluates a pattern clause under concrete edge bits, resolving xor
// auxiliaries from the bits themselves.
bool clause_true_under(const std::vector<int>& clause, const GraphBits& g,
                       const std::map<int, std::pair<int, int>>& aux_defs) {
  for (int lit : clause) {
    int v = std::abs(lit);
    bool value;
    if (v <= g.size()) {
      value = g.get(v);
    } else {
      auto [a, b] = aux_defs.at(v);
      value = g.get(a) != g.get(b);
    }
    if ((lit > 0) == value) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("to_clause matches the worked example (x5 | ~x3 | x2^x4)") {
  Order o(4);
  sat::Encoder enc;
  auto edges = edge_vars_for(enc, o);
  XorRegistry xors;
  auto c1 = to_clause(GraphPattern::parse("[A,B,1,B,0,C]", o), edges, enc, xors);
  REQUIRE(c1.size() == 3);
  CHECK(c1[0] == -3);  // One at position 3
  CHECK(c1[1] == 5);   // Zero at position 5
  CHECK(c1[2] == 7);   // xor aux for positions {2,4}
  CHECK(xors.size() == 1);

  auto c2 = to_clause(GraphPattern::parse("[1,0,A,B,C,D]", o), edges, enc, xors);
  CHECK(c2 == std::vector<int>{-1, 2});

  auto c3 = to_clause(GraphPattern::parse("[A,A,B,C,1,0]", o), edges, enc, xors);
  REQUIRE(c3.size() == 3);
  CHECK(c3[0] == -5);
  CHECK(c3[1] == 6);
  CHECK(std::abs(c3[2]) > 6);  // fresh aux for {1,2}
  CHECK(xors.size() == 2);

  // the {2,4} auxiliary is shared with later patterns
  auto c4 = to_clause(GraphPattern::parse("[B,A,1,A,0,C]", o), edges, enc, xors);
  CHECK(c4[2] == c1[2]);
  CHECK(xors.size() == 2);
}

TEST_CASE("pattern clause is false exactly on covered graphs") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 4 + static_cast<int>(rng() % 3);
    Order o(n);
    auto members = class_members(o, PermClass::All);
    const Permutation& pi = members[rng() % members.size()];
    int i = 1 + static_cast<int>(rng() % o.edge_count());
    GraphPattern p = derive_pattern(pi, i);
    if (p.is_bot()) continue;
    sat::Encoder enc;
    auto edges = edge_vars_for(enc, o);
    XorRegistry xors;
    std::map<int, std::pair<int, int>> aux_defs;
    auto clause = to_clause(p, edges, enc, xors);
    // recover aux definitions by re-deriving from the pattern
    std::vector<std::vector<int>> var_positions(p.var_count() + 1);
    for (int pos = 1; pos <= p.size(); ++pos)
      if (cell_is_var(p.cell(pos))) var_positions[cell_var(p.cell(pos))].push_back(pos);
    std::size_t nxt = 0;
    for (const auto& positions : var_positions)
      for (std::size_t k = 0; k + 1 < positions.size(); ++k) {
        while (nxt < clause.size() && std::abs(clause[nxt]) <= o.edge_count()) ++nxt;
        REQUIRE(nxt < clause.size());
        aux_defs[std::abs(clause[nxt])] = {positions[k], positions[k + 1]};
        ++nxt;
      }
    for (int probe = 0; probe < 32; ++probe) {
      GraphBits g = GraphBits::from_word(
          o, rng() & ((std::uint64_t{1} << o.edge_count()) - 1));
      CHECK(clause_true_under(clause, g, aux_defs) == !covers(p, g));
    }
  }
}

TEST_CASE("permutation encodings enumerate exactly the class members") {
  struct Case {
    int n;
    PermClass cls;
    std::size_t expected;
  };
  const Case cases[] = {
      {4, PermClass::I, 9},  {4, PermClass::Ct, 3},  {5, PermClass::Di, 15},
      {4, PermClass::T, 6},  {4, PermClass::CiT, 7}, {5, PermClass::CiT, 13},
      {4, PermClass::All, 23},
  };
  for (const Case& c : cases) {
    Order o(c.n);
    sat::Solver solver;
    sat::Encoder enc;
    enc.live = &solver;
    PermEncoding pe = encode_permutation(enc, o, c.cls);
    std::set<std::vector<int>> images;
    std::vector<int> proj;
    for (int u = 1; u <= o.n; ++u)
      for (int v = 1; v <= o.n; ++v) proj.push_back(pe.P[u][v]);
    auto res = sat::enumerate_models(solver, proj, 100000,
                                     [&](const std::vector<bool>&) {
                                       images.insert(
                                           decode_permutation(solver, pe).image);
                                     });
    CHECK(res.count >= images.size());
    CHECK(images.size() == c.expected);
    // every decoded permutation belongs to the class
    for (const auto& img : images) CHECK(class_test(Permutation(o, img), c.cls));
  }
}

TEST_CASE("image encoding reproduces apply_perm on fixed permutations") {
  Order o(4);
  for (auto image : {std::vector<int>{1, 2, 4, 3}, std::vector<int>{1, 2, 3, 4}}) {
    Permutation pi(o, image);
    if (pi.is_identity()) continue;  // identity excluded by the encoding
    sat::Solver solver;
    sat::Encoder enc;
    enc.live = &solver;
    auto edges = edge_vars_for(enc, o);
    PermEncoding pe = encode_permutation(enc, o, PermClass::All);
    encode_image(enc, pe, edges);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 16; ++trial) {
      std::uint64_t w = rng() & 63;
      GraphBits g = GraphBits::from_word(o, w);
      std::vector<int> assumptions;
      for (int u = 1; u <= o.n; ++u)
        for (int v = 1; v <= o.n; ++v)
          assumptions.push_back(pi.apply(u) == v ? pe.P[u][v] : -pe.P[u][v]);
      for (int p = 1; p <= o.edge_count(); ++p)
        assumptions.push_back(g.get(p) ? edges[p - 1] : -edges[p - 1]);
      REQUIRE(solver.solve(assumptions) == sat::Result::Sat);
      GraphBits expected = apply_perm(pi, g);
      for (int p = 1; p <= o.edge_count(); ++p)
        CHECK(solver.model_value(pe.image_vars[p - 1]) == expected.get(p));
    }
  }
}

TEST_CASE("lex_less encoding on two-bit vectors") {
  sat::Solver solver;
  sat::Encoder enc;
  enc.live = &solver;
  int f1 = enc.new_var(), f2 = enc.new_var();
  int e1 = enc.new_var(), e2 = enc.new_var();
  encode_lex_less(enc, std::vector<int>{f1, f2}, std::vector<int>{e1, e2});
  CHECK(solver.solve({-f1, f2, e1, -e2}) == sat::Result::Sat);  // 01 < 10
  CHECK(solver.solve({f1, -f2, -e1, e2}) == sat::Result::Unsat);
  CHECK(solver.solve({f1, f2, e1, e2}) == sat::Result::Unsat);  // equal
  CHECK(solver.solve({-f1, -f2, -e1, e2}) == sat::Result::Sat);
}
