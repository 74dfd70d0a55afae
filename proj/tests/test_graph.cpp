#include <doctest.h>

#include "patbreak/canon.hpp"
#include "patbreak/graph.hpp"
#include "patbreak/perm.hpp"

using namespace patbreak;

namespace {

const char* kCanonical4[] = {
    "[0,0,0,0,0,0]", "[0,0,0,0,0,1]", "[0,0,0,0,1,1]", "[0,0,0,1,1,1]",
    "[0,0,1,0,1,1]", "[0,0,1,1,0,0]", "[0,0,1,1,0,1]", "[0,0,1,1,1,1]",
    "[0,1,1,1,1,0]", "[0,1,1,1,1,1]", "[1,1,1,1,1,1]"};

}  // namespace

TEST_CASE("edge_index maps the upper triangle column-major") {
  Order n4(4), n5(5);
  CHECK(edge_index(1, 2, n4) == 1);
  CHECK(edge_index(3, 4, n4) == 6);
  CHECK(edge_index(2, 5, n5) == 8);
  CHECK(edge_index(1, 3, n4) == 2);
  CHECK(edge_index(2, 3, n4) == 3);
  CHECK_THROWS_AS(edge_index(3, 3, n4), std::invalid_argument);
  CHECK_THROWS_AS(edge_index(2, 1, n4), std::invalid_argument);
  CHECK_THROWS_AS(edge_index(1, 5, n4), std::invalid_argument);
}

TEST_CASE("edge_pair inverts edge_index") {
  for (int n = 2; n <= 8; ++n) {
    Order o(n);
    for (int p = 1; p <= o.edge_count(); ++p) {
      auto [i, j] = edge_pair(p, o);
      CHECK(edge_index(i, j, o) == p);
    }
  }
}

TEST_CASE("graph literals round-trip") {
  Order o(4);
  GraphBits g = GraphBits::parse("[0,0,1,0,1,1]", o);
  CHECK(g.get(3));
  CHECK(!g.get(4));
  CHECK(g.to_string() == "[0,0,1,0,1,1]");
  CHECK(GraphBits::parse(" [ 0, 0 ,1,0,1,1 ] ", o) == g);
  CHECK_THROWS_AS(GraphBits::parse("[0,0,1]", o), std::invalid_argument);
  CHECK_THROWS_AS(GraphBits::parse("[0,0,1,0,1,2]", o), std::invalid_argument);
}

TEST_CASE("lex_strict_at finds the first strict position") {
  Order o(4);
  GraphBits a = GraphBits::parse("[0,1,0,0,0,0]", o);
  GraphBits b = GraphBits::parse("[1,0,0,0,0,0]", o);
  auto r = lex_strict_at(a, b);
  CHECK(r.rel == LexRel::LessAt);
  CHECK(r.pos == 1);
  CHECK(lex_strict_at(a, a).rel == LexRel::Equal);
  auto g = lex_strict_at(GraphBits::parse("[0,0,1,1,0,1]", o),
                         GraphBits::parse("[0,0,1,0,1,1]", o));
  CHECK(g.rel == LexRel::Greater);
  CHECK(g.pos == 4);
}

TEST_CASE("apply_perm matches the worked order-4 example") {
  Order o(4);
  Permutation pi(o, {1, 2, 4, 3});
  // edges(pi(G)) = <x1,x4,x5,x2,x3,x6>
  GraphBits g = GraphBits::parse("[0,0,0,1,1,1]", o);
  CHECK(apply_perm(pi, g).to_string() == "[0,1,1,0,0,1]");
  CHECK(apply_perm(Permutation::identity(o), g) == g);
  // involutions undo themselves
  CHECK(apply_perm(pi, apply_perm(pi, g)) == g);
}

TEST_CASE("order-4 canonical graphs are exactly the eleven of the ground truth") {
  Order o(4);
  auto canon = canonical_graphs(o);
  REQUIRE(canon.size() == 11);
  for (std::size_t k = 0; k < canon.size(); ++k)
    CHECK(canon[k].to_string() == kCanonical4[k]);
  CHECK(is_canonical(GraphBits::parse("[0,0,0,0,0,0]", o)));
  CHECK(is_canonical(GraphBits::parse("[0,0,1,0,1,1]", o)));
  CHECK(!is_canonical(GraphBits::parse("[1,0,1,1,0,1]", o)));
}

TEST_CASE("canonical counts at small orders") {
  CHECK(canonical_graphs(Order(3)).size() == 4);
  CHECK(canonical_graphs(Order(5)).size() == 34);
}

TEST_CASE("canonicity is inherited by vertex prefixes") {
  // If G is canonical then so is the induced subgraph on {1..k}.
  for (int n = 4; n <= 6; ++n) {
    Order o(n);
    Order sub(n - 1);
    for (const GraphBits& g : canonical_graphs(o)) {
      GraphBits h(sub);
      for (int p = 1; p <= sub.edge_count(); ++p) h.set(p, g.get(p));
      CHECK(is_canonical(h));
    }
  }
}

TEST_CASE("is_canonical refuses very large orders") {
  CHECK_THROWS_AS(is_canonical(GraphBits(Order(11))), std::invalid_argument);
}
