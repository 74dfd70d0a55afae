#pragma once

#include <map>
#include <span>
#include <vector>

#include "patbreak/pattern.hpp"
#include "patbreak/pattern_io.hpp"
#include "patbreak/sat/cnf.hpp"

namespace patbreak {

// Cache of xor auxiliaries: x_ab <-> x_a (+) x_b, keyed by the unordered
// variable pair so the same auxiliary serves every pattern clause.
class XorRegistry {
 public:
  // Returns the auxiliary for vars {a,b}, defining it on first use.
  int aux_var(sat::Encoder& enc, int a, int b);
  std::size_t size() const { return aux_.size(); }

 private:
  std::map<std::pair<int, int>, int> aux_;
};

// The single clause stating "the graph on edge_vars is not covered by p":
// a positive literal per Zero cell, a negative literal per One cell, and an
// xor literal per variable-equality pair (chained over ascending positions).
std::vector<int> to_clause(const GraphPattern& p, std::span<const int> edge_vars,
                           sat::Encoder& enc, XorRegistry& xors);

// Adds to_clause for every pattern in the set.
void encode_not_covered(sat::Encoder& enc, const PatternSet& set,
                        std::span<const int> edge_vars, XorRegistry& xors);

// SAT encoding of a vertex permutation of the given class. P[u][v] means
// pi(u) = v (1-based). The identity is excluded in every class.
struct PermEncoding {
  Order order;
  PermClass cls = PermClass::All;
  std::vector<std::vector<int>> P;  // [n+1][n+1], entry 0 unused
  std::vector<int> image_vars;      // f_p per edge position, set by encode_image
  int ci_selector = 0;              // ci+t only: true = consecutive involution
};

PermEncoding encode_permutation(sat::Encoder& enc, Order order, PermClass cls);

// Defines image_vars so that in every model f equals edges(pi(G)) for the
// permutation and graph the model assigns.
void encode_image(sat::Encoder& enc, PermEncoding& pe, std::span<const int> edge_vars);

// Constrains f <_lex e strictly.
void encode_lex_less(sat::Encoder& enc, std::span<const int> f, std::span<const int> e);

// Pairwise exactly-one.
void encode_exactly_one(sat::Encoder& enc, const std::vector<int>& lits);

// Reads the permutation out of a model.
Permutation decode_permutation(const sat::Solver& s, const PermEncoding& pe);

}  // namespace patbreak
