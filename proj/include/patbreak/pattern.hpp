#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patbreak/graph.hpp"
#include "patbreak/perm.hpp"

namespace patbreak {

// One cell of a graph pattern: the constants 0 and 1, or a variable.
// Variables are numbered densely from 1 in order of first occurrence.
using Cell = std::uint8_t;

inline constexpr Cell kCellZero = 0;
inline constexpr Cell kCellOne = 1;

inline bool cell_is_var(Cell c) { return c >= 2; }
inline int cell_var(Cell c) { return c - 1; }
inline Cell make_var(int id) { return static_cast<Cell>(id + 1); }

// Name of a pattern variable: A..Z, then A1, A2, ...
std::string var_name(int id);

struct Provenance {
  Permutation perm;
  int index = 0;  // the position i of pat_i(perm)
};

// A partially instantiated edge vector all of whose instances are
// non-canonical. The empty pattern BOT has no instances.
class GraphPattern {
 public:
  GraphPattern() = default;

  // Normalizes variable numbering. Throws if the cells are degenerate
  // (no constant and no repeated variable): such a vector would cover
  // canonical graphs.
  GraphPattern(Order order, std::vector<Cell> cells,
               std::optional<Provenance> prov = std::nullopt);

  static GraphPattern bot(Order order) { return GraphPattern(order); }

  bool is_bot() const { return cells_.empty(); }
  Order order() const { return order_; }
  int size() const { return static_cast<int>(cells_.size()); }
  Cell cell(int pos) const { return cells_[pos - 1]; }
  std::span<const Cell> cells() const { return cells_; }
  int var_count() const { return var_count_; }

  const std::optional<Provenance>& provenance() const { return prov_; }
  void set_provenance(std::optional<Provenance> p) { prov_ = std::move(p); }

  // "[1,0,A,B,C,D]"
  std::string to_string() const;
  static GraphPattern parse(std::string_view text, Order order);

  // Structural equality on normal forms; provenance is ignored.
  friend bool operator==(const GraphPattern& a, const GraphPattern& b) {
    return a.order_ == b.order_ && a.cells_ == b.cells_;
  }

  // Total order on normal forms: Zero < One < Var(1) < Var(2) < ...,
  // cell vectors compared left to right. BOT sorts first.
  friend bool operator<(const GraphPattern& a, const GraphPattern& b) {
    return a.cells_ < b.cells_;
  }

  std::size_t hash() const;

 private:
  explicit GraphPattern(Order order) : order_(order) {}

  Order order_;
  std::vector<Cell> cells_;
  int var_count_ = 0;
  std::optional<Provenance> prov_;
};

// pat_i(pi): the most general pattern covering exactly the graphs G with
// pi(G) strictly smaller at position i. BOT when the constraints clash.
GraphPattern derive_pattern(const Permutation& pi, int i);

// True iff g is an instance of p. BOT covers nothing.
bool covers(const GraphPattern& p, const GraphBits& g);

// Number of instances: 2^k for k variables, 0 for BOT.
std::uint64_t cover_size(const GraphPattern& p);

// True iff some substitution of p1's variables yields exactly p2,
// i.e. cover(p2) is contained in cover(p1).
bool subsumes(const GraphPattern& p1, const GraphPattern& p2);

// True iff the two cell vectors do not unify (disjoint covers).
bool orthogonal(const GraphPattern& p1, const GraphPattern& p2);

}  // namespace patbreak
