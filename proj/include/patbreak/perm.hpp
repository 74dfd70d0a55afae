#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "patbreak/graph.hpp"

namespace patbreak {

// A vertex permutation in one-line notation: image[i-1] = pi(i).
struct Permutation {
  Order order;
  std::vector<int> image;

  Permutation() = default;
  Permutation(Order o, std::vector<int> img);

  static Permutation identity(Order o);
  // Builds the involution that swaps each listed pair and fixes the rest.
  static Permutation from_swaps(Order o, const std::vector<std::pair<int, int>>& swaps);
  // Parses one-line notation "[2,1,3,4]".
  static Permutation parse(std::string_view text, Order o);

  int apply(int v) const { return image[v - 1]; }
  bool is_identity() const;
  bool is_involution() const;
  Permutation inverse() const;
  // Pairs {a,b}, a<b, with pi(a)=b and pi(b)=a. Meaningful for involutions;
  // for general permutations only 2-cycles are reported.
  std::vector<std::pair<int, int>> swapped_pairs() const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

// Action of a vertex permutation on edge positions: for every graph G,
// edges(pi(G))[p] = edges(G)[map[p-1]].
struct EdgePermutation {
  Order order;
  std::vector<int> map;

  int apply(int pos) const { return map[pos - 1]; }
  bool is_identity() const;
};

EdgePermutation induced_edge_perm(const Permutation& pi);
EdgePermutation compose(const EdgePermutation& a, const EdgePermutation& b);

GraphBits apply_perm(const Permutation& pi, const GraphBits& g);
GraphBits apply_edge_perm(const EdgePermutation& tau, const GraphBits& g);

// Permutation classes forming the chain ct <= t <= ci+t <= di <= i <= all.
enum class PermClass { Ct, T, CiT, Di, I, All };

inline constexpr PermClass kClassChain[6] = {PermClass::Ct, PermClass::T,
                                             PermClass::CiT, PermClass::Di,
                                             PermClass::I, PermClass::All};

std::string class_name(PermClass c);
PermClass parse_class(std::string_view name);

// Membership test. The identity belongs to no class.
bool class_test(const Permutation& pi, PermClass c);

// All members of the class, identity excluded. Deterministic order.
std::vector<Permutation> class_members(Order o, PermClass c);

// Count of class members without materializing them (identity excluded).
std::uint64_t class_member_count(Order o, PermClass c);

}  // namespace patbreak
