#pragma once

#include <vector>

#include "patbreak/graph.hpp"
#include "patbreak/perm.hpp"

namespace patbreak {

// Brute-force lex-leader test: true iff g <= pi(g) for every vertex
// permutation. Refuses n > 10.
bool is_canonical(const GraphBits& g);

// All canonical graphs of the given order in lex order. Requires m <= 28.
std::vector<GraphBits> canonical_graphs(Order o);

// Edge maps of all non-identity permutations, 0-based positions, suitable
// for packed-word sweeps.
std::vector<std::vector<int>> edge_maps(Order o, PermClass c);

// True iff no map in `maps` strictly reduces the packed graph g.
bool minimal_under(std::uint64_t g, const std::vector<std::vector<int>>& maps);

}  // namespace patbreak
