#include "patbreak/canon.hpp"

#include <algorithm>
#include <numeric>

namespace patbreak {

namespace {

// pi(g) < g test with early exit at the first differing position.
bool reduces(std::uint64_t g, const std::vector<int>& map) {
  for (size_t p = 0; p < map.size(); ++p) {
    unsigned a = (g >> map[p]) & 1u;
    unsigned b = (g >> p) & 1u;
    if (a != b) return a < b;
  }
  return false;
}

}  // namespace

bool minimal_under(std::uint64_t g, const std::vector<std::vector<int>>& maps) {
  for (const auto& map : maps)
    if (reduces(g, map)) return false;
  return true;
}

std::vector<std::vector<int>> edge_maps(Order o, PermClass c) {
  std::vector<std::vector<int>> maps;
  if (c == PermClass::All) {
    // Avoid materializing S_n as Permutation objects.
    if (o.n > 10) throw std::invalid_argument("order too large for S_n sweep");
    std::vector<int> image(o.n);
    std::iota(image.begin(), image.end(), 1);
    while (std::next_permutation(image.begin(), image.end())) {
      EdgePermutation tau = induced_edge_perm(Permutation(o, image));
      std::vector<int> map(tau.map.size());
      for (size_t p = 0; p < map.size(); ++p) map[p] = tau.map[p] - 1;
      maps.push_back(std::move(map));
    }
    return maps;
  }
  for (const auto& pi : class_members(o, c)) {
    EdgePermutation tau = induced_edge_perm(pi);
    std::vector<int> map(tau.map.size());
    for (size_t p = 0; p < map.size(); ++p) map[p] = tau.map[p] - 1;
    maps.push_back(std::move(map));
  }
  return maps;
}

bool is_canonical(const GraphBits& g) {
  Order o = g.order();
  if (o.n > 10)
    throw std::invalid_argument("is_canonical refuses n > 10 (" +
                                std::to_string(o.n) + " vertices)");
  if (o.n <= 1) return true;
  std::vector<int> image(o.n);
  std::iota(image.begin(), image.end(), 1);
  while (std::next_permutation(image.begin(), image.end())) {
    GraphBits h = apply_perm(Permutation(o, image), g);
    if (lex_strict_at(h, g).rel == LexRel::LessAt) return false;
  }
  return true;
}

std::vector<GraphBits> canonical_graphs(Order o) {
  if (o.edge_count() > 28)
    throw std::invalid_argument("canonical_graphs requires at most 28 edges");
  auto maps = edge_maps(o, PermClass::All);
  std::vector<GraphBits> out;
  std::uint64_t total = std::uint64_t{1} << o.edge_count();
  for (std::uint64_t g = 0; g < total; ++g)
    if (minimal_under(g, maps)) out.push_back(GraphBits::from_word(o, g));
  std::sort(out.begin(), out.end(), [](const GraphBits& a, const GraphBits& b) {
    return lex_strict_at(a, b).rel == LexRel::LessAt;
  });
  return out;
}

}  // namespace patbreak
