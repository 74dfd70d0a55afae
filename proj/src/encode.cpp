#include "patbreak/encode.hpp"

#include <algorithm>

namespace patbreak {

int XorRegistry::aux_var(sat::Encoder& enc, int a, int b) {
  auto key = std::minmax(a, b);
  auto it = aux_.find(key);
  if (it != aux_.end()) return it->second;
  int x = enc.new_var();
  enc.add_clause({-x, key.first, key.second});
  enc.add_clause({-x, -key.first, -key.second});
  enc.add_clause({x, -key.first, key.second});
  enc.add_clause({x, key.first, -key.second});
  aux_.emplace(key, x);
  return x;
}

std::vector<int> to_clause(const GraphPattern& p, std::span<const int> edge_vars,
                           sat::Encoder& enc, XorRegistry& xors) {
  if (p.is_bot()) throw std::invalid_argument("BOT has no clause");
  if (static_cast<int>(edge_vars.size()) != p.size())
    throw std::invalid_argument("edge variable map has wrong length");
  std::vector<int> clause;
  std::vector<std::vector<int>> var_positions(p.var_count() + 1);
  for (int pos = 1; pos <= p.size(); ++pos) {
    Cell c = p.cell(pos);
    if (c == kCellZero)
      clause.push_back(edge_vars[pos - 1]);
    else if (c == kCellOne)
      clause.push_back(-edge_vars[pos - 1]);
    else
      var_positions[cell_var(c)].push_back(pos);
  }
  for (const auto& positions : var_positions)
    for (std::size_t k = 0; k + 1 < positions.size(); ++k)
      clause.push_back(xors.aux_var(enc, edge_vars[positions[k] - 1],
                                    edge_vars[positions[k + 1] - 1]));
  if (clause.empty())
    throw std::invalid_argument("degenerate pattern has no clause");
  return clause;
}

void encode_not_covered(sat::Encoder& enc, const PatternSet& set,
                        std::span<const int> edge_vars, XorRegistry& xors) {
  for (const auto& p : set.patterns())
    enc.add_clause(to_clause(p, edge_vars, enc, xors));
}

void encode_exactly_one(sat::Encoder& enc, const std::vector<int>& lits) {
  enc.add_clause(lits);
  for (std::size_t a = 0; a < lits.size(); ++a)
    for (std::size_t b = a + 1; b < lits.size(); ++b)
      enc.add_clause({-lits[a], -lits[b]});
}

namespace {

// Guarded clause helper: prepends the guard literal when nonzero.
void add_guarded(sat::Encoder& enc, int guard, std::vector<int> clause) {
  if (guard != 0) clause.insert(clause.begin(), guard);
  enc.add_clause(std::move(clause));
}

// Involution structure: pi(u)=v implies pi(v)=u.
void encode_symmetric(sat::Encoder& enc, const PermEncoding& pe, int guard) {
  int n = pe.order.n;
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v) add_guarded(enc, guard, {-pe.P[u][v], pe.P[v][u]});
}

// At most one swapped pair: for set-disjoint upper pairs {a,b}, {c,d},
// forbid both swaps. Pairs sharing a vertex are already excluded by the
// permutation-matrix constraints.
void encode_single_swap(sat::Encoder& enc, const PermEncoding& pe, int guard) {
  int n = pe.order.n;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = a + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) {
          if (c == b || d == b) continue;
          add_guarded(enc, guard, {-pe.P[a][b], -pe.P[c][d]});
        }
}

// Only consecutive moves: pi(u)=v is impossible for |u-v| > 1.
void encode_band(sat::Encoder& enc, const PermEncoding& pe, int guard) {
  int n = pe.order.n;
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (std::abs(u - v) > 1) add_guarded(enc, guard, {-pe.P[u][v]});
}

// Disjoint involutions: two swaps whose intervals overlap are forbidden.
void encode_interval_disjoint(sat::Encoder& enc, const PermEncoding& pe, int guard) {
  int n = pe.order.n;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = a + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) {
          if (c == b || d == b) continue;
          bool disjoint = b < c || d < a;
          if (!disjoint) add_guarded(enc, guard, {-pe.P[a][b], -pe.P[c][d]});
        }
}

}  // namespace

PermEncoding encode_permutation(sat::Encoder& enc, Order order, PermClass cls) {
  int n = order.n;
  PermEncoding pe;
  pe.order = order;
  pe.cls = cls;
  pe.P.assign(n + 1, std::vector<int>(n + 1, 0));
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) pe.P[u][v] = enc.new_var();

  std::vector<int> row(n), col(n);
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) row[v - 1] = pe.P[u][v];
    encode_exactly_one(enc, row);
  }
  for (int v = 1; v <= n; ++v) {
    for (int u = 1; u <= n; ++u) col[u - 1] = pe.P[u][v];
    encode_exactly_one(enc, col);
  }
  std::vector<int> not_identity;
  for (int u = 1; u <= n; ++u) not_identity.push_back(-pe.P[u][u]);
  enc.add_clause(not_identity);

  switch (cls) {
    case PermClass::All:
      break;
    case PermClass::I:
      encode_symmetric(enc, pe, 0);
      break;
    case PermClass::Di:
      encode_symmetric(enc, pe, 0);
      encode_interval_disjoint(enc, pe, 0);
      break;
    case PermClass::CiT: {
      encode_symmetric(enc, pe, 0);
      pe.ci_selector = enc.new_var();
      encode_band(enc, pe, -pe.ci_selector);     // selector true -> ci
      encode_single_swap(enc, pe, pe.ci_selector);  // selector false -> t
      break;
    }
    case PermClass::T:
      encode_symmetric(enc, pe, 0);
      encode_single_swap(enc, pe, 0);
      break;
    case PermClass::Ct:
      encode_symmetric(enc, pe, 0);
      encode_single_swap(enc, pe, 0);
      encode_band(enc, pe, 0);
      break;
  }
  return pe;
}

void encode_image(sat::Encoder& enc, PermEncoding& pe, std::span<const int> edge_vars) {
  Order o = pe.order;
  int m = o.edge_count();
  if (static_cast<int>(edge_vars.size()) != m)
    throw std::invalid_argument("edge variable map has wrong length");
  pe.image_vars.resize(m);
  for (int q = 1; q <= m; ++q) pe.image_vars[q - 1] = enc.new_var();

  // f_pos(i,j) equals e_pos(pi(i),pi(j)). The permutation matrix makes
  // exactly one image pair match per position, so these implications pin f
  // completely.
  for (int i = 1; i <= o.n; ++i)
    for (int j = i + 1; j <= o.n; ++j) {
      int f = pe.image_vars[edge_index(i, j, o) - 1];
      for (int a = 1; a <= o.n; ++a)
        for (int b = a + 1; b <= o.n; ++b) {
          int e = edge_vars[edge_index(a, b, o) - 1];
          enc.add_clause({-pe.P[i][a], -pe.P[j][b], -e, f});
          enc.add_clause({-pe.P[i][a], -pe.P[j][b], e, -f});
          enc.add_clause({-pe.P[i][b], -pe.P[j][a], -e, f});
          enc.add_clause({-pe.P[i][b], -pe.P[j][a], e, -f});
        }
    }
}

void encode_lex_less(sat::Encoder& enc, std::span<const int> f, std::span<const int> e) {
  if (f.size() != e.size()) throw std::invalid_argument("length mismatch");
  int m = static_cast<int>(f.size());
  // eq[p] asserts the prefixes agree through position p+1 (0-based slot p).
  std::vector<int> eq(m, 0);
  for (int p = 0; p + 1 < m; ++p) {
    eq[p] = enc.new_var();
    enc.add_clause({-eq[p], -f[p], e[p]});
    enc.add_clause({-eq[p], f[p], -e[p]});
    if (p > 0) enc.add_clause({-eq[p], eq[p - 1]});
  }
  std::vector<int> strict;
  for (int p = 0; p < m; ++p) {
    int l = enc.new_var();
    enc.add_clause({-l, -f[p]});
    enc.add_clause({-l, e[p]});
    if (p > 0) enc.add_clause({-l, eq[p - 1]});
    strict.push_back(l);
  }
  enc.add_clause(strict);
}

Permutation decode_permutation(const sat::Solver& s, const PermEncoding& pe) {
  int n = pe.order.n;
  std::vector<int> image(n, 0);
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v)
      if (s.model_value(pe.P[u][v])) {
        if (image[u - 1] != 0)
          throw std::logic_error("model has two images for one vertex");
        image[u - 1] = v;
      }
    if (image[u - 1] == 0)
      throw std::logic_error("model leaves a vertex without image");
  }
  return Permutation(pe.order, std::move(image));
}

}  // namespace patbreak
