#include "patbreak/pattern.hpp"

#include <algorithm>
#include <sstream>

namespace patbreak {

std::string var_name(int id) {
  if (id <= 26) return std::string(1, static_cast<char>('A' + id - 1));
  return "A" + std::to_string(id - 26);
}

namespace {

// Plain union-find over {0 = zero sink, 1 = one sink, 1+p = position p}.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<Cell> cells_from_classes(int m, UnionFind& uf, bool& bot) {
  bot = uf.find(0) == uf.find(1);
  std::vector<Cell> cells;
  if (bot) return cells;
  cells.resize(m);
  int zero_root = uf.find(0), one_root = uf.find(1);
  std::vector<int> var_of_root(m + 2, 0);
  int next_var = 0;
  for (int p = 1; p <= m; ++p) {
    int r = uf.find(1 + p);
    if (r == zero_root) {
      cells[p - 1] = kCellZero;
    } else if (r == one_root) {
      cells[p - 1] = kCellOne;
    } else {
      if (var_of_root[r] == 0) var_of_root[r] = ++next_var;
      cells[p - 1] = make_var(var_of_root[r]);
    }
  }
  return cells;
}

}  // namespace

GraphPattern::GraphPattern(Order order, std::vector<Cell> cells,
                           std::optional<Provenance> prov)
    : order_(order), cells_(std::move(cells)), prov_(std::move(prov)) {
  if (static_cast<int>(cells_.size()) != order_.edge_count())
    throw std::invalid_argument("pattern has wrong number of cells");
  // Renumber variables by first occurrence.
  std::vector<int> renumber(cells_.size() + 1, 0);
  int next_var = 0;
  bool has_constant = false;
  bool has_equality = false;
  for (auto& c : cells_) {
    if (!cell_is_var(c)) {
      has_constant = true;
      continue;
    }
    int v = cell_var(c);
    if (v < 1 || v > static_cast<int>(cells_.size()))
      throw std::invalid_argument("pattern variable id out of range");
    if (renumber[v] == 0)
      renumber[v] = ++next_var;
    else
      has_equality = true;
    c = make_var(renumber[v]);
  }
  var_count_ = next_var;
  if (!has_constant && !has_equality)
    throw std::invalid_argument(
        "degenerate pattern: no constant cell and no repeated variable");
}

std::string GraphPattern::to_string() const {
  if (is_bot()) return "BOT";
  std::ostringstream out;
  out << '[';
  for (int p = 1; p <= size(); ++p) {
    if (p > 1) out << ',';
    Cell c = cell(p);
    if (c == kCellZero)
      out << '0';
    else if (c == kCellOne)
      out << '1';
    else
      out << var_name(cell_var(c));
  }
  out << ']';
  return out.str();
}

GraphPattern GraphPattern::parse(std::string_view text, Order order) {
  size_t k = 0;
  auto skip_ws = [&] {
    while (k < text.size() && (text[k] == ' ' || text[k] == '\t')) ++k;
  };
  skip_ws();
  if (k < text.size() && text.substr(k, 3) == "BOT") return bot(order);
  if (k >= text.size() || text[k] != '[')
    throw std::invalid_argument("pattern must start with '['");
  ++k;
  std::vector<Cell> cells;
  std::vector<std::string> names;  // name -> id by first occurrence
  while (true) {
    skip_ws();
    if (k >= text.size()) throw std::invalid_argument("unterminated pattern");
    if (text[k] == ']') {
      ++k;
      break;
    }
    if (!cells.empty()) {
      if (text[k] != ',') throw std::invalid_argument("expected ',' in pattern");
      ++k;
      skip_ws();
    }
    if (k >= text.size()) throw std::invalid_argument("unterminated pattern");
    char c = text[k];
    if (c == '0' || c == '1') {
      cells.push_back(c == '0' ? kCellZero : kCellOne);
      ++k;
    } else if (c >= 'A' && c <= 'Z') {
      std::string name(1, c);
      ++k;
      while (k < text.size() && text[k] >= '0' && text[k] <= '9') {
        name += text[k];
        ++k;
      }
      auto it = std::find(names.begin(), names.end(), name);
      int id;
      if (it == names.end()) {
        names.push_back(name);
        id = static_cast<int>(names.size());
      } else {
        id = static_cast<int>(it - names.begin()) + 1;
      }
      cells.push_back(make_var(id));
    } else {
      throw std::invalid_argument("bad pattern cell at '" + std::string(1, c) + "'");
    }
  }
  return GraphPattern(order, std::move(cells));
}

std::size_t GraphPattern::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (Cell c : cells_) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

GraphPattern derive_pattern(const Permutation& pi, int i) {
  Order o = pi.order;
  int m = o.edge_count();
  if (i < 1 || i > m) throw std::invalid_argument("pattern index out of range");
  EdgePermutation tau = induced_edge_perm(pi);
  UnionFind uf(m + 2);
  for (int j = 1; j < i; ++j) uf.unite(1 + tau.apply(j), 1 + j);
  uf.unite(1 + tau.apply(i), 0);  // edges(pi(G))[i] = 0
  uf.unite(1 + i, 1);             // edges(G)[i] = 1
  bool bot = false;
  std::vector<Cell> cells = cells_from_classes(m, uf, bot);
  if (bot) return GraphPattern::bot(o);
  return GraphPattern(o, std::move(cells), Provenance{pi, i});
}

bool covers(const GraphPattern& p, const GraphBits& g) {
  if (p.is_bot()) return false;
  if (p.order() != g.order()) throw std::invalid_argument("order mismatch");
  std::vector<signed char> bound(p.var_count() + 1, -1);
  for (int pos = 1; pos <= p.size(); ++pos) {
    bool bit = g.get(pos);
    Cell c = p.cell(pos);
    if (c == kCellZero) {
      if (bit) return false;
    } else if (c == kCellOne) {
      if (!bit) return false;
    } else {
      int v = cell_var(c);
      if (bound[v] == -1)
        bound[v] = bit;
      else if (bound[v] != static_cast<signed char>(bit))
        return false;
    }
  }
  return true;
}

std::uint64_t cover_size(const GraphPattern& p) {
  if (p.is_bot()) return 0;
  if (p.var_count() > 63)
    throw std::invalid_argument("cover size does not fit in 64 bits");
  return std::uint64_t{1} << p.var_count();
}

bool subsumes(const GraphPattern& p1, const GraphPattern& p2) {
  if (p1.order() != p2.order()) throw std::invalid_argument("order mismatch");
  if (p2.is_bot()) return true;  // empty cover
  if (p1.is_bot()) return false;
  // Each p1 variable must map to one consistent p2 cell; p1 constants must
  // match exactly.
  std::vector<int> binding(p1.var_count() + 1, -1);  // -1 unbound, else cell
  for (int pos = 1; pos <= p1.size(); ++pos) {
    Cell c1 = p1.cell(pos), c2 = p2.cell(pos);
    if (!cell_is_var(c1)) {
      if (c1 != c2) return false;
    } else {
      int v = cell_var(c1);
      if (binding[v] == -1)
        binding[v] = c2;
      else if (binding[v] != static_cast<int>(c2))
        return false;
    }
  }
  return true;
}

bool orthogonal(const GraphPattern& p1, const GraphPattern& p2) {
  if (p1.order() != p2.order()) throw std::invalid_argument("order mismatch");
  if (p1.is_bot() || p2.is_bot())
    throw std::invalid_argument("orthogonality is defined on non-BOT patterns");
  int m = p1.size();
  UnionFind uf(m + 2);
  auto add = [&](const GraphPattern& p) {
    std::vector<int> first_pos(p.var_count() + 1, 0);
    for (int pos = 1; pos <= m; ++pos) {
      Cell c = p.cell(pos);
      if (c == kCellZero) {
        uf.unite(1 + pos, 0);
      } else if (c == kCellOne) {
        uf.unite(1 + pos, 1);
      } else {
        int v = cell_var(c);
        if (first_pos[v] == 0)
          first_pos[v] = pos;
        else
          uf.unite(1 + pos, 1 + first_pos[v]);
      }
    }
  };
  add(p1);
  add(p2);
  return uf.find(0) == uf.find(1);
}

}  // namespace patbreak
