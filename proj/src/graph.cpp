#include "patbreak/graph.hpp"

#include <bit>
#include <sstream>

namespace patbreak {

int edge_index(int i, int j, Order order) {
  if (i < 1 || i >= j || j > order.n)
    throw std::invalid_argument("invalid vertex pair {" + std::to_string(i) +
                                "," + std::to_string(j) + "} for order " +
                                std::to_string(order.n));
  return (j - 1) * (j - 2) / 2 + i;
}

std::pair<int, int> edge_pair(int pos, Order order) {
  if (pos < 1 || pos > order.edge_count())
    throw std::invalid_argument("edge position out of range");
  int j = 2;
  while ((j - 1) * (j - 2) / 2 + (j - 1) < pos) ++j;
  int i = pos - (j - 1) * (j - 2) / 2;
  return {i, j};
}

GraphBits GraphBits::from_word(Order order, std::uint64_t word) {
  if (order.edge_count() > 64)
    throw std::invalid_argument("from_word requires at most 64 edges");
  GraphBits g(order);
  if (order.edge_count() < 64) word &= (std::uint64_t{1} << order.edge_count()) - 1;
  g.words_[0] = word;
  return g;
}

std::uint64_t GraphBits::word() const {
  if (size() > 64) throw std::logic_error("graph does not fit in one word");
  return words_[0];
}

GraphBits GraphBits::parse(std::string_view text, Order order) {
  GraphBits g(order);
  size_t k = 0;
  int pos = 0;
  auto skip_ws = [&] {
    while (k < text.size() && (text[k] == ' ' || text[k] == '\t')) ++k;
  };
  skip_ws();
  if (k >= text.size() || text[k] != '[')
    throw std::invalid_argument("graph literal must start with '['");
  ++k;
  while (true) {
    skip_ws();
    if (k >= text.size()) throw std::invalid_argument("unterminated graph literal");
    if (text[k] == ']') {
      ++k;
      break;
    }
    if (pos > 0) {
      if (text[k] != ',') throw std::invalid_argument("expected ',' in graph literal");
      ++k;
      skip_ws();
    }
    if (k >= text.size() || (text[k] != '0' && text[k] != '1'))
      throw std::invalid_argument("graph bits must be 0 or 1");
    ++pos;
    if (pos > order.edge_count())
      throw std::invalid_argument("too many bits in graph literal");
    g.set(pos, text[k] == '1');
    ++k;
  }
  if (pos != order.edge_count())
    throw std::invalid_argument("graph literal has " + std::to_string(pos) +
                                " bits, expected " +
                                std::to_string(order.edge_count()));
  return g;
}

std::string GraphBits::to_string() const {
  std::ostringstream out;
  out << '[';
  for (int p = 1; p <= size(); ++p) {
    if (p > 1) out << ',';
    out << (get(p) ? '1' : '0');
  }
  out << ']';
  return out.str();
}

LexResult lex_strict_at(const GraphBits& a, const GraphBits& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("lex comparison requires equal orders");
  int m = a.size();
  for (int w = 0; w * 64 < m; ++w) {
    std::uint64_t x = a.word_at(w), y = b.word_at(w);
    if (x != y) {
      int bit = std::countr_zero(x ^ y);
      int pos = w * 64 + bit + 1;
      bool a_bit = (x >> bit) & 1;
      return {a_bit ? LexRel::Greater : LexRel::LessAt, pos};
    }
  }
  return {LexRel::Equal, 0};
}

}  // namespace patbreak
