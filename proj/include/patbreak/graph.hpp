#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace patbreak {

// Number of vertices of a simple graph. Edge positions are 1-based and run
// column-major over the upper triangle of the adjacency matrix.
struct Order {
  int n = 0;

  Order() = default;
  explicit Order(int vertices) : n(vertices) {
    if (n < 1 || n > 16)
      throw std::invalid_argument("order must be in 1..16, got " +
                                  std::to_string(vertices));
  }

  int edge_count() const { return n * (n - 1) / 2; }

  friend bool operator==(const Order&, const Order&) = default;
};

// Position of the unordered pair {i,j}, i<j, in the edge vector.
int edge_index(int i, int j, Order order);

// Inverse of edge_index.
std::pair<int, int> edge_pair(int pos, Order order);

// A graph as the bit vector of its edge values. Bit p-1 of the packed words
// holds edge position p.
class GraphBits {
 public:
  GraphBits() = default;
  explicit GraphBits(Order order) : order_(order) {}

  // Builds from a packed word, bit k = edge position k+1. Requires m <= 64.
  static GraphBits from_word(Order order, std::uint64_t word);

  // Parses the literal syntax "[b1,b2,...,bm]".
  static GraphBits parse(std::string_view text, Order order);

  Order order() const { return order_; }
  int size() const { return order_.edge_count(); }

  bool get(int pos) const {
    check_pos(pos);
    return (words_[(pos - 1) >> 6] >> ((pos - 1) & 63)) & 1u;
  }
  void set(int pos, bool value) {
    check_pos(pos);
    std::uint64_t mask = std::uint64_t{1} << ((pos - 1) & 63);
    if (value)
      words_[(pos - 1) >> 6] |= mask;
    else
      words_[(pos - 1) >> 6] &= ~mask;
  }

  // Packed form for m <= 64.
  std::uint64_t word() const;

  std::uint64_t word_at(int w) const { return words_[w]; }

  std::string to_string() const;

  friend bool operator==(const GraphBits&, const GraphBits&) = default;

 private:
  void check_pos(int pos) const {
    if (pos < 1 || pos > size()) throw std::out_of_range("edge position");
  }

  Order order_;
  std::array<std::uint64_t, 2> words_{0, 0};
};

enum class LexRel { LessAt, Equal, Greater };

struct LexResult {
  LexRel rel = LexRel::Equal;
  int pos = 0;  // first differing position when rel != Equal
};

// Compares a against b in the fixed edge order. LessAt means a < b with the
// first difference at .pos (a has 0 there, b has 1).
LexResult lex_strict_at(const GraphBits& a, const GraphBits& b);

}  // namespace patbreak
