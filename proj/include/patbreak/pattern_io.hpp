#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "patbreak/pattern.hpp"

namespace patbreak {

struct PatternMeta {
  std::optional<PermClass> cls;    // smallest class generating the pattern
  std::optional<PermClass> layer;  // layer of the run that produced it
  std::optional<std::uint64_t> delta;
};

// An ordered, duplicate-free collection of patterns (a symmetry break Psi).
class PatternSet {
 public:
  PatternSet() = default;
  explicit PatternSet(Order order) : order_(order) {}

  Order order() const { return order_; }
  std::size_t size() const { return patterns_.size(); }
  bool empty() const { return patterns_.empty(); }

  const GraphPattern& pattern(std::size_t k) const { return patterns_[k]; }
  const PatternMeta& meta(std::size_t k) const { return meta_[k]; }
  PatternMeta& meta(std::size_t k) { return meta_[k]; }
  const std::vector<GraphPattern>& patterns() const { return patterns_; }

  bool contains(const GraphPattern& p) const;
  // Returns false (and keeps the set unchanged) on a duplicate normal form.
  bool add(GraphPattern p, PatternMeta m = {});

  // Subset in insertion order with positions `keep`.
  PatternSet filtered(const std::vector<bool>& keep) const;

 private:
  Order order_;
  std::vector<GraphPattern> patterns_;
  std::vector<PatternMeta> meta_;
  std::unordered_multimap<std::size_t, std::size_t> index_;  // hash -> slot
};

// Text format, one pattern per line:
//   # order: 4
//   # class: all
//   [1,0,A,B,C,D]  # pat_1([1,3,2,4]) class=ct layer=ct delta=16
std::string write_pattern_file(const PatternSet& set,
                               const std::string& class_header = "");
PatternSet parse_pattern_file(std::istream& in);
PatternSet parse_pattern_file(const std::string& text);
PatternSet load_pattern_file(const std::string& path);
void save_pattern_file(const PatternSet& set, const std::string& path,
                       const std::string& class_header = "");

}  // namespace patbreak
