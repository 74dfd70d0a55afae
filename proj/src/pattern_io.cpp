#include "patbreak/pattern_io.hpp"

#include <fstream>
#include <sstream>

namespace patbreak {

bool PatternSet::contains(const GraphPattern& p) const {
  auto [lo, hi] = index_.equal_range(p.hash());
  for (auto it = lo; it != hi; ++it)
    if (patterns_[it->second] == p) return true;
  return false;
}

bool PatternSet::add(GraphPattern p, PatternMeta m) {
  if (p.is_bot()) throw std::invalid_argument("BOT cannot join a pattern set");
  if (order_.n == 0) order_ = p.order();
  if (p.order() != order_) throw std::invalid_argument("order mismatch");
  if (contains(p)) return false;
  index_.emplace(p.hash(), patterns_.size());
  patterns_.push_back(std::move(p));
  meta_.push_back(std::move(m));
  return true;
}

PatternSet PatternSet::filtered(const std::vector<bool>& keep) const {
  PatternSet out(order_);
  for (std::size_t k = 0; k < patterns_.size(); ++k)
    if (keep[k]) out.add(patterns_[k], meta_[k]);
  return out;
}

std::string write_pattern_file(const PatternSet& set, const std::string& class_header) {
  std::ostringstream out;
  out << "# order: " << set.order().n << '\n';
  if (!class_header.empty()) out << "# class: " << class_header << '\n';
  for (std::size_t k = 0; k < set.size(); ++k) {
    const GraphPattern& p = set.pattern(k);
    const PatternMeta& m = set.meta(k);
    out << p.to_string();
    std::ostringstream note;
    if (p.provenance())
      note << " pat_" << p.provenance()->index << '('
           << p.provenance()->perm.to_string() << ')';
    if (m.cls) note << " class=" << class_name(*m.cls);
    if (m.layer) note << " layer=" << class_name(*m.layer);
    if (m.delta) note << " delta=" << *m.delta;
    std::string n = note.str();
    if (!n.empty()) out << "  #" << n;
    out << '\n';
  }
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

PatternSet parse_pattern_file(std::istream& in) {
  PatternSet set;
  std::optional<Order> order;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("pattern file line " + std::to_string(lineno) +
                                  ": " + why);
    };
    if (s[0] == '#') {
      std::string body = trim(s.substr(1));
      if (body.rfind("order:", 0) == 0) {
        int n = std::stoi(trim(body.substr(6)));
        order = Order(n);
        set = PatternSet(*order);
      }
      continue;  // "# class: ..." and other comments are informational
    }
    if (!order) fail("pattern before '# order: N' header");
    size_t hash_pos = s.find('#');
    std::string pat_text = trim(hash_pos == std::string::npos ? s : s.substr(0, hash_pos));
    GraphPattern p = GraphPattern::parse(pat_text, *order);
    PatternMeta meta;
    if (hash_pos != std::string::npos) {
      std::istringstream note(s.substr(hash_pos + 1));
      std::string tok;
      while (note >> tok) {
        if (tok.rfind("pat_", 0) == 0) {
          size_t paren = tok.find('(');
          if (paren == std::string::npos || tok.back() != ')')
            fail("malformed provenance token: " + tok);
          int idx = std::stoi(tok.substr(4, paren - 4));
          Permutation pi = Permutation::parse(
              tok.substr(paren + 1, tok.size() - paren - 2), *order);
          p.set_provenance(Provenance{std::move(pi), idx});
        } else if (tok.rfind("class=", 0) == 0) {
          meta.cls = parse_class(tok.substr(6));
        } else if (tok.rfind("layer=", 0) == 0) {
          meta.layer = parse_class(tok.substr(6));
        } else if (tok.rfind("delta=", 0) == 0) {
          meta.delta = std::stoull(tok.substr(6));
        }
      }
    }
    if (!set.add(std::move(p), std::move(meta))) fail("duplicate pattern");
  }
  return set;
}

PatternSet parse_pattern_file(const std::string& text) {
  std::istringstream in(text);
  return parse_pattern_file(in);
}

PatternSet load_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pattern file " + path);
  return parse_pattern_file(in);
}

void save_pattern_file(const PatternSet& set, const std::string& path,
                       const std::string& class_header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << write_pattern_file(set, class_header);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace patbreak
