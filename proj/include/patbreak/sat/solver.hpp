#pragma once

#include <cstdint>
#include <vector>

namespace patbreak::sat {

enum class Result { Sat, Unsat };

// Incremental CDCL solver: two watched literals, first-UIP clause learning,
// VSIDS branching with phase saving, Luby restarts. Clauses are add-only;
// assumptions hold for a single solve() call. Fully deterministic: repeated
// runs on the same input produce the same models.
class Solver {
 public:
  Solver() = default;

  // Variables are 1-based externally; literals are nonzero ints, negative
  // for negated.
  int new_var();
  void ensure_vars(int count);
  int var_count() const { return static_cast<int>(assign_.size()); }

  // Returns false if the solver is already in an unsatisfiable state.
  bool add_clause(std::vector<int> lits);
  bool okay() const { return ok_; }

  Result solve(const std::vector<int>& assumptions = {});

  // Value of a variable in the last model (valid after Sat).
  bool model_value(int var) const { return model_.at(var - 1); }

  struct Stats {
    std::uint64_t solves = 0;
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t propagations = 0;
  };
  const Stats& stats() const { return stats_; }

 private:
  using CRef = std::int32_t;
  static constexpr CRef kNoReason = -1;

  struct Watcher {
    CRef cref;
    int blocker;  // internal literal
  };

  // internal literal encoding: 2*var + sign, var 0-based
  static int ilit(int ext) {
    int v = ext > 0 ? ext : -ext;
    return 2 * (v - 1) + (ext < 0 ? 1 : 0);
  }
  static int neg(int l) { return l ^ 1; }
  static int ivar(int l) { return l >> 1; }

  int lit_value(int l) const {
    signed char a = assign_[ivar(l)];
    return a < 0 ? -1 : (a ^ (l & 1));
  }

  int clause_size(CRef c) const { return arena_[c] >> 1; }
  bool clause_learnt(CRef c) const { return arena_[c] & 1; }
  const std::int32_t* clause_lits(CRef c) const {
    return arena_.data() + c + 1 + (arena_[c] & 1);
  }
  std::int32_t* clause_lits(CRef c) {
    return arena_.data() + c + 1 + (arena_[c] & 1);
  }
  float& clause_act(CRef c) { return *reinterpret_cast<float*>(&arena_[c + 1]); }

  CRef alloc_clause(const std::vector<int>& ilits, bool learnt);
  void attach(CRef c);
  void detach(CRef c);
  void unchecked_enqueue(int l, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<int>& learnt, int& bt_level);
  bool lit_redundant(int l);
  void cancel_until(int level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }
  void var_bump(int v);
  void var_decay();
  void clause_bump(CRef c);
  void reduce_db();
  int pick_branch_var();
  void heap_insert(int v);
  int heap_pop();
  void heap_sift_up(int i);
  void heap_sift_down(int i);
  bool heap_less(int a, int b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }

  bool ok_ = true;
  std::vector<std::int32_t> arena_;
  std::vector<CRef> clauses_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;  // indexed by internal literal
  std::vector<signed char> assign_;            // -1 undef, 0 false, 1 true
  std::vector<std::int32_t> level_;
  std::vector<CRef> reason_;
  std::vector<double> activity_;
  std::vector<signed char> polarity_;  // saved phase, 0 = false first
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  int qhead_ = 0;

  // binary max-heap over unassigned variables
  std::vector<int> heap_;
  std::vector<int> heap_pos_;

  std::vector<signed char> seen_;
  std::vector<int> analyze_stack_;
  std::vector<int> analyze_clear_;

  std::vector<bool> model_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::size_t max_learnts_ = 20000;
  Stats stats_;
};

}  // namespace patbreak::sat
