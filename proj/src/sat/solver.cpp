#include "patbreak/sat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace patbreak::sat {

int Solver::new_var() {
  assign_.push_back(-1);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  activity_.push_back(0.0);
  polarity_.push_back(0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_pos_.push_back(-1);
  int v = var_count();
  heap_insert(v - 1);
  return v;
}

void Solver::ensure_vars(int count) {
  while (var_count() < count) new_var();
}

Solver::CRef Solver::alloc_clause(const std::vector<int>& ilits, bool learnt) {
  CRef c = static_cast<CRef>(arena_.size());
  arena_.push_back(static_cast<std::int32_t>(ilits.size() << 1) | (learnt ? 1 : 0));
  if (learnt) {
    arena_.push_back(0);
    clause_act(c) = 0.0f;
  }
  for (int l : ilits) arena_.push_back(l);
  return c;
}

void Solver::attach(CRef c) {
  const std::int32_t* lits = clause_lits(c);
  watches_[neg(lits[0])].push_back({c, lits[1]});
  watches_[neg(lits[1])].push_back({c, lits[0]});
}

void Solver::detach(CRef c) {
  const std::int32_t* lits = clause_lits(c);
  for (int k = 0; k < 2; ++k) {
    auto& ws = watches_[neg(lits[k])];
    for (size_t i = 0; i < ws.size(); ++i)
      if (ws[i].cref == c) {
        ws[i] = ws.back();
        ws.pop_back();
        break;
      }
  }
}

bool Solver::add_clause(std::vector<int> lits) {
  if (!ok_) return false;
  if (decision_level() != 0)
    throw std::logic_error("clauses may only be added at decision level 0");
  std::vector<int> ls;
  ls.reserve(lits.size());
  for (int ext : lits) {
    if (ext == 0) throw std::invalid_argument("zero literal");
    int v = ext > 0 ? ext : -ext;
    if (v > var_count()) throw std::invalid_argument("literal out of range");
    ls.push_back(ilit(ext));
  }
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  std::vector<int> keep;
  for (size_t i = 0; i < ls.size(); ++i) {
    if (i + 1 < ls.size() && ls[i + 1] == neg(ls[i])) return true;  // tautology
    int val = lit_value(ls[i]);
    if (val == 1) return true;  // already satisfied at level 0
    if (val == 0) continue;     // falsified at level 0, drop literal
    keep.push_back(ls[i]);
  }
  if (keep.empty()) {
    ok_ = false;
    return false;
  }
  if (keep.size() == 1) {
    unchecked_enqueue(keep[0], kNoReason);
    ok_ = propagate() == kNoReason;
    return ok_;
  }
  CRef c = alloc_clause(keep, false);
  clauses_.push_back(c);
  attach(c);
  return true;
}

void Solver::unchecked_enqueue(int l, CRef reason) {
  int v = ivar(l);
  assign_[v] = static_cast<signed char>(1 - (l & 1));
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

Solver::CRef Solver::propagate() {
  while (qhead_ < static_cast<int>(trail_.size())) {
    int p = trail_[qhead_++];  // p is true; visit clauses watching ~p
    ++stats_.propagations;
    auto& ws = watches_[p];
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (lit_value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      CRef c = w.cref;
      std::int32_t* lits = clause_lits(c);
      int false_lit = neg(p);
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      // lits[1] == false_lit now
      if (lit_value(lits[0]) == 1) {
        ws[j++] = {c, lits[0]};
        ++i;
        continue;
      }
      int size = clause_size(c);
      int k = 2;
      for (; k < size; ++k)
        if (lit_value(lits[k]) != 0) break;
      if (k < size) {
        std::swap(lits[1], lits[k]);
        watches_[neg(lits[1])].push_back({c, lits[0]});
        ++i;
        continue;
      }
      // unit or conflict
      ws[j++] = {c, lits[0]};
      ++i;
      if (lit_value(lits[0]) == 0) {
        // conflict: copy remaining watchers and bail out
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = static_cast<int>(trail_.size());
        return c;
      }
      unchecked_enqueue(lits[0], c);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::var_bump(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_sift_up(heap_pos_[v]);
}

void Solver::var_decay() { var_inc_ /= 0.95; }

void Solver::clause_bump(CRef c) {
  float& act = clause_act(c);
  act += static_cast<float>(cla_inc_);
  if (act > 1e20f) {
    for (CRef l : learnts_) clause_act(l) *= 1e-20f;
    cla_inc_ *= 1e-20;
  }
}

bool Solver::lit_redundant(int l) {
  // MiniSat-style recursive check that reason chains stay inside seen lits.
  analyze_stack_.clear();
  analyze_stack_.push_back(l);
  size_t top = analyze_clear_.size();
  while (!analyze_stack_.empty()) {
    int q = analyze_stack_.back();
    analyze_stack_.pop_back();
    CRef r = reason_[ivar(q)];
    if (r == kNoReason) {
      for (size_t i = top; i < analyze_clear_.size(); ++i)
        seen_[ivar(analyze_clear_[i])] = 0;
      analyze_clear_.resize(top);
      return false;
    }
    const std::int32_t* lits = clause_lits(r);
    int size = clause_size(r);
    for (int k = 0; k < size; ++k) {
      int x = lits[k];
      if (ivar(x) == ivar(q)) continue;
      if (seen_[ivar(x)] || level_[ivar(x)] == 0) continue;
      seen_[ivar(x)] = 1;
      analyze_clear_.push_back(x);
      analyze_stack_.push_back(x);
    }
  }
  return true;
}

void Solver::analyze(CRef conflict, std::vector<int>& learnt, int& bt_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  int path = 0;
  int p = -1;
  int index = static_cast<int>(trail_.size()) - 1;
  CRef reason = conflict;
  for (;;) {
    if (clause_learnt(reason)) clause_bump(reason);
    const std::int32_t* lits = clause_lits(reason);
    int size = clause_size(reason);
    for (int k = (p == -1 ? 0 : 1); k < size; ++k) {
      int q = lits[k];
      int v = ivar(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        var_bump(v);
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[ivar(trail_[index])]) --index;
    p = trail_[index];
    seen_[ivar(p)] = 0;
    --index;
    --path;
    if (path == 0) break;
    reason = reason_[ivar(p)];
    // move the propagated literal first so the skip above is correct
    if (reason != kNoReason) {
      std::int32_t* rl = clause_lits(reason);
      int size2 = clause_size(reason);
      for (int k = 0; k < size2; ++k)
        if (ivar(rl[k]) == ivar(p)) {
          std::swap(rl[0], rl[k]);
          break;
        }
    }
  }
  learnt[0] = neg(p);

  // conflict clause minimization
  analyze_clear_.assign(learnt.begin() + 1, learnt.end());
  size_t j = 1;
  for (size_t i = 1; i < learnt.size(); ++i) {
    int l = learnt[i];
    if (reason_[ivar(l)] == kNoReason || !lit_redundant(l)) learnt[j++] = l;
  }
  learnt.resize(j);
  for (int l : analyze_clear_) seen_[ivar(l)] = 0;
  analyze_clear_.clear();
  seen_[ivar(learnt[0])] = 0;

  if (learnt.size() == 1) {
    bt_level = 0;
  } else {
    // find the literal with the highest level after the asserting one
    size_t max_i = 1;
    for (size_t i = 2; i < learnt.size(); ++i)
      if (level_[ivar(learnt[i])] > level_[ivar(learnt[max_i])]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level_[ivar(learnt[1])];
  }
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  int bound = trail_lim_[level];
  for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
    int v = ivar(trail_[i]);
    polarity_[v] = static_cast<signed char>(assign_[v]);
    assign_[v] = -1;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(bound);
  trail_lim_.resize(level);
  qhead_ = bound;
}

void Solver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_sift_up(heap_pos_[v]);
}

void Solver::heap_sift_up(int i) {
  int v = heap_[i];
  while (i > 0) {
    int parent = (i - 1) >> 1;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = i;
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void Solver::heap_sift_down(int i) {
  int v = heap_[i];
  int n = static_cast<int>(heap_.size());
  for (;;) {
    int child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = i;
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

int Solver::heap_pop() {
  int v = heap_[0];
  heap_pos_[v] = -1;
  heap_[0] = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_[0]] = 0;
    heap_sift_down(0);
  }
  return v;
}

int Solver::pick_branch_var() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assign_[v] < 0) return v;
  }
  return -1;
}

void Solver::reduce_db() {
  // Drop the less active half; keep reason clauses and binaries.
  std::vector<CRef> sorted = learnts_;
  std::sort(sorted.begin(), sorted.end(), [this](CRef a, CRef b) {
    float fa = clause_act(a), fb = clause_act(b);
    return fa < fb || (fa == fb && a < b);
  });
  std::vector<CRef> keep;
  keep.reserve(learnts_.size());
  size_t limit = sorted.size() / 2;
  for (size_t i = 0; i < sorted.size(); ++i) {
    CRef c = sorted[i];
    const std::int32_t* lits = clause_lits(c);
    int v0 = ivar(lits[0]);
    bool locked = assign_[v0] >= 0 && reason_[v0] == c;
    if (i < limit && !locked && clause_size(c) > 2)
      detach(c);
    else
      keep.push_back(c);
  }
  std::sort(keep.begin(), keep.end());
  learnts_ = std::move(keep);
}

Result Solver::solve(const std::vector<int>& assumptions) {
  ++stats_.solves;
  if (!ok_) return Result::Unsat;
  cancel_until(0);
  std::vector<int> assume;
  assume.reserve(assumptions.size());
  for (int ext : assumptions) {
    if (ext == 0 || std::abs(ext) > var_count())
      throw std::invalid_argument("bad assumption literal");
    assume.push_back(ilit(ext));
  }

  std::vector<int> learnt;
  std::uint64_t conflicts_since_restart = 0;
  int luby_index = 1;
  auto luby = [](int i) {
    // Luby sequence via the standard bit trick.
    int k = 1;
    while ((1 << k) - 1 < i) ++k;
    while ((1 << k) - 1 != i) {
      i -= (1 << (k - 1)) - 1;
      k = 1;
      while ((1 << k) - 1 < i) ++k;
    }
    return std::uint64_t{1} << (k - 1);
  };
  std::uint64_t restart_limit = 100 * luby(luby_index);

  for (;;) {
    CRef conflict = propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      ++conflicts_since_restart;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::Unsat;
      }
      int bt_level = 0;
      analyze(conflict, learnt, bt_level);
      cancel_until(bt_level);
      if (learnt.size() == 1) {
        unchecked_enqueue(learnt[0], kNoReason);
      } else {
        CRef c = alloc_clause(learnt, true);
        learnts_.push_back(c);
        attach(c);
        clause_bump(c);
        unchecked_enqueue(learnt[0], c);
      }
      var_decay();
      cla_inc_ *= 1.001;
      continue;
    }

    if (learnts_.size() > max_learnts_) {
      reduce_db();
      max_learnts_ = max_learnts_ + max_learnts_ / 2;
    }

    if (conflicts_since_restart >= restart_limit && decision_level() > static_cast<int>(assume.size())) {
      conflicts_since_restart = 0;
      restart_limit = 100 * luby(++luby_index);
      cancel_until(0);
      continue;
    }

    if (decision_level() < static_cast<int>(assume.size())) {
      int a = assume[decision_level()];
      int val = lit_value(a);
      if (val == 0) {
        cancel_until(0);
        return Result::Unsat;  // conflicting assumptions
      }
      new_decision_level();
      if (val == -1) {
        ++stats_.decisions;
        unchecked_enqueue(a, kNoReason);
      }
      continue;
    }

    int v = pick_branch_var();
    if (v < 0) {
      model_.assign(var_count(), false);
      for (int u = 0; u < var_count(); ++u) model_[u] = assign_[u] == 1;
      cancel_until(0);
      return Result::Sat;
    }
    ++stats_.decisions;
    new_decision_level();
    unchecked_enqueue(2 * v + (polarity_[v] == 1 ? 0 : 1), kNoReason);
  }
}

}  // namespace patbreak::sat
