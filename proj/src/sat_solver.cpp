#include "strsat/sat_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strsat {

bool eval_cnf(const CnfInstance& cnf, const std::vector<bool>& values) {
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (int lit : clause) {
      bool v = values.at(static_cast<std::size_t>(std::abs(lit) - 1));
      if ((lit > 0) == v) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

bool is_3cnf(const CnfInstance& cnf) {
  for (const auto& clause : cnf.clauses) {
    if (clause.size() != 3) return false;
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > cnf.num_vars) return false;
  }
  return true;
}

namespace sat {

namespace {

// Luby restart sequence: 1 1 2 1 1 2 4 1 1 2 ...
double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    seq++;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  return std::pow(y, seq);
}

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr int kRestartBase = 100;

}  // namespace

Solver::Solver() = default;

Var Solver::new_var() {
  Var v = num_vars();
  assigns_.push_back(kUndef);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  polarity_.push_back(false);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

void Solver::enqueue(Lit l, int reason) {
  assigns_[l.var()] = l.negative() ? kFalse : kTrue;
  level_[l.var()] = decision_level();
  reason_[l.var()] = reason;
  trail_.push_back(l);
}

int Solver::attach(std::vector<Lit> lits, bool learnt) {
  int cref = static_cast<int>(db_.size());
  watches_[(~lits[0]).code()].push_back({cref, lits[1]});
  watches_[(~lits[1]).code()].push_back({cref, lits[0]});
  db_.push_back(Clause{std::move(lits), learnt, false, 0.0});
  if (learnt) ++num_learnts_;
  return cref;
}

AddStatus Solver::add_clause(std::span<const Lit> lits) {
  for (Lit l : lits)
    if (!l.valid() || l.var() >= num_vars()) throw std::out_of_range("literal over an unallocated variable");
  original_.emplace_back(lits.begin(), lits.end());
  if (!ok_) return AddStatus::ConflictAtLevelZero;

  std::vector<Lit> c(lits.begin(), lits.end());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && c[i + 1] == ~c[i]) return AddStatus::Ok;  // tautology
    std::int8_t v = value(c[i]);
    if (v == kTrue) return AddStatus::Ok;
    if (v == kUndef) kept.push_back(c[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return AddStatus::ConflictAtLevelZero;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) {
      ok_ = false;
      return AddStatus::ConflictAtLevelZero;
    }
    return AddStatus::Ok;
  }
  attach(std::move(kept), false);
  return AddStatus::Ok;
}

int Solver::propagate() {
  int confl = kNoReason;
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = ~p;
    auto& ws = watches_[p.code()];
    ++stats_.propagations;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (value(w.blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = db_[w.cref];
      if (c.deleted) {
        ++i;
        continue;
      }
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      ++i;
      Lit first = c.lits[0];
      Watcher nw{w.cref, first};
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = nw;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) != kFalse) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[(~c.lits[1]).code()].push_back(nw);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = nw;
      if (value(first) == kFalse) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

void Solver::bump_var(Var v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
}

void Solver::bump_clause(Clause& c) {
  if ((c.activity += clause_inc_) > 1e20) {
    for (auto& cl : db_)
      if (cl.learnt) cl.activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

bool Solver::redundant(Lit l) const {
  int r = reason_[l.var()];
  if (r == kNoReason) return false;
  const auto& lits = db_[r].lits;
  for (std::size_t k = 1; k < lits.size(); ++k) {
    Var v = lits[k].var();
    if (!seen_[v] && level(v) > 0) return false;
  }
  return true;
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& backtrack_level) {
  int path = 0;
  Lit p;
  learnt.clear();
  learnt.emplace_back();
  std::size_t index = trail_.size();

  do {
    Clause& c = db_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = p.valid() ? 1 : 0; k < c.lits.size(); ++k) {
      Lit q = c.lits[k];
      Var v = q.var();
      if (!seen_[v] && level(v) > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level(v) >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[trail_[--index].var()]) {
    }
    p = trail_[index];
    confl = reason_[p.var()];
    seen_[p.var()] = 0;
    --path;
  } while (path > 0);
  learnt[0] = ~p;

  // Local minimization: drop literals implied by the rest of the clause.
  std::vector<Lit> all = learnt;
  std::size_t keep = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k)
    if (!redundant(learnt[k])) learnt[keep++] = learnt[k];
  learnt.resize(keep);

  if (learnt.size() == 1) {
    backtrack_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level(learnt[k].var()) > level(learnt[max_i].var())) max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level(learnt[1].var());
  }
  for (Lit l : all) seen_[l.var()] = 0;
}

void Solver::analyze_final(Lit p, std::vector<Lit>& core) {
  core.clear();
  core.push_back(p);
  if (decision_level() == 0 || level(p.var()) == 0) return;
  seen_[p.var()] = 1;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
    Var x = trail_[i].var();
    if (!seen_[x]) continue;
    if (reason_[x] == kNoReason) {
      core.push_back(trail_[i]);
    } else {
      const auto& lits = db_[reason_[x]].lits;
      for (std::size_t k = 1; k < lits.size(); ++k)
        if (level(lits[k].var()) > 0) seen_[lits[k].var()] = 1;
    }
    seen_[x] = 0;
  }
  seen_[p.var()] = 0;
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
}

void Solver::cancel_until(int lvl) {
  if (decision_level() <= lvl) return;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[lvl]);) {
    Var v = trail_[i].var();
    polarity_[v] = assigns_[v] == kTrue;
    assigns_[v] = kUndef;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    Var v = heap_pop();
    if (assigns_[v] == kUndef) return Lit(v, !polarity_[v]);
  }
  return Lit();
}

bool Solver::locked(int cref) const {
  const Clause& c = db_[cref];
  Lit first = c.lits[0];
  return value(first) == kTrue && reason_[first.var()] == cref;
}

void Solver::reduce_learnts() {
  std::vector<int> cands;
  for (int i = 0; i < static_cast<int>(db_.size()); ++i) {
    const Clause& c = db_[i];
    if (c.learnt && !c.deleted && c.lits.size() > 2 && !locked(i)) cands.push_back(i);
  }
  std::sort(cands.begin(), cands.end(), [&](int a, int b) {
    if (db_[a].activity != db_[b].activity) return db_[a].activity < db_[b].activity;
    return a < b;
  });
  for (std::size_t k = 0; k < cands.size() / 2; ++k) {
    Clause& c = db_[cands[k]];
    c.deleted = true;
    c.lits.clear();
    c.lits.shrink_to_fit();
    --num_learnts_;
  }
}

bool Solver::search(std::int64_t conflict_budget, std::span<const Lit> assumptions, std::vector<Lit>& core,
                    int& status) {
  std::int64_t conflicts = 0;
  std::vector<Lit> learnt;
  for (;;) {
    int confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      ++conflicts;
      if (decision_level() == 0) {
        ok_ = false;
        core.clear();
        status = -1;
        return true;
      }
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        int cref = attach(learnt, true);
        bump_clause(db_[cref]);
        enqueue(learnt[0], cref);
        ++stats_.learnts;
      }
      var_inc_ /= kVarDecay;
      clause_inc_ /= kClauseDecay;
      continue;
    }

    if (conflicts >= conflict_budget) {
      cancel_until(0);
      ++stats_.restarts;
      status = 0;
      return false;
    }
    if (static_cast<double>(num_learnts_) >= max_learnts_) reduce_learnts();

    Lit next;
    while (decision_level() < static_cast<int>(assumptions.size())) {
      Lit a = assumptions[decision_level()];
      if (value(a) == kTrue) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (value(a) == kFalse) {
        analyze_final(a, core);
        status = -1;
        return true;
      } else {
        next = a;
        break;
      }
    }
    if (!next.valid()) {
      ++stats_.decisions;
      next = pick_branch();
      if (!next.valid()) {
        status = 1;
        return true;
      }
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

SatVerdict Solver::solve(std::span<const Lit> assumptions) {
  ++stats_.solves;
  SatVerdict verdict;
  for (Lit l : assumptions)
    if (!l.valid() || l.var() >= num_vars()) throw std::out_of_range("assumption over an unallocated variable");
  if (!ok_) return verdict;

  std::size_t problem = 0;
  for (const auto& c : db_)
    if (!c.learnt && !c.deleted) ++problem;
  max_learnts_ = std::max(1000.0, static_cast<double>(problem) / 3.0);

  int status = 0;
  for (int iter = 0; status == 0; ++iter) {
    auto budget = static_cast<std::int64_t>(luby(2.0, iter) * kRestartBase);
    search(budget, assumptions, verdict.core, status);
    max_learnts_ *= 1.1;
  }
  if (status == 1) {
    model_.assign(assigns_.size(), false);
    for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == kTrue;
    verdict.sat = true;
    verdict.model = model_;
    verdict.core.clear();
    check_model();
  }
  cancel_until(0);
  return verdict;
}

void Solver::check_model() const {
  for (const auto& clause : original_) {
    bool sat = false;
    for (Lit l : clause) {
      if (model_[l.var()] != l.negative()) {
        sat = true;
        break;
      }
    }
    if (!sat) throw std::logic_error("SAT model violates an input clause");
  }
}

void Solver::rebuild_watches() {
  for (auto& ws : watches_) ws.clear();
  for (int i = 0; i < static_cast<int>(db_.size()); ++i) {
    const Clause& c = db_[i];
    if (c.deleted) continue;
    watches_[(~c.lits[0]).code()].push_back({i, c.lits[1]});
    watches_[(~c.lits[1]).code()].push_back({i, c.lits[0]});
  }
}

bool Solver::simplify() {
  if (!ok_) return false;
  if (propagate() != kNoReason) {
    ok_ = false;
    return false;
  }
  for (auto& c : db_) {
    if (c.deleted) continue;
    bool satisfied = false;
    std::size_t keep = 0;
    for (Lit l : c.lits) {
      std::int8_t v = value(l);
      if (v == kTrue) {
        satisfied = true;
        break;
      }
      if (v == kUndef) c.lits[keep++] = l;
    }
    if (satisfied) {
      c.deleted = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
      if (c.learnt) --num_learnts_;
      continue;
    }
    c.lits.resize(keep);
  }
  rebuild_watches();
  return true;
}

std::vector<std::vector<Lit>> Solver::clauses() const {
  std::vector<std::vector<Lit>> out;
  std::size_t units = trail_lim_.empty() ? trail_.size() : static_cast<std::size_t>(trail_lim_[0]);
  for (std::size_t i = 0; i < units; ++i) out.push_back({trail_[i]});
  for (const auto& c : db_)
    if (!c.deleted && !c.learnt) out.push_back(c.lits);
  if (!ok_) out.emplace_back();
  return out;
}

CnfInstance Solver::export_cnf() const {
  CnfInstance cnf;
  cnf.num_vars = num_vars();
  for (const auto& c : clauses()) {
    std::vector<int> lits;
    for (Lit l : c) lits.push_back(l.to_dimacs());
    cnf.clauses.push_back(std::move(lits));
  }
  return cnf;
}

bool Solver::heap_less(Var a, Var b) const {
  if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
  return a < b;
}

void Solver::heap_insert(Var v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

void Solver::heap_up(int pos) {
  Var v = heap_[pos];
  while (pos > 0) {
    int parent = (pos - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_pos_[heap_[pos]] = pos;
    pos = parent;
  }
  heap_[pos] = v;
  heap_pos_[v] = pos;
}

void Solver::heap_down(int pos) {
  Var v = heap_[pos];
  int n = static_cast<int>(heap_.size());
  for (;;) {
    int child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[pos] = heap_[child];
    heap_pos_[heap_[pos]] = pos;
    pos = child;
  }
  heap_[pos] = v;
  heap_pos_[v] = pos;
}

Var Solver::heap_pop() {
  Var top = heap_[0];
  heap_pos_[top] = -1;
  Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace sat
}  // namespace strsat
