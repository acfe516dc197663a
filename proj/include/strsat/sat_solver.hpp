#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "strsat/cnf.hpp"

namespace strsat::sat {

using Var = int;

class Lit {
 public:
  constexpr Lit() = default;
  constexpr explicit Lit(Var v, bool negative = false) : code_(2 * v + (negative ? 1 : 0)) {}

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negative() const { return (code_ & 1) != 0; }
  constexpr int code() const { return code_; }
  constexpr bool valid() const { return code_ >= 0; }
  constexpr Lit operator~() const { return from_code(code_ ^ 1); }

  static constexpr Lit from_code(int code) {
    Lit l;
    l.code_ = code;
    return l;
  }
  static Lit from_dimacs(int lit) { return Lit(lit > 0 ? lit - 1 : -lit - 1, lit < 0); }
  int to_dimacs() const { return negative() ? -(var() + 1) : var() + 1; }

  friend constexpr bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
  friend constexpr auto operator<=>(Lit a, Lit b) { return a.code_ <=> b.code_; }

 private:
  int code_ = -1;
};

enum class AddStatus { Ok, ConflictAtLevelZero };

struct SatVerdict {
  bool sat = false;
  std::vector<bool> model;  // indexed by Var, valid when sat
  std::vector<Lit> core;    // subset of the assumptions, valid when !sat
};

struct SatStats {
  std::uint64_t solves = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learnts = 0;
};

/// CDCL solver: two-watched-literal propagation, first-UIP learning, VSIDS
/// branching with index tie-breaks, phase saving and Luby restarts. Solving
/// under assumptions yields a core over the assumption literals.
class Solver {
 public:
  Solver();

  Var new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  AddStatus add_clause(std::span<const Lit> lits);
  AddStatus add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  SatVerdict solve(std::span<const Lit> assumptions = {});
  SatVerdict solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  /// Level-zero simplification: drops satisfied clauses and false literals.
  bool simplify();

  /// False once the clause database is known unsatisfiable without assumptions.
  bool okay() const { return ok_; }

  /// Current irredundant database: level-zero units followed by problem clauses.
  std::vector<std::vector<Lit>> clauses() const;
  CnfInstance export_cnf() const;

  const SatStats& stats() const { return stats_; }

 private:
  enum : std::int8_t { kFalse = -1, kUndef = 0, kTrue = 1 };
  static constexpr int kNoReason = -1;

  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0;
  };
  struct Watcher {
    int cref;
    Lit blocker;
  };

  std::int8_t value(Lit l) const {
    std::int8_t v = assigns_[l.var()];
    return l.negative() ? static_cast<std::int8_t>(-v) : v;
  }
  int level(Var v) const { return level_[v]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int confl, std::vector<Lit>& learnt, int& backtrack_level);
  bool redundant(Lit l) const;
  void analyze_final(Lit p, std::vector<Lit>& core);
  void cancel_until(int level);
  Lit pick_branch();
  int attach(std::vector<Lit> lits, bool learnt);
  void rebuild_watches();
  void reduce_learnts();
  bool locked(int cref) const;
  bool search(std::int64_t conflict_budget, std::span<const Lit> assumptions, std::vector<Lit>& core,
              int& status);

  void bump_var(Var v);
  void bump_clause(Clause& c);
  void heap_insert(Var v);
  void heap_up(int pos);
  void heap_down(int pos);
  Var heap_pop();
  bool heap_less(Var a, Var b) const;

  void check_model() const;

  bool ok_ = true;
  std::vector<Clause> db_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::vector<Lit>> original_;

  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<bool> polarity_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<int> heap_pos_;

  mutable std::vector<char> seen_;
  std::vector<bool> model_;
  std::size_t num_learnts_ = 0;
  double max_learnts_ = 0;
  SatStats stats_;
};

}  // namespace strsat::sat
