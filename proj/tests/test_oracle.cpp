#include <gtest/gtest.h>

#include "strsat/oracle.hpp"
#include "strsat/strcore.hpp"
#include "test_support.hpp"

using namespace strsat;

namespace {

Term V(const char* n) { return Term::var(n); }
Term C(const char* s) { return Term::constant(s); }

}  // namespace

TEST(Oracle, NonEmptyCount) {
  SolverConfig cfg;
  cfg.alphabet = Alphabet("a");
  cfg.declare("s", 2);
  Formula f{{Literal{false, Atom::eq(V("s"), C(""))}}};
  auto r = enumerate_sat(f, cfg, true);
  EXPECT_EQ(r.verdict, OracleVerdict::Sat);
  EXPECT_EQ(r.model_count, 2u);
  EXPECT_EQ(r.models_checked, 3u);
  EXPECT_EQ(r.first_model, (Assignment{{"s", "a"}}));
}

TEST(Oracle, ExactlyOneOfTwo) {
  SolverConfig cfg;
  cfg.alphabet = Alphabet("a");
  cfg.declare("s", 1);
  cfg.declare("r", 1);
  Formula f{{Literal{true, Atom::eq(Term::concat(V("s"), V("r")), C("a"))}}};
  auto r = enumerate_sat(f, cfg, true);
  EXPECT_EQ(r.model_count, 2u);
  // r varies fastest: (s, r) = ("", "a") comes before ("a", "").
  EXPECT_EQ(r.first_model, (Assignment{{"s", ""}, {"r", "a"}}));
}

TEST(Oracle, BudgetExceeded) {
  SolverConfig cfg;
  cfg.l_max = 3;
  cfg.oracle_budget = 100000;
  Formula f;
  const char* names[] = {"v", "w", "x", "y", "z"};
  for (const char* n : names) {
    cfg.declare(n);
    f.literals.push_back(Literal{true, Atom::contains(V(n), C(""))});
  }
  EXPECT_EQ(assignment_space(f, cfg), 759375u);  // 15^5
  auto r = enumerate_sat(f, cfg);
  EXPECT_EQ(r.verdict, OracleVerdict::BudgetExceeded);
  EXPECT_EQ(r.models_checked, 0u);
  cfg.oracle_budget = 759375;
  EXPECT_EQ(enumerate_sat(f, cfg).verdict, OracleVerdict::Sat);
}

TEST(Oracle, UnsatCountsZero) {
  SolverConfig cfg;
  Formula f{{Literal{true, Atom::eq(V("s"), C("a"))}, Literal{false, Atom::eq(V("s"), C("a"))}}};
  auto r = enumerate_sat(f, cfg, true);
  EXPECT_EQ(r.verdict, OracleVerdict::Unsat);
  EXPECT_EQ(r.model_count, 0u);
  EXPECT_FALSE(r.first_model);
}

TEST(Oracle, GroundFormula) {
  SolverConfig cfg;
  Formula yes{{Literal{true, Atom::contains_at(C("bombay"), 4, C("bay"))}}};
  Formula no{{Literal{true, Atom::contains_at(C("bombay"), 3, C("bay"))}}};
  EXPECT_EQ(enumerate_sat(yes, cfg, true).model_count, 1u);
  EXPECT_EQ(enumerate_sat(no, cfg).verdict, OracleVerdict::Unsat);
}

TEST(Oracle, DeterministicAndOrderMinimal) {
  gen::Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    SolverConfig cfg = gen::random_config(rng);
    Formula f = gen::random_formula(rng, cfg);
    auto a = enumerate_sat(f, cfg, true);
    auto b = enumerate_sat(f, cfg, true);
    ASSERT_EQ(a.first_model, b.first_model);
    ASSERT_EQ(a.model_count, b.model_count);
    auto quick = enumerate_sat(f, cfg);
    ASSERT_EQ(quick.first_model, a.first_model);
    if (a.first_model) EXPECT_TRUE(eval_formula(f, *a.first_model, cfg));
    EXPECT_EQ(a.models_checked, assignment_space(f, cfg));
  }
}
