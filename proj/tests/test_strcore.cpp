#include <gtest/gtest.h>

#include "strsat/oracle.hpp"
#include "strsat/strcore.hpp"
#include "test_support.hpp"

using namespace strsat;

namespace {

Term V(const char* n) { return Term::var(n); }
Term C(const char* s) { return Term::constant(s); }

SolverConfig bombay_config() {
  SolverConfig cfg;
  cfg.alphabet = Alphabet("abmoy");
  cfg.declare("s");
  return cfg;
}

std::vector<std::string> strings_upto(const Alphabet& al, std::size_t n) {
  std::vector<std::string> out{""};
  std::string s;
  while (advance_length_lex(s, al, n)) out.push_back(s);
  return out;
}

}  // namespace

TEST(Evaluator, WorkedExamples) {
  SolverConfig cfg = bombay_config();
  EXPECT_EQ(eval_term(Term::extract(C("bombay"), 4, 6), {}, cfg), "bay");
  EXPECT_EQ(eval_term(Term::concat(C("bom"), C("bay")), {}, cfg), "bombay");
  EXPECT_EQ(eval_atom(Atom::contains_at(C("bombay"), 4, C("bay")), {}, cfg), true);
}

TEST(Evaluator, ExtractPastEndIsUndefined) {
  SolverConfig cfg;
  EXPECT_EQ(eval_term(Term::extract(C("ab"), 1, 3), {}, cfg), std::nullopt);
}

TEST(Evaluator, ConcatAboveMaxLengthIsUndefined) {
  SolverConfig cfg;
  cfg.l_max = 3;
  EXPECT_EQ(eval_term(Term::concat(C("ab"), C("ab")), {}, cfg), std::nullopt);
  EXPECT_EQ(eval_term(Term::concat(C("ab"), C("a")), {}, cfg), "aba");
}

TEST(Evaluator, UndefinedTermFalsifiesBothPolarities) {
  SolverConfig cfg;
  Atom a = Atom::eq(Term::extract(V("s"), 2, 2), C("a"));
  Assignment short_s{{"s", "a"}};
  EXPECT_FALSE(eval_formula(Formula{{Literal{true, a}}}, short_s, cfg));
  EXPECT_FALSE(eval_formula(Formula{{Literal{false, a}}}, short_s, cfg));
}

TEST(Evaluator, EmptyStringAxioms) {
  EXPECT_TRUE(contains("xyz", ""));
  EXPECT_FALSE(contains("", "a"));
  EXPECT_TRUE(contains_at("ab", 3, ""));
  EXPECT_FALSE(contains_at("ab", 4, ""));
}

TEST(Evaluator, EqualityIsReflexive) {
  SolverConfig cfg;
  gen::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Assignment a{{"s", gen::random_string(rng, cfg.alphabet, 5)}};
    EXPECT_TRUE(eval_formula(Formula{{Literal{true, Atom::eq(V("s"), V("s"))}}}, a, cfg));
  }
}

TEST(Evaluator, ContainmentLawsExhaustive) {
  Alphabet ab;
  auto all = strings_upto(ab, 3);
  ASSERT_EQ(all.size(), 15u);
  for (const auto& u : all) {
    for (const auto& v : all) {
      EXPECT_EQ(contains(u, v) && contains(v, u), u == v) << u << " " << v;
      bool some = false;
      for (std::size_t i = 1; i <= u.size() + 1; ++i) some = some || contains_at(u, i, v);
      EXPECT_EQ(contains(u, v), some);
      for (const auto& w : all)
        if (contains(u, v) && contains(v, w)) EXPECT_TRUE(contains(u, w));
    }
  }
}

TEST(Normalize, DoubleNegationAndFolding) {
  Atom eq = Atom::eq(V("s"), V("t"));
  Formula f = normalize(BoolExpr::negate(BoolExpr::negate(BoolExpr::of(eq))));
  ASSERT_EQ(f.literals.size(), 1u);
  EXPECT_TRUE(f.literals[0].positive);

  Atom c = Atom::contains(V("s"), V("t"));
  Formula g = normalize(BoolExpr::conj({BoolExpr::truth(), BoolExpr::of(c)}));
  ASSERT_EQ(g.literals.size(), 1u);
  EXPECT_EQ(g.literals[0].atom, c);

  EXPECT_TRUE(normalize(BoolExpr::conj({BoolExpr::of(c), BoolExpr::falsity()})).is_false);
  EXPECT_TRUE(normalize(BoolExpr::negate(BoolExpr::truth())).is_false);
}

TEST(Normalize, RejectsNegatedConjunction) {
  BoolExpr e = BoolExpr::negate(BoolExpr::conj({BoolExpr::of(Atom::eq(V("s"), V("t"))),
                                                 BoolExpr::of(Atom::eq(V("t"), V("u")))}));
  EXPECT_THROW(normalize(e), FormulaError);
}

TEST(Normalize, Idempotent) {
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    SolverConfig cfg = gen::random_config(rng);
    Formula f = gen::random_formula(rng, cfg);
    Formula once = normalize(to_bool_expr(f));
    EXPECT_EQ(normalize(to_bool_expr(once)), once);
  }
}

TEST(Fragment, Names) {
  Literal pos_eq{true, Atom::eq(V("s"), V("t"))};
  Literal neg_eq{false, Atom::eq(V("s"), C("a"))};
  EXPECT_EQ(classify_fragment(Formula{{pos_eq, neg_eq}}).name(), "E");
  Literal concat{true, Atom::eq(Term::concat(V("s"), V("t")), C("a"))};
  EXPECT_EQ(classify_fragment(Formula{{concat}}).name(), "E+A");
  Literal at{true, Atom::contains_at(V("s"), 1, V("t"))};
  EXPECT_EQ(classify_fragment(Formula{{pos_eq, at}}).name(), "E+T-CONST");
  EXPECT_EQ(classify_fragment(Formula{{at}}).name(), "T");
  Literal ex{true, Atom::eq(Term::extract(V("s"), 1, 1), V("t"))};
  EXPECT_EQ(classify_fragment(Formula{{ex}}).name(), "E+X-CONST");
  EXPECT_TRUE(classify_fragment(Formula{{neg_eq}}).negation);
}

TEST(EliminateEquality, TwoWayContainment) {
  Formula f{{Literal{true, Atom::eq(V("s"), V("t"))}}};
  Formula g = eliminate_equality(f);
  ASSERT_EQ(g.literals.size(), 2u);
  EXPECT_EQ(g.literals[0].atom, Atom::contains(V("s"), V("t")));
  EXPECT_EQ(g.literals[1].atom, Atom::contains(V("t"), V("s")));
  EXPECT_TRUE(eliminate_equality(Formula{}).literals.empty());
  EXPECT_THROW(eliminate_equality(Formula{{Literal{false, Atom::eq(V("s"), V("t"))}}}), FormulaError);
}

TEST(EliminateEquality, PreservesModelSets) {
  gen::Rng rng(5);
  gen::FormulaShape shape;
  shape.vars = {"x", "y"};
  shape.positive_percent = 100;
  for (int i = 0; i < 100; ++i) {
    SolverConfig cfg = gen::random_config(rng, shape.vars);
    Formula f = gen::random_formula(rng, cfg, shape);
    Formula g = eliminate_equality(f);
    auto vars = variables_of(f);
    std::vector<std::string> xs = strings_upto(cfg.alphabet, cfg.bound_of("x"));
    std::vector<std::string> ys = strings_upto(cfg.alphabet, cfg.bound_of("y"));
    for (const auto& x : xs)
      for (const auto& y : ys) {
        Assignment a{{"x", x}, {"y", y}};
        ASSERT_EQ(eval_formula(f, a, cfg), eval_formula(g, a, cfg));
      }
  }
}

TEST(ValidateModel, CertificateBound) {
  SolverConfig cfg = bombay_config();
  Formula f{{Literal{true, Atom::eq(V("s"), C("bombay"))}}};
  ModelCheck ok = validate_model(f, Assignment{{"s", "bombay"}}, cfg);
  EXPECT_TRUE(ok);
  EXPECT_EQ(ok.certificate_size, 6u);
  EXPECT_EQ(ok.certificate_bound, 8u);

  EXPECT_FALSE(validate_model(f, Assignment{}, cfg));
  SolverConfig tight = cfg;
  tight.set_bound("s", 3);
  ModelCheck too_long = validate_model(f, Assignment{{"s", "bombay"}}, tight);
  EXPECT_FALSE(too_long);
  EXPECT_NE(too_long.violation.find("bound"), std::string::npos);
}

TEST(ValidateModel, NamesViolatedLiteral) {
  SolverConfig cfg;
  Formula f{{Literal{true, Atom::eq(V("s"), C("a"))}, Literal{false, Atom::eq(V("s"), C("a"))}}};
  ModelCheck r = validate_model(f, Assignment{{"s", "a"}}, cfg);
  EXPECT_FALSE(r);
  EXPECT_NE(r.violation.find("(not (= s \"a\"))"), std::string::npos);
}

TEST(LengthLex, OrderAndDomainSize) {
  Alphabet ab;
  auto all = strings_upto(ab, 2);
  EXPECT_EQ(all, (std::vector<std::string>{"", "a", "b", "aa", "ab", "ba", "bb"}));
  EXPECT_EQ(domain_size(ab, 3), 15u);
  EXPECT_EQ(domain_size(Alphabet("a"), 2), 3u);
  EXPECT_EQ(domain_size(ab, 200), UINT64_MAX);
}

TEST(Alphabet, Validation) {
  EXPECT_THROW(Alphabet(""), std::invalid_argument);
  EXPECT_THROW(Alphabet("aa"), std::invalid_argument);
  EXPECT_EQ(Alphabet("abmoy").bits(), 3u);
  EXPECT_EQ(Alphabet("a").bits(), 0u);
}
